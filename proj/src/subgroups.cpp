#include "gausslab/subgroups.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "gausslab/errors.hpp"

namespace gausslab {

SubgroupSpec nth_power_subgroup(const FieldCtx& ctx, std::uint64_t n) {
  const std::uint32_t order = ctx.group_order();
  if (n == 0 || order % n != 0) throw NotADivisor(n, order);
  SubgroupSpec h;
  h.n = n;
  h.order = static_cast<std::uint32_t>(order / n);
  h.generator = ctx.exp(n);
  h.elements.reserve(h.order);
  h.member.assign(ctx.q(), false);
  for (std::uint32_t i = 0; i < h.order; ++i) {
    const Label x = ctx.exp(n * i);
    h.elements.push_back(x);
    h.member[x] = true;
  }
  std::sort(h.elements.begin(), h.elements.end());
  return h;
}

SubgroupSpec generated_subgroup(const FieldCtx& ctx, Label g) {
  return nth_power_subgroup(ctx, ctx.group_order() / ctx.multiplicative_order(g));
}

namespace {

void require_proper_degree(const FieldCtx& ctx, unsigned nu) {
  if (nu == 0 || ctx.m() % nu != 0) throw NotADivisor(nu, ctx.m());
  if (nu == ctx.m()) throw BadRange("nu must be a proper subfield degree (nu < m)");
}

std::uint64_t subfield_gcd(const FieldCtx& ctx, std::uint64_t n, unsigned nu) {
  const std::uint64_t pnu = checked_pow(ctx.p(), nu, ctx.q());
  return std::gcd(n, static_cast<std::uint64_t>(ctx.group_order()) / (pnu - 1));
}

}  // namespace

IntersectionSize subfield_intersection_size(const FieldCtx& ctx, std::uint64_t n, unsigned nu) {
  if (n == 0 || ctx.group_order() % n != 0) throw NotADivisor(n, ctx.group_order());
  require_proper_degree(ctx, nu);
  const std::uint64_t pnu = checked_pow(ctx.p(), nu, ctx.q());
  IntersectionSize out;
  out.formula = subfield_gcd(ctx, n, nu) * (pnu - 1) / n;
  for (Label x : subfield_elements(ctx, nu)) {
    if (x != 0 && ctx.log(x) % n == 0) ++out.enumerated;
  }
  return out;
}

std::uint64_t coset_intersection_size(const FieldCtx& ctx, const ElementSet& a, Label c,
                                      unsigned nu) {
  const ElementSet g = subfield_elements(ctx, nu);
  const auto in_a = [&](Label x) { return std::binary_search(a.begin(), a.end(), x); };
  if (c == 0) return in_a(0) ? 1 : 0;
  std::uint64_t count = 0;
  for (Label x : g) {
    if (in_a(ctx.mul(c, x))) ++count;
  }
  return count;
}

std::uint64_t max_coset_intersection(const FieldCtx& ctx, const ElementSet& a, unsigned nu) {
  if (nu == 0 || ctx.m() % nu != 0) throw NotADivisor(nu, ctx.m());
  const std::uint64_t pnu = checked_pow(ctx.p(), nu, ctx.q());
  // G^* = <g^k>, so the cosets of G^* are indexed by log mod k; every cG also
  // contains 0.
  const std::uint64_t k = ctx.group_order() / (pnu - 1);
  std::vector<std::uint64_t> per_coset(k, 0);
  bool has_zero = false;
  for (Label x : a) {
    if (x == 0) {
      has_zero = true;
      continue;
    }
    ++per_coset[ctx.log(x) % k];
  }
  const std::uint64_t best = per_coset.empty() ? 0 : *std::max_element(per_coset.begin(), per_coset.end());
  return best + (has_zero ? 1 : 0);
}

namespace {

constexpr std::array<std::pair<ConditionId, std::string_view>, 8> kConditionNames{{
    {ConditionId::bc_eq5, "bc_eq5"},
    {ConditionId::zhel_eq11, "zhel_eq11"},
    {ConditionId::gcd_eq16, "gcd_eq16"},
    {ConditionId::gcd_eq19, "gcd_eq19"},
    {ConditionId::inc_eq20, "inc_eq20"},
    {ConditionId::antifield_eq13, "antifield_eq13"},
    {ConditionId::antifield_eq15, "antifield_eq15"},
    {ConditionId::antifield_eq24, "antifield_eq24"},
}};

}  // namespace

std::string_view to_string(ConditionId id) {
  for (const auto& [cid, name] : kConditionNames) {
    if (cid == id) return name;
  }
  return "unknown";
}

ConditionId parse_condition(std::string_view id) {
  for (const auto& [cid, name] : kConditionNames) {
    if (name == id) return cid;
  }
  throw UnknownCondition(std::string(id));
}

std::vector<ConditionReport> check_condition(const FieldCtx& ctx, ConditionId id,
                                             const ConditionParams& params) {
  const bool gcd_form = id == ConditionId::bc_eq5 || id == ConditionId::zhel_eq11 ||
                        id == ConditionId::gcd_eq16 || id == ConditionId::gcd_eq19;
  const bool set_form = id == ConditionId::antifield_eq13 || id == ConditionId::antifield_eq15 ||
                        id == ConditionId::antifield_eq24;
  if (gcd_form && (params.n == 0 || ctx.group_order() % params.n != 0)) {
    throw NotADivisor(params.n, ctx.group_order());
  }
  if (set_form && params.set == nullptr) throw BadRange("antifield conditions need a set");

  const double q = ctx.q();
  const double n = static_cast<double>(params.n);
  std::vector<ConditionReport> out;
  for (unsigned nu : proper_subfield_degrees(ctx.m())) {
    const std::uint64_t pnu_int = checked_pow(ctx.p(), nu, ctx.q());
    const double pnu = static_cast<double>(pnu_int);
    ConditionReport r;
    r.id = id;
    r.nu = nu;
    switch (id) {
      case ConditionId::bc_eq5:
        r.lhs = subfield_gcd(ctx, params.n, nu);
        r.rhs_shape = std::pow(q, 1.0 - params.epsilon) / pnu;
        break;
      case ConditionId::zhel_eq11:
        r.lhs = subfield_gcd(ctx, params.n, nu);
        r.rhs_shape = std::pow(n, params.delta1) * std::pow(q, 1.0 - params.delta1) / pnu;
        break;
      case ConditionId::gcd_eq16:
        r.lhs = subfield_gcd(ctx, params.n, nu);
        r.rhs_shape = params.lambda * std::pow(n, params.delta) * std::pow(q, 1.0 - params.delta) / pnu;
        break;
      case ConditionId::gcd_eq19:
        r.lhs = subfield_gcd(ctx, params.n, nu);
        r.rhs_shape = n / std::sqrt(pnu);
        break;
      case ConditionId::inc_eq20:
        r.lhs = std::gcd(params.t, pnu_int - 1);
        r.rhs_shape = std::sqrt(pnu);
        break;
      case ConditionId::antifield_eq13:
        r.lhs = max_coset_intersection(ctx, *params.set, nu);
        r.rhs_shape = params.lambda * std::pow(static_cast<double>(params.set->size()), 1.0 - params.delta);
        break;
      case ConditionId::antifield_eq15:
      case ConditionId::antifield_eq24:
        r.lhs = max_coset_intersection(ctx, *params.set, nu);
        r.rhs_shape = std::sqrt(pnu);
        break;
    }
    r.ratio = r.rhs_shape > 0.0 ? static_cast<double>(r.lhs) / r.rhs_shape : 0.0;
    r.holds_with_constant_1 = r.ratio <= 1.0;
    out.push_back(r);
  }
  return out;
}

double max_ratio(const std::vector<ConditionReport>& reports) {
  double best = 0.0;
  for (const auto& r : reports) best = std::max(best, r.ratio);
  return best;
}

}  // namespace gausslab
