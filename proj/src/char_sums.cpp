#include "gausslab/char_sums.hpp"

#include <algorithm>
#include <numeric>

#include "gausslab/errors.hpp"
#include "gausslab/parallel.hpp"

namespace gausslab {
namespace {

/// Neumaier-compensated accumulator for complex terms.
class CompensatedComplex {
 public:
  void add(std::complex<double> t) {
    add_part(sum_re_, comp_re_, t.real());
    add_part(sum_im_, comp_im_, t.imag());
  }
  std::complex<double> value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double sum_re_ = 0.0, comp_re_ = 0.0, sum_im_ = 0.0, comp_im_ = 0.0;
};

void require_weights(const ElementSet& s, const Weights& w, const char* name) {
  if (s.size() != w.size()) {
    throw BadRange(std::string("weight vector ") + name + " does not match its set size");
  }
}

std::uint32_t order_of(const FieldCtx& ctx, Label g) {
  if (g == 0 || !ctx.valid(g)) throw BadRange("generator must be a nonzero element");
  return ctx.multiplicative_order(g);
}

// Adds psi_a(g^j) for j = first..last into s.
void add_generator_run(const FieldCtx& ctx, CycloSum& s, Label g, std::uint64_t first,
                       std::uint64_t last, Label a) {
  if (a == 0) {
    s.add(0, static_cast<std::int64_t>(last - first + 1));
    return;
  }
  const std::uint64_t order = ctx.group_order();
  const std::uint64_t lg = ctx.log(g);
  std::uint64_t idx = (ctx.log(a) + lg * (first % order)) % order;
  for (std::uint64_t j = first; j <= last; ++j) {
    s.add(ctx.trace(ctx.exp(idx)));
    idx += lg;
    if (idx >= order) idx -= order;
  }
}

}  // namespace

CycloSum gauss_sum(const FieldCtx& ctx, std::uint64_t n, Label a) {
  if (n == 0) throw BadRange("n must be positive");
  const std::uint32_t order = ctx.group_order();
  CycloSum s(ctx.p());
  s.add(0);  // x = 0
  if (a == 0) {
    s.add(0, order);
    return s;
  }
  const std::uint32_t d = static_cast<std::uint32_t>(std::gcd<std::uint64_t>(n, order));
  std::uint32_t idx = ctx.log(a);
  for (std::uint32_t i = 0; i < order; ++i) {
    s.add(ctx.trace(ctx.exp(idx)));
    idx += d;
    if (idx >= order) idx -= order;
  }
  return s;
}

CycloSum gauss_sum_direct(const FieldCtx& ctx, std::uint64_t n, Label a) {
  if (n == 0) throw BadRange("n must be positive");
  CycloSum s(ctx.p());
  for (Label x = 0; x < ctx.q(); ++x) {
    Label power = 1, base = x;
    for (std::uint64_t e = n; e > 0; e >>= 1) {
      if (e & 1) power = ctx.mul(power, base);
      base = ctx.mul(base, base);
    }
    s.add(psi_exponent(ctx, a, power));
  }
  return s;
}

CycloSum subgroup_sum(const FieldCtx& ctx, const SubgroupSpec& h, Label a) {
  CycloSum s(ctx.p());
  for (Label x : h.elements) s.add(psi_exponent(ctx, a, x));
  return s;
}

CycloSum incomplete_sum(const FieldCtx& ctx, Label g, std::uint64_t k, Label a) {
  const std::uint32_t order = order_of(ctx, g);
  if (k < 1 || k > order) throw BadRange("K must lie in [1, ord(g)]");
  CycloSum s(ctx.p());
  add_generator_run(ctx, s, g, 1, k, a);
  return s;
}

WeightedSum bilinear_sum(const FieldCtx& ctx, const ElementSet& x, const ElementSet& y,
                         const Weights& alpha, const Weights& beta) {
  require_weights(x, alpha, "alpha");
  require_weights(y, beta, "beta");
  const auto roots = unit_roots(ctx.p());
  CompensatedComplex total;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      total.add(alpha[i] * beta[j] * roots[psi_exponent(ctx, x[i], y[j])]);
    }
  }
  return {total.value()};
}

TrilinearSum trilinear_sum(const FieldCtx& ctx, const ElementSet& x, const ElementSet& y,
                           const ElementSet& z, const Weights& alpha, const Weights& beta,
                           const Weights& gamma) {
  require_weights(x, alpha, "alpha");
  require_weights(y, beta, "beta");
  require_weights(z, gamma, "gamma");
  const auto roots = unit_roots(ctx.p());
  CompensatedComplex total;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      const Label xy = ctx.mul(x[i], y[j]);
      const std::complex<double> w = alpha[i] * beta[j];
      for (std::size_t k = 0; k < z.size(); ++k) {
        total.add(w * gamma[k] * roots[psi_exponent(ctx, xy, z[k])]);
      }
    }
  }
  TrilinearSum out;
  out.sum.value = total.value();
  const double terms = static_cast<double>(x.size()) * static_cast<double>(y.size()) *
                       static_cast<double>(z.size());
  out.delta = terms > 0 ? out.sum.magnitude() / terms : 0.0;
  return out;
}

CycloSum bilinear_sum_exact(const FieldCtx& ctx, const ElementSet& x, const ElementSet& y) {
  CycloSum s(ctx.p());
  for (Label a : x) {
    for (Label b : y) s.add(psi_exponent(ctx, a, b));
  }
  return s;
}

namespace {

CycloSum family_sum(const FieldCtx& ctx, const CharacterFamily& family, Label a) {
  return std::visit(
      [&](const auto& f) -> CycloSum {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, GaussFamily>) {
          return gauss_sum(ctx, f.n, a);
        } else if constexpr (std::is_same_v<F, SubgroupFamily>) {
          return subgroup_sum(ctx, *f.h, a);
        } else {
          return incomplete_sum(ctx, f.g, f.k, a);
        }
      },
      family);
}

// Number of cosets on which the family is constant (indexed by log a mod
// cosets), and the terms per evaluation.
std::pair<std::uint64_t, std::uint64_t> family_shape(const FieldCtx& ctx, const CharacterFamily& family) {
  const std::uint64_t order = ctx.group_order();
  return std::visit(
      [&](const auto& f) -> std::pair<std::uint64_t, std::uint64_t> {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, GaussFamily>) {
          if (f.n == 0) throw BadRange("n must be positive");
          return {std::gcd(f.n, order), ctx.q()};
        } else if constexpr (std::is_same_v<F, SubgroupFamily>) {
          if (f.h == nullptr) throw BadRange("subgroup family without a subgroup");
          return {f.h->n, f.h->order};
        } else {
          const std::uint32_t ord = order_of(ctx, f.g);
          if (f.k < 1 || f.k > ord) throw BadRange("K must lie in [1, ord(g)]");
          return {order, f.k};
        }
      },
      family);
}

}  // namespace

CharacterMax max_over_characters(const FieldCtx& ctx, const CharacterFamily& family,
                                 const Budget& budget, unsigned jobs) {
  if (ctx.q() < 2) throw BadRange("field too small");
  const auto [cosets, terms] = family_shape(ctx, family);
  const unsigned __int128 needed = static_cast<unsigned __int128>(cosets) * terms;
  if (needed > budget.max_terms) {
    throw BudgetExceeded(static_cast<std::uint64_t>(std::min<unsigned __int128>(needed, UINT64_MAX)),
                         budget.max_terms);
  }
  std::vector<double> mags(cosets);
  parallel_for(cosets, jobs, [&](std::size_t i) {
    mags[i] = family_sum(ctx, family, ctx.exp(i)).magnitude();
  });
  const double best = *std::max_element(mags.begin(), mags.end());
  const double threshold = best - 1e-12 * std::max(1.0, best);
  CharacterMax out;
  out.magnitude = best;
  for (Label a = 1; a < ctx.q(); ++a) {
    if (mags[ctx.log(a) % cosets] >= threshold) {
      out.a = a;
      break;
    }
  }
  return out;
}

std::vector<double> character_magnitudes(const FieldCtx& ctx, const CharacterFamily& family,
                                         unsigned jobs) {
  std::vector<double> mags(ctx.group_order());
  parallel_for(mags.size(), jobs, [&](std::size_t i) {
    mags[i] = family_sum(ctx, family, static_cast<Label>(i + 1)).magnitude();
  });
  return mags;
}

double running_incomplete_max(const FieldCtx& ctx, Label g, std::uint64_t j_max, unsigned jobs) {
  const std::uint32_t ord = order_of(ctx, g);
  if (j_max < 1 || j_max > ord) throw BadRange("J must lie in [1, ord(g)]");
  std::vector<double> per_a(ctx.group_order(), 0.0);
  parallel_for(per_a.size(), jobs, [&](std::size_t i) {
    const Label a = static_cast<Label>(i + 1);
    CycloSum s(ctx.p());
    double best = 0.0;
    for (std::uint64_t j = 1; j <= j_max; ++j) {
      add_generator_run(ctx, s, g, j, j, a);
      best = std::max(best, s.magnitude());
    }
    per_a[i] = best;
  });
  return *std::max_element(per_a.begin(), per_a.end());
}

ShiftTrick shift_trick(const FieldCtx& ctx, Label g, std::uint64_t k, std::uint64_t j, Label a,
                       unsigned jobs) {
  const std::uint32_t ord = order_of(ctx, g);
  if (j < 1 || j > k || k > ord) throw BadRange("need 1 <= J <= K <= ord(g)");
  if (a == 0) throw BadRange("a must be nonzero");
  CycloSum scaled(ctx.p());
  add_generator_run(ctx, scaled, g, 1, k, a);
  scaled *= static_cast<std::int64_t>(j);
  CycloSum shifted(ctx.p());
  for (std::uint64_t s = 1; s <= j; ++s) add_generator_run(ctx, shifted, g, s + 1, s + k, a);
  ShiftTrick out;
  out.deviation = (scaled - shifted).magnitude() / static_cast<double>(j);
  out.bound = 2.0 * running_incomplete_max(ctx, g, j, jobs);
  return out;
}

}  // namespace gausslab
