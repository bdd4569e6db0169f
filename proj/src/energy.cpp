#include "gausslab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gausslab/errors.hpp"
#include "gausslab/parallel.hpp"

namespace gausslab {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

ElementSet difference_set(const FieldCtx& ctx, const ElementSet& a) {
  std::vector<bool> seen(ctx.q(), false);
  for (Label x : a) {
    for (Label y : a) seen[ctx.sub(x, y)] = true;
  }
  ElementSet out;
  for (Label d = 0; d < ctx.q(); ++d) {
    if (seen[d]) out.push_back(d);
  }
  return out;
}

ElementSet ratio_set(const FieldCtx& ctx, const ElementSet& a) {
  std::vector<bool> seen(ctx.q(), false);
  for (Label x : a) {
    for (Label y : a) {
      if (y != 0) seen[ctx.div(x, y)] = true;
    }
  }
  ElementSet out;
  for (Label d = 0; d < ctx.q(); ++d) {
    if (seen[d]) out.push_back(d);
  }
  return out;
}

namespace {

template <class Combine>
EnergyRecord energy_from(const FieldCtx& ctx, const ElementSet& a, const ElementSet& b,
                         EnergyKind kind, Combine combine) {
  std::vector<std::uint64_t> r(ctx.q(), 0);
  for (Label x : a) {
    for (Label y : b) ++r[combine(x, y)];
  }
  EnergyRecord rec;
  rec.kind = kind;
  rec.size_a = a.size();
  rec.size_b = b.size();
  for (Label d = 0; d < ctx.q(); ++d) {
    if (r[d] == 0) continue;
    rec.histogram.emplace_back(d, r[d]);
    rec.value += static_cast<u128>(r[d]) * r[d];
  }
  return rec;
}

}  // namespace

EnergyRecord additive_energy(const FieldCtx& ctx, const ElementSet& a, const ElementSet& b) {
  return energy_from(ctx, a, b, EnergyKind::additive,
                     [&](Label x, Label y) { return ctx.add(x, y); });
}

EnergyRecord multiplicative_energy(const FieldCtx& ctx, const ElementSet& a, const ElementSet& b) {
  return energy_from(ctx, a, b, EnergyKind::multiplicative,
                     [&](Label x, Label y) { return ctx.mul(x, y); });
}

double energy_via_fourth_moment(const FieldCtx& ctx, const ElementSet& x, const Budget& budget,
                                unsigned jobs) {
  const u128 needed = static_cast<u128>(ctx.q()) * x.size();
  if (needed > budget.max_terms) {
    throw BudgetExceeded(static_cast<std::uint64_t>(needed), budget.max_terms);
  }
  std::vector<long double> fourth(ctx.q(), 0.0L);
  parallel_for(ctx.q(), jobs, [&](std::size_t i) {
    CycloSum s(ctx.p());
    for (Label v : x) s.add(psi_exponent(ctx, static_cast<Label>(i), v));
    const long double sq = std::norm(s.value());
    fourth[i] = sq * sq;
  });
  long double total = 0.0L;
  for (long double f : fourth) total += f;
  return static_cast<double>(total / ctx.q());
}

DyadicSelection dyadic_select(std::span<const double> f, double k, double m) {
  // level j holds 2^j < f <= 2^{j+1}
  std::map<int, double> level_mass;
  double heavy_mass = 0.0;
  for (double v : f) {
    if (v < 0.0 || v > m) throw BadRange("f values must lie in [0, M]");
    if (v <= 1.0) continue;
    int e = 0;
    const double mant = std::frexp(v, &e);  // v = mant 2^e, mant in [0.5, 1)
    const int j = mant == 0.5 ? e - 2 : e - 1;
    level_mass[j] += v;
    heavy_mass += v;
  }
  if (heavy_mass < k || level_mass.empty()) {
    throw MassTooSmall("mass of elements with f > 1 is below K");
  }
  int best_level = level_mass.begin()->first;
  double best_mass = level_mass.begin()->second;
  for (const auto& [j, mass] : level_mass) {
    if (mass > best_mass) {
      best_level = j;
      best_mass = mass;
    }
  }
  DyadicSelection out;
  out.level = std::ldexp(1.0, best_level);
  out.mass = best_mass;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] > out.level && f[i] <= 2.0 * out.level) out.indices.push_back(i);
  }
  return out;
}

}  // namespace gausslab
