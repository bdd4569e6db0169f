#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gausslab/char_sums.hpp"
#include "gausslab/field.hpp"

namespace gausslab {

using u128 = unsigned __int128;

std::string to_string(u128 v);

ElementSet difference_set(const FieldCtx& ctx, const ElementSet& a);
/// {a / b : a, b in A, b != 0}
ElementSet ratio_set(const FieldCtx& ctx, const ElementSet& a);

enum class EnergyKind { additive, multiplicative };

struct EnergyRecord {
  EnergyKind kind = EnergyKind::additive;
  u128 value = 0;
  /// (d, r(d)) for every d with r(d) > 0, ascending in d.
  std::vector<std::pair<Label, std::uint64_t>> histogram;
  std::uint64_t size_a = 0;
  std::uint64_t size_b = 0;

  double as_double() const { return static_cast<double>(value); }
};

/// E+(A, B) = sum_d r(d)^2 with r(d) = #{(a, b) : a + b = d}.
EnergyRecord additive_energy(const FieldCtx& ctx, const ElementSet& a, const ElementSet& b);
inline EnergyRecord additive_energy(const FieldCtx& ctx, const ElementSet& a) {
  return additive_energy(ctx, a, a);
}

/// E_x(A, B) over products a b; products equal to 0 are counted like any other value.
EnergyRecord multiplicative_energy(const FieldCtx& ctx, const ElementSet& a, const ElementSet& b);
inline EnergyRecord multiplicative_energy(const FieldCtx& ctx, const ElementSet& a) {
  return multiplicative_energy(ctx, a, a);
}

/// (1/q) sum over all a in F_q of |sum_{x in X} psi_a(x)|^4, each inner sum
/// kept exact until its magnitude is taken. Throws BudgetExceeded.
double energy_via_fourth_moment(const FieldCtx& ctx, const ElementSet& x, const Budget& budget = {},
                                unsigned jobs = 0);

struct DyadicSelection {
  std::vector<std::size_t> indices;  // positions into the input, ascending
  double level = 1.0;                // N, with N < f(x) <= 2N on the selection
  double mass = 0.0;                 // sum of f over the selection
};

/// Picks the dyadic level N = 2^j (j >= 0) whose elements N < f <= 2N carry
/// the most mass. Only elements with f > 1 take part, and their total must
/// reach `k`; otherwise throws MassTooSmall. Ties go to the lowest level.
DyadicSelection dyadic_select(std::span<const double> f, double k, double m);

}  // namespace gausslab
