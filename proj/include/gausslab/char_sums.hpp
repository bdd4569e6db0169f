#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "gausslab/cyclo.hpp"
#include "gausslab/field.hpp"
#include "gausslab/subgroups.hpp"

namespace gausslab {

using Weights = std::vector<std::complex<double>>;

/// Complex-weighted sum accumulated in double precision.
struct WeightedSum {
  std::complex<double> value;
  double magnitude() const { return std::abs(value); }
};

struct TrilinearSum {
  WeightedSum sum;
  /// magnitude / (|X| |Y| |Z|)
  double delta = 0.0;
};

/// Cap on the number of character terms a single scan may evaluate.
struct Budget {
  std::uint64_t max_terms = std::uint64_t{1} << 40;
};

/// Tr(a x): psi_a(x) = e_p of this value.
inline std::uint32_t psi_exponent(const FieldCtx& ctx, Label a, Label x) {
  return ctx.trace(ctx.mul(a, x));
}

/// S_n(a) = sum over all x in F_q of psi_a(x^n), with n first reduced to gcd(n, q-1).
CycloSum gauss_sum(const FieldCtx& ctx, std::uint64_t n, Label a);

/// S_n(a) with each x^n formed by square-and-multiply and no reduction of n.
/// Independent route for checking that S_n depends on n only through gcd(n, q-1).
CycloSum gauss_sum_direct(const FieldCtx& ctx, std::uint64_t n, Label a);

/// S(a, H) = sum over h in H of psi_a(h).
CycloSum subgroup_sum(const FieldCtx& ctx, const SubgroupSpec& h, Label a);

/// sum_{j=1..K} psi_a(g^j); throws BadRange unless 1 <= K <= ord(g).
CycloSum incomplete_sum(const FieldCtx& ctx, Label g, std::uint64_t k, Label a);

/// sum_{x, y} alpha_x beta_y psi(xy) by an explicit double loop.
WeightedSum bilinear_sum(const FieldCtx& ctx, const ElementSet& x, const ElementSet& y,
                         const Weights& alpha, const Weights& beta);

/// sum_{x, y, z} alpha_x beta_y gamma_z psi(xyz) by an explicit triple loop.
TrilinearSum trilinear_sum(const FieldCtx& ctx, const ElementSet& x, const ElementSet& y,
                           const ElementSet& z, const Weights& alpha, const Weights& beta,
                           const Weights& gamma);

/// Unweighted sum_{x in X} sum_{y in Y} psi(xy), exact.
CycloSum bilinear_sum_exact(const FieldCtx& ctx, const ElementSet& x, const ElementSet& y);

struct GaussFamily {
  std::uint64_t n = 1;
};
struct SubgroupFamily {
  const SubgroupSpec* h = nullptr;
};
struct IncompleteFamily {
  Label g = 1;
  std::uint64_t k = 1;
};
using CharacterFamily = std::variant<GaussFamily, SubgroupFamily, IncompleteFamily>;

struct CharacterMax {
  Label a = 1;
  double magnitude = 0.0;
};

/// max over a != 0 of the family's magnitude. Ties (relative 1e-12) go to the
/// smallest label. Gauss and subgroup sums are constant on cosets of the
/// relevant subgroup, so only one representative per coset is evaluated.
/// Throws BudgetExceeded.
CharacterMax max_over_characters(const FieldCtx& ctx, const CharacterFamily& family,
                                 const Budget& budget = {}, unsigned jobs = 0);

/// Magnitudes of the family for every a in [1, q), indexed by a - 1, with no
/// coset shortcut. Reference scan for tests and small fields.
std::vector<double> character_magnitudes(const FieldCtx& ctx, const CharacterFamily& family,
                                         unsigned jobs = 0);

/// sigma(J) = max_{1 <= J' <= J} max_{a != 0} |sum_{j <= J'} psi_a(g^j)|.
double running_incomplete_max(const FieldCtx& ctx, Label g, std::uint64_t j, unsigned jobs = 0);

struct ShiftTrick {
  /// |S_K(a) - (1/J) sum_{j <= J} sum_{k <= K} psi_a(g^{j+k})|
  double deviation = 0.0;
  /// 2 sigma(J)
  double bound = 0.0;
};

/// Evaluates both sides of the averaged-shift inequality for one a != 0,
/// J <= K <= ord(g). The shifted average is formed exactly as
/// J S_K - sum_j S_{K,j} before the single float conversion.
ShiftTrick shift_trick(const FieldCtx& ctx, Label g, std::uint64_t k, std::uint64_t j, Label a,
                       unsigned jobs = 0);

}  // namespace gausslab
