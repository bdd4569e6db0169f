#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gausslab/char_sums.hpp"
#include "gausslab/energy.hpp"
#include "gausslab/field.hpp"
#include "gausslab/subgroups.hpp"

namespace gausslab {

/// Constant-free statements are asserted; statements with unspecified
/// constants (<<, lambda, o(1)) are only observed.
enum class Mode { asserted, observed };
enum class Verdict { pass, fail, recorded };

std::string_view to_string(Mode m);
std::string_view to_string(Verdict v);

inline constexpr double kAssertSlack = 1e-6;
inline constexpr double kIdentityTolerance = 1e-9;

/// One bound evaluated on one instance. rhs_shape is the right-hand side with
/// implied constants, o(1) terms and log factors set to 1.
struct BoundReport {
  std::string bound_id;
  std::uint32_t p = 0;
  unsigned m = 0;
  std::uint32_t q = 0;
  std::optional<std::uint64_t> n;
  nlohmann::json params = nlohmann::json::object();
  double lhs = 0.0;
  double rhs_shape = 0.0;
  double ratio = 0.0;
  Mode mode = Mode::observed;
  Verdict verdict = Verdict::recorded;
  std::uint64_t seed = 0;
  double runtime_ms = 0.0;

  bool failed() const { return verdict == Verdict::fail; }
};

// Assert-mode inequalities. Each fails when lhs / rhs_shape > 1 + 1e-6.

/// max_a |S_n(a)| against (n - 1) q^{1/2}; n >= 2, n | q - 1. Equality cases
/// (ratio within 1e-9 of 1) are flagged in params.equality.
BoundReport eval_weil(const FieldCtx& ctx, std::uint64_t n, unsigned jobs = 0);

/// |sum alpha_x beta_y psi(xy)| against sqrt(q N M), N = sum |alpha|^2, M = sum |beta|^2.
BoundReport eval_lemma4(const FieldCtx& ctx, const ElementSet& x, const ElementSet& y,
                        const Weights& alpha, const Weights& beta);

/// |S|^4 against q min{|X|^3 E+(Y), |Y|^3 E+(X)} and |S|^8 against
/// q |X|^4 |Y|^4 E+(X) E+(Y), where S = sum_{x, y} psi(xy).
std::pair<BoundReport, BoundReport> eval_lemma5(const FieldCtx& ctx, const ElementSet& x,
                                                const ElementSet& y);

/// max_{a != 0} |S(a, H)| against min{(q E+(H) / |H|)^{1/4}, q^{1/8} E+(H)^{1/4}}.
BoundReport eval_lemma6(const FieldCtx& ctx, const SubgroupSpec& h, unsigned jobs = 0);

/// E(A, B)^2 against E(A) E(B), multiplicative ("eq28_cs") and additive
/// ("eq28_cs_additive"). The multiplicative form needs A, B inside F_q^*.
std::pair<BoundReport, BoundReport> eval_eq28(const FieldCtx& ctx, const ElementSet& a,
                                              const ElementSet& b);

/// sum_{n in F_q} |sum_{y, z} psi(nyz)|^2 against q |Y| |Z|^2. Needs 0 not in Z.
BoundReport eval_sec7_second_moment(const FieldCtx& ctx, const ElementSet& y, const ElementSet& z);

/// Averaged-shift deviation against 2 sigma(J) for one a != 0.
BoundReport eval_shift_trick(const FieldCtx& ctx, Label g, std::uint64_t k, std::uint64_t j,
                             Label a, unsigned jobs = 0);

// Assert-mode identities. Pass iff both sides agree (exactly, or to 1e-9
// relative for the fourth-moment identity).

/// Counts a in F_q^* with S_n(a) = 1 + n S(a, H) as exact cyclotomic sums.
BoundReport eval_identity_eq3(const FieldCtx& ctx, std::uint64_t n, unsigned jobs = 0);
/// S_n(a) (no reduction of n) against S_{gcd(n, q-1)}(a), exactly.
BoundReport eval_degree_reduction(const FieldCtx& ctx, std::uint64_t n, Label a);
/// (1/q) sum_a |sum_x psi_a(x)|^4 against E+(X).
BoundReport eval_fourth_moment(const FieldCtx& ctx, const ElementSet& x, unsigned jobs = 0);
/// Enumerated |H cap G| against the gcd formula.
BoundReport eval_subfield_intersection(const FieldCtx& ctx, std::uint64_t n, unsigned nu);
/// E+(G) against |G|^3 for the subfield of order p^nu.
BoundReport eval_subfield_energy(const FieldCtx& ctx, unsigned nu);
/// Counts c in F_q with |H cap cG| in {0, |H cap G|}.
BoundReport eval_claim1(const FieldCtx& ctx, std::uint64_t n, unsigned nu);

// Observe-mode bounds. Ratios are recorded, never judged.

/// E+(A) against max{|A|^{3-delta}, |A|^{3+1/33} / q^{1/33}}, with the
/// intersection-condition profile and |A/A| / |A| attached.
BoundReport eval_thm1(const FieldCtx& ctx, const ElementSet& a, double delta = 1.0 / 33.0);

/// thm2_eq17, thm2_eq18, zhel_eq10 (Gauss-sum curves) and zhel_eq9 (energy of H).
std::vector<BoundReport> eval_thm2(const FieldCtx& ctx, std::uint64_t n, double delta = 1.0 / 33.0,
                                   unsigned jobs = 0);

/// thm3_eq21, thm3_eq22, thm3_eq23 for each K in `ks` (each 1 <= K <= ord(g)).
/// Eq. 21 sums over every a in F_q, a = 0 included; its share is in params.
std::vector<BoundReport> eval_thm3(const FieldCtx& ctx, Label g, std::span<const std::uint64_t> ks,
                                   unsigned jobs = 0);

/// thm4_eq26 and, when |X| = |Y| = |Z|, cor1. Requires |X| >= |Y| >= |Z|.
std::vector<BoundReport> eval_thm4(const FieldCtx& ctx, const ElementSet& x, const ElementSet& y,
                                   const ElementSet& z, const Weights& alpha, const Weights& beta,
                                   const Weights& gamma, std::uint64_t seed);

/// thm5 (the trilinear route to Gauss sums) and cor2_piecewise with its regime.
std::vector<BoundReport> eval_thm5(const FieldCtx& ctx, std::uint64_t n, unsigned jobs = 0);

/// lemma1_quantities and lemma2_eq29. eta is the parameter of the
/// sum-ratio hypothesis, 0 < eta < 1/8.
std::pair<BoundReport, BoundReport> eval_lemma1_lemma2(const FieldCtx& ctx, const ElementSet& a,
                                                       double eta = 0.1);

}  // namespace gausslab
