#include "gausslab/bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "gausslab/arith.hpp"
#include "gausslab/errors.hpp"
#include "gausslab/rng.hpp"

namespace gausslab {
namespace {

ElementSet everything(const FieldCtx& ctx, Label from = 0) {
  ElementSet all(ctx.q() - from);
  std::iota(all.begin(), all.end(), from);
  return all;
}

TEST(Weil, Examples) {
  const FieldCtx f7 = build_field(7, 1);
  const BoundReport r3 = eval_weil(f7, 3);
  EXPECT_EQ(r3.bound_id, "weil_eq4");
  EXPECT_NEAR(r3.lhs, 4.740939, 1e-6);
  EXPECT_NEAR(r3.rhs_shape, 2 * std::sqrt(7.0), 1e-12);
  EXPECT_EQ(r3.verdict, Verdict::pass);
  EXPECT_FALSE(r3.params["equality"].get<bool>());

  const BoundReport r2 = eval_weil(f7, 2);
  EXPECT_NEAR(r2.ratio, 1.0, 1e-9);
  EXPECT_EQ(r2.verdict, Verdict::pass);
  EXPECT_TRUE(r2.params["equality"].get<bool>());

  // Cubes in F_4^* are all 1, so S_3(1) = 1 + 3 psi(1) = 4 meets the bound.
  const BoundReport r4 = eval_weil(build_field(2, 2), 3);
  EXPECT_NEAR(r4.lhs, 4.0, 1e-12);
  EXPECT_NEAR(r4.rhs_shape, 4.0, 1e-12);
  EXPECT_TRUE(r4.params["equality"].get<bool>());

  EXPECT_THROW(eval_weil(f7, 4), NotADivisor);
  EXPECT_THROW(eval_weil(f7, 1), BadRange);
}

TEST(AssertBounds, TrivialInstances) {
  const FieldCtx ctx = build_field(3, 3);
  const ElementSet all = everything(ctx);
  const Weights ones(all.size(), 1.0);

  const BoundReport l4 = eval_lemma4(ctx, all, all, ones, ones);
  EXPECT_NEAR(l4.lhs, 27.0, 1e-9);
  EXPECT_NEAR(l4.rhs_shape, std::pow(27.0, 1.5), 1e-9);
  EXPECT_EQ(l4.verdict, Verdict::pass);
  EXPECT_NEAR(eval_lemma4(ctx, {5}, {7}, {1.0}, {1.0}).lhs, 1.0, 1e-12);

  const auto [bh1, bh2] = eval_lemma5(ctx, all, all);
  EXPECT_NEAR(bh1.lhs, std::pow(27.0, 4), 1e-3);
  EXPECT_NEAR(bh1.rhs_shape, std::pow(27.0, 7), 1.0);
  EXPECT_EQ(bh1.verdict, Verdict::pass);
  EXPECT_EQ(bh2.verdict, Verdict::pass);

  const FieldCtx f9 = build_field(3, 2);
  const ElementSet g = subfield_elements(f9, 1);
  const auto [g1, g2] = eval_lemma5(f9, g, g);
  EXPECT_EQ(g1.params["energy_x"].get<double>(), 27.0);
  EXPECT_EQ(g1.verdict, Verdict::pass);
  EXPECT_EQ(g2.verdict, Verdict::pass);

  const BoundReport sec7 = eval_sec7_second_moment(ctx, {1}, {1});
  EXPECT_NEAR(sec7.lhs, 27.0, 1e-9);
  EXPECT_NEAR(sec7.ratio, 1.0, 1e-12);
  EXPECT_EQ(sec7.verdict, Verdict::pass);
  EXPECT_EQ(eval_sec7_second_moment(ctx, everything(ctx), everything(ctx, 1)).verdict, Verdict::pass);
}

TEST(AssertBounds, Lemma6) {
  const FieldCtx f7 = build_field(7, 1);
  const BoundReport full = eval_lemma6(f7, nth_power_subgroup(f7, 1));
  EXPECT_NEAR(full.lhs, 1.0, 1e-12);
  EXPECT_EQ(full.verdict, Verdict::pass);
  const BoundReport h = eval_lemma6(f7, nth_power_subgroup(f7, 3));
  EXPECT_NEAR(h.lhs, 1.801938, 1e-6);  // |2 cos(6 pi / 7)|
  // E+({1, 6}) in F_7: sums 2, 0, 0, 5 give r = (2, 1, 1) -> 6.
  EXPECT_EQ(h.params["energy"].get<double>(), 6.0);
  EXPECT_NEAR(h.rhs_shape, std::min(std::pow(7.0 * 6 / 2, 0.25), std::pow(7.0, 0.125) * std::pow(6.0, 0.25)), 1e-12);
  EXPECT_EQ(h.verdict, Verdict::pass);

  const FieldCtx f121 = build_field(11, 2);
  for (std::uint64_t n : divisors(f121.group_order())) {
    EXPECT_EQ(eval_lemma6(f121, nth_power_subgroup(f121, n)).verdict, Verdict::pass) << "n=" << n;
  }
}

TEST(AssertBounds, Eq28NeedsNonzeroSets) {
  const FieldCtx f7 = build_field(7, 1);
  const auto [mult, add] = eval_eq28(f7, {1, 2}, {3, 5, 6});
  EXPECT_EQ(mult.bound_id, "eq28_cs");
  EXPECT_EQ(add.bound_id, "eq28_cs_additive");
  EXPECT_EQ(mult.verdict, Verdict::pass);
  EXPECT_EQ(add.verdict, Verdict::pass);

  const auto [bad, fine] = eval_eq28(f7, {0}, {1, 2});
  EXPECT_EQ(bad.verdict, Verdict::fail);
  EXPECT_TRUE(bad.params["contains_zero"].get<bool>());
  EXPECT_EQ(fine.verdict, Verdict::pass);
}

TEST(AssertBounds, SecondMomentNeedsNonzeroZ) {
  const FieldCtx f4 = build_field(2, 2);
  const BoundReport bad = eval_sec7_second_moment(f4, {1, 2}, {0});
  EXPECT_NEAR(bad.lhs, 16.0, 1e-9);
  EXPECT_NEAR(bad.rhs_shape, 8.0, 1e-12);
  EXPECT_EQ(bad.verdict, Verdict::fail);
  EXPECT_TRUE(bad.params["zero_in_z"].get<bool>());
  EXPECT_EQ(eval_sec7_second_moment(f4, {0, 2}, {1, 3}).verdict, Verdict::pass);
}

TEST(Identities, ExactChecks) {
  const FieldCtx f64 = build_field(2, 6);
  for (std::uint64_t n : divisors(63)) {
    const BoundReport r = eval_identity_eq3(f64, n);
    EXPECT_EQ(r.lhs, 63.0);
    EXPECT_EQ(r.verdict, Verdict::pass);
    for (unsigned nu : {1u, 2u, 3u}) {
      EXPECT_EQ(eval_subfield_intersection(f64, n, nu).verdict, Verdict::pass);
      EXPECT_EQ(eval_claim1(f64, n, nu).verdict, Verdict::pass);
    }
  }
  for (unsigned nu : {1u, 2u, 3u}) EXPECT_EQ(eval_subfield_energy(f64, nu).verdict, Verdict::pass);
  const BoundReport dr = eval_degree_reduction(f64, 100, 5);
  EXPECT_EQ(dr.params["gcd"].get<std::uint64_t>(), 1u);
  EXPECT_EQ(dr.verdict, Verdict::pass);
  EXPECT_EQ(eval_fourth_moment(f64, {0, 1, 7, 9, 33}).verdict, Verdict::pass);
}

TEST(ObserveBounds, NeverFail) {
  const FieldCtx f64 = build_field(2, 6);
  for (std::uint64_t n : divisors(63)) {
    for (const auto& r : eval_thm2(f64, n)) {
      EXPECT_EQ(r.mode, Mode::observed);
      EXPECT_EQ(r.verdict, Verdict::recorded);
      EXPECT_TRUE(std::isfinite(r.ratio));
      EXPECT_GE(r.ratio, 0.0);
    }
    for (const auto& r : eval_thm5(f64, n)) EXPECT_EQ(r.verdict, Verdict::recorded);
  }
  const auto thm2 = eval_thm2(f64, 1);
  ASSERT_EQ(thm2.size(), 4u);
  EXPECT_EQ(thm2[0].bound_id, "thm2_eq17");
  EXPECT_EQ(thm2[3].bound_id, "zhel_eq9");
  EXPECT_NEAR(thm2[0].lhs, 0.0, 1e-9);
}

TEST(ObserveBounds, Theorem1) {
  const FieldCtx f64 = build_field(2, 6);
  const BoundReport g = eval_thm1(f64, subfield_elements(f64, 3));
  EXPECT_GT(g.ratio, 1.0);
  EXPECT_GT(g.params["eq13_max_ratio"].get<double>(), 1.0);
  const BoundReport single = eval_thm1(f64, {5});
  EXPECT_EQ(single.lhs, 1.0);
  EXPECT_EQ(single.verdict, Verdict::recorded);
}

TEST(ObserveBounds, Theorem3) {
  const FieldCtx f64 = build_field(2, 6);
  const Label g = f64.generator();
  const std::vector<std::uint64_t> ks = {1, 21, 63};
  const auto reports = eval_thm3(f64, g, ks);
  ASSERT_EQ(reports.size(), 9u);
  // K = 1: every |psi_a(g)|^4 is 1, a = 0 included.
  EXPECT_NEAR(reports[0].lhs, 64.0, 1e-9);
  EXPECT_NEAR(reports[1].lhs, 1.0, 1e-12);
  // K = ord(g): the sum is q E+(<g>) with <g> = F_q^*.
  EXPECT_NEAR(reports[6].lhs, reports[6].params["q_energy"].get<double>(), 1e-6 * reports[6].lhs);
  EXPECT_NEAR(reports[6].params["a0_share"].get<double>(), std::pow(63.0, 4) / reports[6].lhs, 1e-12);
  EXPECT_THROW(eval_thm3(f64, f64.exp(3), std::vector<std::uint64_t>{22}), BadRange);
}

TEST(ObserveBounds, Theorem4) {
  const FieldCtx f27 = build_field(3, 3);
  const ElementSet y = {1, 2, 5}, z = {3, 4};
  const auto degenerate = eval_thm4(f27, {0, 1, 2, 5, 9}, y, z, Weights(5, 1.0), Weights(3, 1.0), Weights(2, 1.0), 7);
  ASSERT_EQ(degenerate.size(), 1u);
  EXPECT_EQ(degenerate[0].seed, 7u);
  EXPECT_EQ(degenerate[0].verdict, Verdict::recorded);

  const SubgroupSpec h = nth_power_subgroup(f27, 2);
  const Weights w(h.order, 1.0);
  const auto equal = eval_thm4(f27, h.elements, h.elements, h.elements, w, w, w, 0);
  ASSERT_EQ(equal.size(), 2u);
  EXPECT_EQ(equal[1].bound_id, "cor1");
  EXPECT_THROW(eval_thm4(f27, z, y, z, Weights(2, 1.0), Weights(3, 1.0), Weights(2, 1.0), 0), BadRange);
}

TEST(ObserveBounds, Corollary2Regimes) {
  const FieldCtx f121 = build_field(11, 2);
  EXPECT_EQ(eval_thm5(f121, 2)[1].params["regime"], "weil");
  EXPECT_EQ(eval_thm5(f121, 10)[1].params["regime"], "weil");
  EXPECT_EQ(eval_thm5(f121, 12)[1].params["regime"], "beyond_range");
  EXPECT_NEAR(eval_thm5(f121, 1)[0].lhs, 0.0, 1e-9);
  // 101^{1/2 - 1/130} < 10 <= 101^{1/2} puts n = 10 in the low trilinear range.
  EXPECT_EQ(eval_thm5(build_field(101, 1), 10)[1].params["regime"], "trilinear_low");
}

TEST(ObserveBounds, Lemma1Lemma2) {
  const FieldCtx f64 = build_field(2, 6);
  const SubgroupSpec h = nth_power_subgroup(f64, 7);
  const auto [l1, l2] = eval_lemma1_lemma2(f64, h.elements);
  EXPECT_EQ(l1.params["ratio_set"].get<double>(), static_cast<double>(h.order));
  EXPECT_EQ(l2.lhs, std::pow(static_cast<double>(h.order), 3));
  const auto [g1, g2] = eval_lemma1_lemma2(f64, subfield_elements(f64, 3));
  EXPECT_TRUE(g1.params["eq27_violated"].get<bool>());
  EXPECT_EQ(g2.verdict, Verdict::recorded);
}

}  // namespace
}  // namespace gausslab
