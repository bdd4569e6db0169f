#include "gausslab/char_sums.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "gausslab/arith.hpp"
#include "gausslab/cyclo.hpp"
#include "gausslab/errors.hpp"
#include "gausslab/rng.hpp"
#include "gausslab/subgroups.hpp"
#include "oracle.hpp"

namespace gausslab {
namespace {

constexpr double kTol = 1e-9;

TEST(CycloSum, CanonicalFormAndValue) {
  CycloSum all(5);
  for (std::uint32_t t = 0; t < 5; ++t) all.add(t);
  EXPECT_EQ(all, CycloSum(5));
  EXPECT_NEAR(all.magnitude(), 0.0, kTol);

  CycloSum s(7);
  s.add(1, 3);
  s.add(6, 3);
  s.add(0);
  EXPECT_NEAR(s.magnitude(), 1 + 6 * std::cos(2 * std::numbers::pi / 7), kTol);

  CycloSum t = s;
  for (std::uint32_t k = 0; k < 7; ++k) t.add(k, 4);
  EXPECT_EQ(s, t);
  EXPECT_EQ(2 * s - s, s);

  const CycloSum one = CycloSum::unit(3, 1);
  EXPECT_NEAR(std::abs(one.value() - oracle::e_p(1, 3)), 0.0, kTol);
}

TEST(CycloSum, ValueMatchesDirectSum) {
  Rng rng(7);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u}) {
    CycloSum s(p);
    std::complex<double> direct = 0.0;
    for (int i = 0; i < 500; ++i) {
      const auto t = static_cast<std::uint32_t>(rng.below(p));
      const auto k = static_cast<std::int64_t>(rng.below(4));
      s.add(t, k);
      direct += static_cast<double>(k) * oracle::e_p(t, p);
    }
    EXPECT_NEAR(std::abs(s.value() - direct), 0.0, 1e-9);
  }
}

TEST(CharacterSums, SmallExamples) {
  const FieldCtx f7 = build_field(7, 1);
  EXPECT_NEAR(gauss_sum(f7, 2, 1).magnitude(), std::sqrt(7.0), kTol);
  EXPECT_NEAR(gauss_sum(f7, 3, 1).magnitude(), 1 + 6 * std::cos(2 * std::numbers::pi / 7), kTol);
  EXPECT_NEAR(gauss_sum(f7, 3, 1).magnitude(), 4.740939, 1e-6);
  EXPECT_NEAR(gauss_sum(f7, 1, 3).magnitude(), 0.0, kTol);
  EXPECT_NEAR(gauss_sum(f7, 3, 0).magnitude(), 7.0, kTol);

  const SubgroupSpec full = nth_power_subgroup(f7, 1);
  EXPECT_NEAR(std::abs(subgroup_sum(f7, full, 1).value() - std::complex<double>(-1.0)), 0.0, kTol);
  const SubgroupSpec h = nth_power_subgroup(f7, 3);
  EXPECT_EQ(h.elements, (ElementSet{1, 6}));
  EXPECT_NEAR(subgroup_sum(f7, h, 1).magnitude(), 1.246980, 1e-6);

  CycloSum rhs = 3 * subgroup_sum(f7, h, 1);
  rhs.add(0);
  EXPECT_EQ(gauss_sum(f7, 3, 1), rhs);

  EXPECT_NEAR(incomplete_sum(f7, 3, 2, 1).magnitude(), 1.801938, 1e-6);
  EXPECT_NEAR(incomplete_sum(f7, 3, 1, 1).magnitude(), 1.0, kTol);
  EXPECT_EQ(incomplete_sum(f7, 2, 3, 1), subgroup_sum(f7, generated_subgroup(f7, 2), 1));
  EXPECT_THROW(incomplete_sum(f7, 2, 4, 1), BadRange);
  EXPECT_THROW(incomplete_sum(f7, 2, 0, 1), BadRange);

  const FieldCtx f4 = build_field(2, 2);
  EXPECT_EQ(psi_exponent(f4, 1, 2), 1u);
  EXPECT_EQ(psi_exponent(f4, 1, 0), 0u);
  EXPECT_EQ(psi_exponent(f4, 0, 3), 0u);
}

TEST(CharacterSums, GaussSumsMatchOracle) {
  for (const auto [p, m] : {std::pair{2u, 4u}, {3u, 3u}, {5u, 2u}, {7u, 2u}, {13u, 1u}, {2u, 6u}, {3u, 4u}}) {
    SCOPED_TRACE(testing::Message() << "p=" << p << " m=" << m);
    const FieldCtx ctx = build_field(p, m);
    const oracle::NaiveField naive(p, m);
    const oracle::Tables t(naive);
    for (std::uint64_t n : {1u, 2u, 3u, 4u, 5u, 6u, 8u, 9u, 12u, 13u}) {
      for (Label a = 0; a < ctx.q(); a += 1 + ctx.q() / 11) {
        const auto expected = oracle::gauss_sum(t, n, a);
        ASSERT_NEAR(std::abs(gauss_sum(ctx, n, a).value() - expected), 0.0, 1e-8) << "n=" << n << " a=" << a;
        ASSERT_EQ(gauss_sum_direct(ctx, n, a), gauss_sum(ctx, n, a));
      }
    }
    for (std::uint64_t n : divisors(ctx.group_order())) {
      const SubgroupSpec h = nth_power_subgroup(ctx, n);
      for (Label a = 1; a < ctx.q(); a += 1 + ctx.q() / 7) {
        ASSERT_NEAR(std::abs(subgroup_sum(ctx, h, a).value() - oracle::set_sum(t, h.elements, a)), 0.0, 1e-8);
      }
    }
  }
}

TEST(CharacterSums, MaxOverCharactersMatchesFullScan) {
  for (const auto [p, m] : {std::pair{7u, 1u}, {2u, 6u}, {3u, 4u}, {11u, 2u}, {101u, 1u}}) {
    const FieldCtx ctx = build_field(p, m);
    for (std::uint64_t n : divisors(ctx.group_order())) {
      const SubgroupSpec h = nth_power_subgroup(ctx, n);
      const std::vector<CharacterFamily> families = {GaussFamily{n}, SubgroupFamily{&h},
                                                     IncompleteFamily{ctx.exp(n), std::max<std::uint64_t>(1, h.order / 2)}};
      for (const auto& fam : families) {
        const auto mags = character_magnitudes(ctx, fam, 2);
        const double best = *std::max_element(mags.begin(), mags.end());
        const CharacterMax got = max_over_characters(ctx, fam, {}, 3);
        ASSERT_NEAR(got.magnitude, best, 1e-9) << "q=" << ctx.q() << " n=" << n;
        std::size_t first = 0;
        while (mags[first] < best - 1e-12 * std::max(1.0, best)) ++first;
        ASSERT_EQ(got.a, first + 1) << "q=" << ctx.q() << " n=" << n;
      }
    }
  }
  const FieldCtx f7 = build_field(7, 1);
  const CharacterMax g1 = max_over_characters(f7, GaussFamily{1});
  EXPECT_EQ(g1.a, 1u);
  EXPECT_NEAR(g1.magnitude, 0.0, kTol);
  EXPECT_NEAR(max_over_characters(f7, GaussFamily{2}).magnitude, 2.645751, 1e-6);
  EXPECT_NEAR(max_over_characters(f7, GaussFamily{3}).magnitude, 4.740939, 1e-6);
  Budget tiny;
  tiny.max_terms = 10;
  EXPECT_THROW(max_over_characters(f7, GaussFamily{3}, tiny), BudgetExceeded);
}

TEST(CharacterSums, BilinearAndTrilinear) {
  const FieldCtx ctx = build_field(3, 3);
  const oracle::NaiveField naive(3, 3);
  const oracle::Tables t(naive);
  ElementSet all(ctx.q());
  std::iota(all.begin(), all.end(), 0);
  const Weights ones(ctx.q(), 1.0);
  EXPECT_NEAR(bilinear_sum(ctx, all, all, ones, ones).magnitude(), ctx.q(), 1e-9);
  EXPECT_NEAR(bilinear_sum_exact(ctx, all, all).magnitude(), ctx.q(), 1e-9);
  EXPECT_NEAR(bilinear_sum(ctx, {4}, {7}, {1.0}, {1.0}).magnitude(), 1.0, 1e-12);
  EXPECT_THROW(bilinear_sum(ctx, {4, 5}, {7}, {1.0}, {1.0}), BadRange);

  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    ElementSet x, y, z;
    for (Label v = 0; v < ctx.q(); ++v) {
      if (rng.below(3) == 0) x.push_back(v);
      if (rng.below(4) == 0) y.push_back(v);
      if (rng.below(5) == 0) z.push_back(v);
    }
    auto weights = [&](std::size_t n) {
      Weights w(n);
      for (auto& v : w) v = std::polar(1.0, 2 * std::numbers::pi * rng.unit());
      return w;
    };
    const Weights a = weights(x.size()), b = weights(y.size()), c = weights(z.size());
    std::complex<double> bi = 0.0, tri = 0.0;
    // Reverse loop order as an independent re-evaluation.
    for (std::size_t j = y.size(); j-- > 0;) {
      for (std::size_t i = x.size(); i-- > 0;) {
        bi += a[i] * b[j] * t.psi(x[i], y[j]);
        for (std::size_t k = z.size(); k-- > 0;) tri += a[i] * b[j] * c[k] * t.psi(t.times(x[i], y[j]), z[k]);
      }
    }
    EXPECT_NEAR(std::abs(bilinear_sum(ctx, x, y, a, b).value - bi), 0.0, 1e-9);
    const TrilinearSum got = trilinear_sum(ctx, x, y, z, a, b, c);
    EXPECT_NEAR(std::abs(got.sum.value - tri), 0.0, 1e-9);
    EXPECT_LE(got.sum.magnitude(), static_cast<double>(x.size() * y.size() * z.size()) + 1e-9);
  }

  const ElementSet y = {1, 2, 5}, z = {3, 4};
  const Weights wy(3, 1.0), wz(2, 1.0);
  EXPECT_NEAR(trilinear_sum(ctx, {0}, y, z, {1.0}, wy, wz).sum.magnitude(), 6.0, 1e-12);
  EXPECT_NEAR(trilinear_sum(ctx, {1}, {1}, {1}, {1.0}, {1.0}, {1.0}).sum.magnitude(), 1.0, 1e-12);
}

TEST(CharacterSums, ShiftTrickHolds) {
  for (const auto [p, m] : {std::pair{2u, 6u}, {5u, 2u}, {31u, 1u}}) {
    const FieldCtx ctx = build_field(p, m);
    Rng rng(p * 100 + m);
    for (int trial = 0; trial < 30; ++trial) {
      const Label g = static_cast<Label>(rng.between(1, ctx.group_order()));
      const std::uint64_t ord = ctx.multiplicative_order(g);
      const std::uint64_t k = rng.between(1, ord);
      const std::uint64_t j = rng.between(1, k);
      const Label a = static_cast<Label>(rng.between(1, ctx.group_order()));
      const ShiftTrick st = shift_trick(ctx, g, k, j, a);
      EXPECT_LE(st.deviation, st.bound * (1 + 1e-6));
      EXPECT_GE(st.bound, 0.0);
    }
  }
  const FieldCtx f7 = build_field(7, 1);
  EXPECT_THROW(shift_trick(f7, 3, 2, 3, 1), BadRange);
  EXPECT_THROW(shift_trick(f7, 3, 2, 1, 0), BadRange);
}

TEST(CharacterSums, RunningMaxIsMonotone) {
  const FieldCtx ctx = build_field(2, 5);
  const Label g = ctx.generator();
  double prev = 0.0;
  for (std::uint64_t j = 1; j <= 20; ++j) {
    const double s = running_incomplete_max(ctx, g, j);
    EXPECT_GE(s, prev);
    prev = s;
  }
  EXPECT_NEAR(running_incomplete_max(ctx, g, 1), 1.0, 1e-12);
}

}  // namespace
}  // namespace gausslab
