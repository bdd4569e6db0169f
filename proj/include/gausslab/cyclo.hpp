#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace gausslab {

/// Exact sum of p-th roots of unity, stored as the multiplicity of each
/// e_p(t) = exp(2 pi i t / p).
///
/// Since sum_t e_p(t) = 0, two count vectors that differ by a multiple of the
/// all-ones vector denote the same number; canonical() subtracts the minimum
/// count so that equal sums have equal canonical forms.
class CycloSum {
 public:
  explicit CycloSum(std::uint32_t p) : counts_(p, 0) {}

  static CycloSum unit(std::uint32_t p, std::uint32_t t) {
    CycloSum s(p);
    s.add(t);
    return s;
  }

  void add(std::uint32_t t, std::int64_t multiplicity = 1) { counts_[t] += multiplicity; }

  std::uint32_t p() const { return static_cast<std::uint32_t>(counts_.size()); }
  std::span<const std::int64_t> counts() const { return counts_; }
  std::int64_t count(std::uint32_t t) const { return counts_[t]; }
  /// Sum of the multiplicities; the number of unit terms when all are nonnegative.
  std::int64_t total() const;

  CycloSum canonical() const;
  /// Equality as complex numbers (exact).
  bool operator==(const CycloSum& other) const;

  CycloSum& operator+=(const CycloSum& other);
  CycloSum& operator-=(const CycloSum& other);
  CycloSum& operator*=(std::int64_t k);

  /// The only float conversion point; error is at most total() * 2^-50.
  std::complex<double> value() const;
  double magnitude() const { return std::abs(value()); }

 private:
  std::vector<std::int64_t> counts_;
};

inline CycloSum operator+(CycloSum a, const CycloSum& b) { return a += b; }
inline CycloSum operator-(CycloSum a, const CycloSum& b) { return a -= b; }
inline CycloSum operator*(std::int64_t k, CycloSum a) { return a *= k; }

/// Table of e_p(t) for t in [0, p), cached per thread for the last p used.
std::span<const std::complex<double>> unit_roots(std::uint32_t p);

}  // namespace gausslab
