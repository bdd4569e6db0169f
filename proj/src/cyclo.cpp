#include "gausslab/cyclo.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace gausslab {

std::span<const std::complex<double>> unit_roots(std::uint32_t p) {
  thread_local std::uint32_t cached_p = 0;
  thread_local std::vector<std::complex<double>> roots;
  if (cached_p != p) {
    roots.resize(p);
    for (std::uint32_t t = 0; t < p; ++t) {
      // Reduce to the first half-turn so e_p(t) and e_p(p - t) come out as
      // exact conjugates.
      const bool upper = 2 * static_cast<std::uint64_t>(t) > p;
      const std::uint32_t s = upper ? p - t : t;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(p);
      roots[t] = {std::cos(angle), upper ? -std::sin(angle) : std::sin(angle)};
    }
    cached_p = p;
  }
  return roots;
}

std::int64_t CycloSum::total() const {
  std::int64_t s = 0;
  for (auto c : counts_) s += c;
  return s;
}

CycloSum CycloSum::canonical() const {
  CycloSum out = *this;
  const std::int64_t lo = *std::min_element(out.counts_.begin(), out.counts_.end());
  for (auto& c : out.counts_) c -= lo;
  return out;
}

bool CycloSum::operator==(const CycloSum& other) const {
  if (p() != other.p()) return false;
  return canonical().counts_ == other.canonical().counts_;
}

CycloSum& CycloSum::operator+=(const CycloSum& other) {
  if (p() != other.p()) throw std::invalid_argument("CycloSum characteristic mismatch");
  for (std::size_t t = 0; t < counts_.size(); ++t) counts_[t] += other.counts_[t];
  return *this;
}

CycloSum& CycloSum::operator-=(const CycloSum& other) {
  if (p() != other.p()) throw std::invalid_argument("CycloSum characteristic mismatch");
  for (std::size_t t = 0; t < counts_.size(); ++t) counts_[t] -= other.counts_[t];
  return *this;
}

CycloSum& CycloSum::operator*=(std::int64_t k) {
  for (auto& c : counts_) c *= k;
  return *this;
}

std::complex<double> CycloSum::value() const {
  // Work on the canonical form: smaller multiplicities, same number.
  const std::int64_t lo = *std::min_element(counts_.begin(), counts_.end());
  const auto roots = unit_roots(p());
  double re = 0.0, im = 0.0;
  for (std::size_t t = 0; t < counts_.size(); ++t) {
    const auto c = static_cast<double>(counts_[t] - lo);
    if (c == 0.0) continue;
    re += c * roots[t].real();
    im += c * roots[t].imag();
  }
  return {re, im};
}

}  // namespace gausslab
