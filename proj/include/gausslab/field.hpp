#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gausslab {

/// Canonical label of an element of F_{p^m}: the base-p number whose digits
/// are the coefficients of the polynomial representative, constant term
/// first. Label 0 is zero, label 1 is one, labels 0..p-1 are the prime field.
using Label = std::uint32_t;

/// Sorted, duplicate-free list of labels.
using ElementSet = std::vector<Label>;

inline constexpr std::uint64_t kDefaultQMax = std::uint64_t{1} << 22;

/// Immutable description of F_{p^m} with exp/log, Zech and trace tables.
///
/// Multiplication, inversion and powers go through discrete logs with respect
/// to the generator; addition goes through the Zech table
/// log(1 + g^i), so every arithmetic operation is O(1). Safe to share
/// read-only across threads once built.
class FieldCtx {
 public:
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  std::uint32_t p() const { return p_; }
  unsigned m() const { return m_; }
  std::uint32_t q() const { return q_; }
  /// Order of the multiplicative group, q - 1.
  std::uint32_t group_order() const { return q_ - 1; }

  /// Coefficients of the monic modulus, constant term first (length m + 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Label generator() const { return generator_; }

  /// g^i for any i >= 0.
  Label exp(std::uint64_t i) const { return exp_[i % (q_ - 1)]; }
  /// Discrete log of a nonzero element; kNoLog for zero.
  std::uint32_t log(Label x) const { return log_[x]; }
  /// Trace down to the prime field, as an integer in [0, p).
  std::uint32_t trace(Label x) const { return trace_[x]; }

  Label add(Label x, Label y) const;
  Label neg(Label x) const;
  Label sub(Label x, Label y) const { return add(x, neg(y)); }
  Label mul(Label x, Label y) const {
    if (x == 0 || y == 0) return 0;
    return exp_[log_[x] + log_[y]];
  }
  /// Throws DivisionByZero for x = 0.
  Label inv(Label x) const;
  Label div(Label x, Label y) const { return mul(x, inv(y)); }
  Label pow(Label x, std::uint64_t e) const;

  /// x^{p^k}.
  Label frobenius(Label x, std::uint64_t k) const;
  std::uint32_t multiplicative_order(Label x) const;

  std::vector<std::uint32_t> digits(Label x) const;
  Label from_digits(std::span<const std::uint32_t> d) const;
  bool valid(Label x) const { return x < q_; }

  /// Polynomial rendering in the field generator symbol, e.g. "a^2 + 2a + 1".
  std::string format(Label x) const;
  std::string modulus_string() const;

  /// Overwrites one trace table entry. Exists only for the negative-control
  /// build of the CLI; never call it elsewhere.
  void corrupt_trace_for_testing(Label x);

 private:
  friend FieldCtx build_field(std::uint64_t p, unsigned m, std::uint64_t q_max);
  FieldCtx() = default;

  std::uint32_t p_ = 0;
  unsigned m_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Label generator_ = 0;
  Label minus_one_ = 0;
  // exp_ holds 2(q-1) entries so exp_[i + j] needs no reduction for i, j < q-1.
  std::vector<Label> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
  std::vector<std::uint32_t> trace_;
};

/// Builds F_{p^m} with the lexicographically smallest monic irreducible
/// modulus (coefficients compared from the top degree down) and the smallest
/// label of full multiplicative order as generator.
///
/// Throws NotPrime, FieldTooLarge, or std::logic_error on an internal failure.
FieldCtx build_field(std::uint64_t p, unsigned m, std::uint64_t q_max = kDefaultQMax);

enum class ArithOp { add, mul, inv, pow };

/// Single entry point over the four table-driven operations; `y` is the second
/// operand for add/mul and the exponent for pow, ignored for inv.
Label field_arith(const FieldCtx& ctx, ArithOp op, Label x, std::uint64_t y = 0);

/// Elements of the subfield of order p^nu, i.e. the fixed points of x -> x^{p^nu}.
/// Throws NotADivisor unless nu | m.
ElementSet subfield_elements(const FieldCtx& ctx, unsigned nu);

/// Degrees nu with nu | m and nu < m, ascending.
std::vector<unsigned> proper_subfield_degrees(unsigned m);

/// Sorts and deduplicates.
ElementSet make_set(std::vector<Label> labels);

}  // namespace gausslab
