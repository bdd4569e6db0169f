#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gausslab/arith.hpp"
#include "gausslab/field.hpp"

namespace gausslab {

/// The subgroup H = {x^n : x in F_q^*} of order (q - 1) / n.
struct SubgroupSpec {
  std::uint64_t n = 1;
  std::uint32_t order = 0;
  Label generator = 1;     // g^n for the field generator g
  ElementSet elements;     // sorted
  std::vector<bool> member;  // indexed by label

  bool contains(Label x) const { return x < member.size() && member[x]; }
};

/// Throws NotADivisor unless n | q - 1.
SubgroupSpec nth_power_subgroup(const FieldCtx& ctx, std::uint64_t n);

/// The cyclic group generated by g, as the n-th power group with n = (q-1)/ord(g).
SubgroupSpec generated_subgroup(const FieldCtx& ctx, Label g);

struct IntersectionSize {
  std::uint64_t formula = 0;     // gcd(n, (q-1)/(p^nu-1)) (p^nu-1) / n
  std::uint64_t enumerated = 0;  // |H cap G| counted directly
};

/// |H cap G| for H the n-th powers and G the subfield of order p^nu, nu < m.
IntersectionSize subfield_intersection_size(const FieldCtx& ctx, std::uint64_t n, unsigned nu);

/// |A cap cG| by enumeration over G.
std::uint64_t coset_intersection_size(const FieldCtx& ctx, const ElementSet& a, Label c, unsigned nu);

/// max over every c in F_q (c = 0 included) of |A cap cG|.
std::uint64_t max_coset_intersection(const FieldCtx& ctx, const ElementSet& a, unsigned nu);

enum class ConditionId {
  bc_eq5,           // gcd(n, (q-1)/(p^nu-1)) < q^{1-eps} / p^nu
  zhel_eq11,        // gcd(n, (q-1)/(p^nu-1)) << n^{d1} q^{1-d1} / p^nu
  gcd_eq16,         // gcd(n, (q-1)/(p^nu-1)) <= lambda n^delta q^{1-delta} / p^nu
  gcd_eq19,         // gcd(n, (q-1)/(p^nu-1)) << n / p^{nu/2}
  inc_eq20,         // gcd(t, p^nu - 1) << p^{nu/2}
  antifield_eq13,   // |A cap cG| <= lambda |A|^{1-delta}
  antifield_eq15,   // |A cap cG| << |G|^{1/2}
  antifield_eq24,   // |X cap cG| << |G|^{1/2}
};

std::string_view to_string(ConditionId id);
/// Throws UnknownCondition.
ConditionId parse_condition(std::string_view id);

struct ConditionParams {
  std::uint64_t n = 1;        // gcd conditions
  std::uint64_t t = 1;        // inc_eq20: order of the generating element
  double epsilon = 0.0;       // bc_eq5
  double delta = 1.0 / 33.0;  // gcd_eq16, antifield_eq13
  double delta1 = 119.0 / 605.0;  // zhel_eq11
  double lambda = 1.0;        // gcd_eq16, antifield_eq13
  const ElementSet* set = nullptr;  // antifield conditions
};

struct ConditionReport {
  ConditionId id{};
  unsigned nu = 0;
  std::uint64_t lhs = 0;
  double rhs_shape = 0.0;
  double ratio = 0.0;
  bool holds_with_constant_1 = true;
};

/// One report per proper subfield degree nu; empty for prime fields.
/// The implied constants are set to 1, so reports are observations only.
std::vector<ConditionReport> check_condition(const FieldCtx& ctx, ConditionId id,
                                             const ConditionParams& params);

/// Largest ratio over a report list, 0 for an empty list.
double max_ratio(const std::vector<ConditionReport>& reports);

}  // namespace gausslab
