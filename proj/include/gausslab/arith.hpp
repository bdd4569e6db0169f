#pragma once

#include <cstdint>
#include <vector>

// Integer helpers shared by the field builder and the subgroup lattice.

namespace gausslab {

bool is_prime(std::uint64_t n);

/// Distinct prime factors of n, ascending. n = 1 gives an empty list.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// All divisors of k in ascending order; k must be positive.
std::vector<std::uint64_t> divisors(std::uint64_t k);

/// base^exp, or 0 when the result would exceed `limit`.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit);

/// (a * b) mod m without overflow for m < 2^63.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

}  // namespace gausslab
