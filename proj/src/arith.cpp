#include "gausslab/arith.hpp"

#include <algorithm>

namespace gausslab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t k) {
  std::vector<std::uint64_t> low, high;
  for (std::uint64_t d = 1; d * d <= k; ++d) {
    if (k % d != 0) continue;
    low.push_back(d);
    if (d != k / d) high.push_back(k / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base) return 0;
    r *= base;
  }
  return r > limit ? 0 : r;
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace gausslab
