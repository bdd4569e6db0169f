#include "gausslab/field.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "gausslab/arith.hpp"
#include "gausslab/errors.hpp"

namespace gausslab {
namespace {

// Labels and the doubled exp table must stay addressable with 32-bit indices.
constexpr std::uint64_t kHardQLimit = std::uint64_t{1} << 31;

using Poly = std::vector<std::uint64_t>;  // coefficients mod p, constant first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Arithmetic in F_p[x], optionally modulo a fixed monic polynomial.
class PolyRing {
 public:
  PolyRing(std::uint64_t p, Poly modulus) : p_(p), f_(std::move(modulus)) {}

  std::uint64_t inv(std::uint64_t c) const { return gausslab::powmod(c, p_ - 2, p_); }

  Poly mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
    }
    trim(r);
    return r;
  }

  // Remainder of a modulo an arbitrary nonzero b.
  Poly rem(Poly a, const Poly& b) const {
    trim(a);
    const std::size_t db = b.size() - 1;
    const std::uint64_t lead_inv = inv(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t coef = a.back() * lead_inv % p_;
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = (a[shift + i] + (p_ - coef) * b[i]) % p_;
      }
      trim(a);
    }
    return a;
  }

  Poly mulmod(const Poly& a, const Poly& b) const { return rem(mul(a, b), f_); }

  Poly powmod(Poly base, std::uint64_t e) const {
    Poly r{1};
    base = rem(std::move(base), f_);
    while (e > 0) {
      if (e & 1) r = mulmod(r, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    return r;
  }

  Poly gcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Poly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  Poly sub(Poly a, const Poly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p_ - b[i]) % p_;
    trim(a);
    return a;
  }

 private:
  std::uint64_t p_;
  Poly f_;
};

/// gcd(f, x^{p^k} - x) = 1 for every 1 <= k < m.
bool is_irreducible(std::uint64_t p, const Poly& f) {
  const std::size_t m = f.size() - 1;
  if (m <= 1) return m == 1;
  if (f[0] == 0) return false;
  PolyRing ring(p, f);
  const Poly x{0, 1};
  Poly h = x;
  for (std::size_t k = 1; k < m; ++k) {
    h = ring.powmod(h, p);
    if (ring.gcd(f, ring.sub(h, x)).size() > 1) return false;
  }
  return true;
}

Poly label_to_poly(std::uint64_t label, std::uint64_t p, unsigned m) {
  Poly out(m, 0);
  for (unsigned i = 0; i < m; ++i) {
    out[i] = label % p;
    label /= p;
  }
  trim(out);
  return out;
}

std::uint64_t poly_to_label(const Poly& a, std::uint64_t p) {
  std::uint64_t label = 0;
  for (std::size_t i = a.size(); i-- > 0;) label = label * p + a[i];
  return label;
}

Poly smallest_irreducible(std::uint64_t p, unsigned m, std::uint64_t q) {
  for (std::uint64_t v = 0; v < q; ++v) {
    Poly f = label_to_poly(v, p, m);
    f.resize(m + 1, 0);
    f[m] = 1;
    if (is_irreducible(p, f)) return f;
  }
  throw std::logic_error("no monic irreducible polynomial found");
}

std::uint32_t add_digits(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  if (p == 2) return a ^ b;
  std::uint32_t out = 0;
  std::uint32_t place = 1;
  while (a != 0 || b != 0) {
    const std::uint32_t d = (a % p + b % p) % p;
    out += d * place;
    place *= p;
    a /= p;
    b /= p;
  }
  return out;
}

}  // namespace

FieldCtx build_field(std::uint64_t p, unsigned m, std::uint64_t q_max) {
  if (!is_prime(p)) throw NotPrime(p);
  if (m == 0) throw BadRange("extension degree must be positive");
  const std::uint64_t limit = std::min(q_max, kHardQLimit);
  const std::uint64_t q64 = checked_pow(p, m, limit);
  if (q64 == 0) {
    // Report the true size when it is representable.
    const std::uint64_t true_q = checked_pow(p, m, UINT64_MAX / 2);
    throw FieldTooLarge(true_q == 0 ? UINT64_MAX : true_q, limit);
  }

  FieldCtx ctx;
  ctx.p_ = static_cast<std::uint32_t>(p);
  ctx.m_ = m;
  ctx.q_ = static_cast<std::uint32_t>(q64);
  const std::uint32_t q = ctx.q_;
  const std::uint32_t order = q - 1;

  const Poly f = smallest_irreducible(p, m, q);
  ctx.modulus_.assign(f.begin(), f.end());
  PolyRing ring(p, f);

  // Smallest label whose order is exactly q - 1.
  const std::vector<std::uint64_t> factors = prime_factors(order);
  bool found = false;
  for (std::uint64_t cand = 1; cand < q && !found; ++cand) {
    const Poly g = label_to_poly(cand, p, m);
    bool full = true;
    for (std::uint64_t r : factors) {
      const Poly h = ring.powmod(g, order / r);
      if (h.size() == 1 && h[0] == 1) {
        full = false;
        break;
      }
    }
    if (full) {
      ctx.generator_ = static_cast<Label>(cand);
      found = true;
    }
  }
  if (!found) throw std::logic_error("no generator of F_q^* found");

  // Multiplication by g is F_p-linear, so split each label into a low and a
  // high digit block and tabulate g times each block.
  const unsigned low_digits = m / 2;
  const std::uint64_t low_size = checked_pow(p, low_digits, q);
  const std::uint64_t high_size = q / low_size;
  const Poly g_poly = label_to_poly(ctx.generator_, p, m);
  std::vector<std::uint32_t> times_g_low(low_size), times_g_high(high_size);
  for (std::uint64_t v = 0; v < low_size; ++v) {
    times_g_low[v] = static_cast<std::uint32_t>(
        poly_to_label(ring.mulmod(label_to_poly(v, p, m), g_poly), p));
  }
  for (std::uint64_t w = 0; w < high_size; ++w) {
    times_g_high[w] = static_cast<std::uint32_t>(
        poly_to_label(ring.mulmod(label_to_poly(w * low_size, p, m), g_poly), p));
  }

  ctx.exp_.assign(2 * static_cast<std::size_t>(order), 0);
  ctx.log_.assign(q, FieldCtx::kNoLog);
  Label cur = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    if (ctx.log_[cur] != FieldCtx::kNoLog) throw std::logic_error("generator order below q - 1");
    ctx.exp_[i] = cur;
    ctx.exp_[i + order] = cur;
    ctx.log_[cur] = i;
    cur = add_digits(times_g_low[cur % low_size], times_g_high[cur / low_size], ctx.p_);
  }
  if (cur != 1) throw std::logic_error("exp table does not close up");

  ctx.zech_.assign(order, FieldCtx::kNoLog);
  for (std::uint32_t i = 0; i < order; ++i) {
    const Label e = ctx.exp_[i];
    const std::uint32_t c0 = e % ctx.p_;
    const Label e1 = e - c0 + (c0 + 1) % ctx.p_;
    ctx.zech_[i] = e1 == 0 ? FieldCtx::kNoLog : ctx.log_[e1];
  }
  ctx.minus_one_ = ctx.p_ == 2 ? 1 : ctx.p_ - 1;

  ctx.trace_.assign(q, 0);
  for (Label x = 1; x < q; ++x) {
    Label t = 0;
    for (unsigned i = 0; i < m; ++i) t = ctx.add(t, ctx.frobenius(x, i));
    if (t >= ctx.p_) throw std::logic_error("trace left the prime field");
    ctx.trace_[x] = t;
  }
  return ctx;
}

Label FieldCtx::add(Label x, Label y) const {
  if (x == 0) return y;
  if (y == 0) return x;
  const std::uint32_t lx = log_[x];
  const std::uint32_t ly = log_[y];
  const std::uint32_t d = ly >= lx ? ly - lx : ly + (q_ - 1) - lx;
  const std::uint32_t z = zech_[d];
  if (z == kNoLog) return 0;
  return exp_[lx + z];
}

Label FieldCtx::neg(Label x) const { return mul(x, minus_one_); }

Label FieldCtx::inv(Label x) const {
  if (x == 0) throw DivisionByZero();
  const std::uint32_t l = log_[x];
  return exp_[l == 0 ? 0 : (q_ - 1) - l];
}

Label FieldCtx::pow(Label x, std::uint64_t e) const {
  if (x == 0) return e == 0 ? 1 : 0;
  return exp_[mulmod(log_[x], e % (q_ - 1), q_ - 1)];
}

Label FieldCtx::frobenius(Label x, std::uint64_t k) const {
  if (x == 0) return 0;
  return exp_[mulmod(log_[x], powmod(p_, k, q_ - 1), q_ - 1)];
}

std::uint32_t FieldCtx::multiplicative_order(Label x) const {
  if (x == 0) throw DivisionByZero();
  return (q_ - 1) / std::gcd(log_[x], q_ - 1);
}

std::vector<std::uint32_t> FieldCtx::digits(Label x) const {
  std::vector<std::uint32_t> out(m_, 0);
  for (unsigned i = 0; i < m_; ++i) {
    out[i] = x % p_;
    x /= p_;
  }
  return out;
}

Label FieldCtx::from_digits(std::span<const std::uint32_t> d) const {
  if (d.size() != m_) throw BadRange("digit vector length must equal m");
  Label x = 0;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] >= p_) throw BadRange("digit out of range");
    x = x * p_ + d[i];
  }
  return x;
}

namespace {

std::string format_poly(std::span<const std::uint32_t> coeffs, const char* symbol) {
  std::string out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const std::uint32_t c = coeffs[i];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0 || c != 1) out += std::to_string(c);
    if (i >= 1) out += symbol;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string FieldCtx::format(Label x) const {
  const auto d = digits(x);
  return format_poly(d, "a");
}

std::string FieldCtx::modulus_string() const { return format_poly(modulus_, "x"); }

void FieldCtx::corrupt_trace_for_testing(Label x) { trace_[x] = (trace_[x] + 1) % p_; }

Label field_arith(const FieldCtx& ctx, ArithOp op, Label x, std::uint64_t y) {
  if (!ctx.valid(x)) throw BadRange("operand is not a label of this field");
  switch (op) {
    case ArithOp::add:
      if (y >= ctx.q()) throw BadRange("operand is not a label of this field");
      return ctx.add(x, static_cast<Label>(y));
    case ArithOp::mul:
      if (y >= ctx.q()) throw BadRange("operand is not a label of this field");
      return ctx.mul(x, static_cast<Label>(y));
    case ArithOp::inv:
      return ctx.inv(x);
    case ArithOp::pow:
      return ctx.pow(x, y);
  }
  throw std::logic_error("unhandled ArithOp");
}

ElementSet subfield_elements(const FieldCtx& ctx, unsigned nu) {
  if (nu == 0 || ctx.m() % nu != 0) throw NotADivisor(nu, ctx.m());
  ElementSet out;
  for (Label x = 0; x < ctx.q(); ++x) {
    if (ctx.frobenius(x, nu) == x) out.push_back(x);
  }
  return out;
}

std::vector<unsigned> proper_subfield_degrees(unsigned m) {
  std::vector<unsigned> out;
  for (unsigned nu = 1; nu < m; ++nu) {
    if (m % nu == 0) out.push_back(nu);
  }
  return out;
}

ElementSet make_set(std::vector<Label> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

}  // namespace gausslab
