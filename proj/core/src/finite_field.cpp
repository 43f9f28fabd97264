#include "gclab/finite_field.hpp"

#include <algorithm>

#include "gclab/caps.hpp"

namespace gclab {

namespace {

constexpr i64 kFieldSizeCap = i64(1) << 16;

i64 mod_p(i64 x, i64 p) {
  i64 r = x % p;
  return r < 0 ? r + p : r;
}

// Dense coefficient vectors, X^0 first, entries already reduced mod p.
using Poly = std::vector<i64>;

Poly unpack_digits(i64 v, i64 p, int k) {
  Poly c(k, 0);
  for (int i = 0; i < k; ++i) {
    c[i] = v % p;
    v /= p;
  }
  return c;
}

i64 pack_digits(const Poly& c, i64 p) {
  i64 v = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * p + c[i];
  return v;
}

// Remainder of a mod b with b monic; a is consumed.
Poly poly_rem(Poly a, const Poly& b, i64 p) {
  int db = static_cast<int>(b.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    i64 c = a[i];
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) a[i - db + j] = mod_p(a[i - db + j] - c * b[j], p);
  }
  a.resize(db);
  return a;
}

Poly poly_mul_rem(const Poly& a, const Poly& b, const Poly& modulus, i64 p) {
  Poly prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = mod_p(prod[i + j] + a[i] * b[j], p);
  }
  return poly_rem(std::move(prod), modulus, p);
}

// Packed value of a proper monic factor, or -1 when irreducible.
i64 find_monic_factor(i64 p, const Poly& monic) {
  int deg = static_cast<int>(monic.size()) - 1;
  for (int d = 1; 2 * d <= deg; ++d) {
    i64 count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (i64 v = 0; v < count; ++v) {
      Poly divisor = unpack_digits(v, p, d);
      divisor.push_back(1);
      Poly rem = poly_rem(monic, divisor, p);
      bool zero = true;
      for (i64 c : rem)
        if (c != 0) zero = false;
      if (zero) return pack_digits(divisor, p);
    }
  }
  return -1;
}

}  // namespace

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<i64> prime_divisors(i64 n) {
  if (n < 1)
    fail(ValidationError::Code::InvalidInput, {n}, "prime divisors need a positive integer");
  std::vector<i64> out;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool polynomial_irreducible(i64 p, const std::vector<i64>& monic) {
  if (p < 2 || !is_prime(p))
    fail(ValidationError::Code::NotPrime, {p}, "coefficient modulus must be prime");
  if (monic.size() < 2)
    fail(ValidationError::Code::InvalidInput, {static_cast<i64>(monic.size())},
         "polynomial must have degree at least 1");
  Poly f(monic.size());
  for (size_t i = 0; i < monic.size(); ++i) f[i] = mod_p(monic[i], p);
  if (f.back() != 1)
    fail(ValidationError::Code::InvalidInput, {f.back()}, "polynomial must be monic");
  return find_monic_factor(p, f) < 0;
}

i64 FiniteField::add(i64 a, i64 b) const {
  Poly da = unpack_digits(a, p, k), db = unpack_digits(b, p, k);
  for (int i = 0; i < k; ++i) da[i] = mod_p(da[i] + db[i], p);
  return pack_digits(da, p);
}

i64 FiniteField::sub(i64 a, i64 b) const { return add(a, neg(b)); }

i64 FiniteField::neg(i64 a) const {
  Poly da = unpack_digits(a, p, k);
  for (int i = 0; i < k; ++i) da[i] = mod_p(-da[i], p);
  return pack_digits(da, p);
}

i64 FiniteField::mul(i64 a, i64 b) const {
  Poly prod = poly_mul_rem(unpack_digits(a, p, k), unpack_digits(b, p, k), modulus, p);
  return pack_digits(prod, p);
}

i64 FiniteField::inv(i64 a) const {
  if (a == 0) fail(ValidationError::Code::InvalidInput, {0}, "zero has no inverse");
  return pow(a, q - 2);
}

i64 FiniteField::pow(i64 a, i64 e) const {
  if (a == 0) {
    if (e < 0) fail(ValidationError::Code::InvalidInput, {e}, "zero has no inverse");
    return e == 0 ? 1 : 0;
  }
  e %= q - 1;
  if (e < 0) e += q - 1;
  i64 acc = 1, base = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

i64 FiniteField::unit_order(i64 a) const {
  if (a == 0) fail(ValidationError::Code::InvalidInput, {0}, "zero is not a unit");
  i64 order = q - 1;
  for (i64 r : prime_divisors(q - 1))
    while (order % r == 0 && pow(a, order / r) == 1) order /= r;
  return order;
}

std::vector<i64> FiniteField::coeffs(i64 a) const { return unpack_digits(a, p, k); }

i64 FiniteField::pack(const std::vector<i64>& c) const {
  Poly f(c.size());
  for (size_t i = 0; i < c.size(); ++i) f[i] = mod_p(c[i], p);
  if (static_cast<int>(f.size()) > k) f = poly_rem(std::move(f), modulus, p);
  f.resize(k, 0);
  return pack_digits(f, p);
}

FiniteField finite_field(i64 p, int k) { return finite_field(p, k, {}); }

FiniteField finite_field(i64 p, int k, const std::vector<i64>& modulus) {
  if (p < 2)
    fail(ValidationError::Code::NotPrime, {p}, "characteristic must be a prime");
  for (i64 d = 2; d * d <= p; ++d)
    if (p % d == 0)
      fail(ValidationError::Code::NotPrime, {p, d}, "characteristic must be a prime");
  if (k < 1) fail(ValidationError::Code::InvalidInput, {k}, "degree must be at least 1");

  FiniteField F;
  F.p = p;
  F.k = k;
  F.q = 1;
  for (int i = 0; i < k; ++i) {
    F.q *= p;
    if (F.q > kFieldSizeCap)
      throw CapExceeded("field size " + std::to_string(p) + "^" + std::to_string(k) +
                        " exceeds the desk-scale cap 2^16");
  }

  if (modulus.empty()) {
    for (i64 v = 0;; ++v) {
      Poly cand = unpack_digits(v, p, k);
      cand.push_back(1);
      if (find_monic_factor(p, cand) < 0) {
        F.modulus = cand;
        break;
      }
    }
  } else {
    if (static_cast<int>(modulus.size()) != k + 1)
      fail(ValidationError::Code::ShapeMismatch, {static_cast<i64>(modulus.size())},
           "modulus needs exactly degree+1 coefficients");
    Poly f(modulus.size());
    for (size_t i = 0; i < modulus.size(); ++i) f[i] = mod_p(modulus[i], p);
    if (f.back() != 1)
      fail(ValidationError::Code::InvalidInput, {f.back()}, "modulus must be monic");
    if (i64 factor = find_monic_factor(p, f); factor >= 0)
      fail(ValidationError::Code::Reducible, {factor},
           "modulus has a proper monic factor");
    F.modulus = f;
  }

  for (i64 g = 1; g < F.q; ++g) {
    if (F.unit_order(g) == F.q - 1) {
      F.generator = g;
      break;
    }
  }
  return F;
}

}  // namespace gclab
