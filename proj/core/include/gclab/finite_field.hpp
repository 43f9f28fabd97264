#pragma once

#include <vector>

#include "gclab/errors.hpp"

namespace gclab {

// F_{p^k} with elements packed base p: digit i of the packed value is the
// coefficient of X^i in the residue polynomial, so 0 and 1 are the field's
// zero and one. Desk scale only: p^k <= 2^16.
struct FiniteField {
  i64 p = 0;                 // prime characteristic
  int k = 1;                 // extension degree
  i64 q = 0;                 // p^k
  std::vector<i64> modulus;  // k+1 monic coefficients, modulus[i] on X^i
  i64 generator = 0;         // smallest packed generator of the unit group

  i64 add(i64 a, i64 b) const;
  i64 sub(i64 a, i64 b) const;
  i64 neg(i64 a) const;
  i64 mul(i64 a, i64 b) const;
  i64 inv(i64 a) const;         // InvalidInput on zero
  i64 pow(i64 a, i64 e) const;  // negative e inverts first
  i64 unit_order(i64 a) const;  // order of a in the unit group
  std::vector<i64> coeffs(i64 a) const;       // k digits, X^0 first
  i64 pack(const std::vector<i64>& c) const;  // reduces mod p and modulus
};

bool is_prime(i64 n);

// Distinct prime divisors, ascending. InvalidInput for n < 1.
std::vector<i64> prime_divisors(i64 n);

// Irreducibility of a monic polynomial over F_p by trial division against
// every monic polynomial of degree 1..deg/2 (fine at desk scale).
bool polynomial_irreducible(i64 p, const std::vector<i64>& monic);

// Builds F_{p^k}. When no modulus is given, the monic irreducible of degree
// k with the smallest packed value is used, so the construction is
// deterministic. A supplied modulus must be monic of degree exactly k and is
// checked for irreducibility. The multiplicative generator is found by
// ascending scan and verified by the order test against each prime divisor
// of p^k - 1. Witnessed failures: NotPrime(p, divisor), Reducible(factor).
FiniteField finite_field(i64 p, int k);
FiniteField finite_field(i64 p, int k, const std::vector<i64>& modulus);

}  // namespace gclab
