#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "gclab/errors.hpp"
#include "gclab/field_matrix.hpp"
#include "gclab/finite_field.hpp"
#include "gclab/group.hpp"
#include "gclab/smith.hpp"

using namespace gclab;

TEST_CASE("cyclic group tables") {
  FiniteGroup G = cyclic_group(6);
  CHECK(G.order == 6);
  CHECK(G.op(4, 5) == 3);
  CHECK(G.inv(2) == 4);
  CHECK(G.is_abelian());
  CHECK(element_order(G, 2) == 3);
  CHECK(element_order(G, 1) == 6);
  CHECK(element_order(G, 0) == 1);
}

TEST_CASE("validate_group rejects a non-associative loop with the witness triple") {
  // Latin square with identity 0 but (1*1)*2 = 2 while 1*(1*2) = 4.
  std::vector<int> cayley = {
      0, 1, 2, 3, 4,
      1, 0, 3, 4, 2,
      2, 3, 4, 0, 1,
      3, 4, 1, 2, 0,
      4, 2, 0, 1, 3};
  try {
    validate_group(5, cayley, {});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.code() == ValidationError::Code::NotAssociative);
    CHECK(e.witness() == std::vector<i64>{1, 1, 2});
  }
}

TEST_CASE("validate_group rejects shape and bijection defects") {
  CHECK_THROWS_AS(validate_group(2, {0, 1, 1}, {}), ValidationError);
  CHECK_THROWS_AS(validate_group(2, {0, 0, 0, 0}, {}), ValidationError);
  CHECK_THROWS_AS(validate_group(0, {}, {}), ValidationError);
}

TEST_CASE("group order cap") {
  CHECK_THROWS_AS(cyclic_group(513), CapExceeded);
  CHECK_NOTHROW(cyclic_group(512));
}

TEST_CASE("abelian group arithmetic and indexing") {
  AbelianGroup A = group_from_cyclic_factors({2, 3});
  CHECK(A.order == 6);
  for (i64 x = 0; x < A.order; ++x) CHECK(A.index_of(A.tuple(x)) == x);
  i64 a = A.index_of({1, 2}), b = A.index_of({1, 1});
  CHECK(A.add(a, b) == A.index_of({0, 0}));
  CHECK(A.neg(a) == A.index_of({1, 1}));
  CHECK(A.sub(a, a) == A.zero());
  CHECK(A.smul(5, b) == A.index_of({1, 2}));
  CHECK(A.order_of(A.index_of({1, 0})) == 2);
  CHECK(A.order_of(A.index_of({1, 1})) == 6);
}

TEST_CASE("elementary divisors and abstract isomorphism") {
  // Prime-power decomposition, sorted ascending: Z/2 x Z/3 and Z/6 share it.
  AbelianGroup A = group_from_cyclic_factors({2, 3});
  CHECK(A.elementary_divisors() == std::vector<i64>{2, 3});
  AbelianGroup B = group_from_cyclic_factors({6});
  CHECK(B.elementary_divisors() == std::vector<i64>{2, 3});
  CHECK(A.isomorphic(B));
  AbelianGroup C = group_from_cyclic_factors({2, 2});
  CHECK_FALSE(C.isomorphic(group_from_cyclic_factors({4})));
  CHECK(group_from_cyclic_factors({4, 6}).elementary_divisors() ==
        std::vector<i64>{2, 3, 4});
}

TEST_CASE("abelian to_group matches the additive table") {
  AbelianGroup A = group_from_cyclic_factors({2, 2});
  FiniteGroup G = A.to_group();
  for (i64 x = 0; x < A.order; ++x)
    for (i64 y = 0; y < A.order; ++y)
      CHECK(G.op(static_cast<int>(x), static_cast<int>(y)) == A.add(x, y));
}

TEST_CASE("smith normal form on pinned matrices") {
  Mat A(2, 2);
  A.at(0, 0) = 2; A.at(0, 1) = 4; A.at(1, 0) = 6; A.at(1, 1) = 8;
  Smith s = smith_normal_form(A);
  CHECK(s.rank == 2);
  CHECK(s.d(0) == 2);
  CHECK(s.d(1) == 4);

  Mat B(2, 3);  // rank 1: second row is a multiple of the first
  B.at(0, 0) = 1; B.at(0, 1) = 2; B.at(0, 2) = 3;
  B.at(1, 0) = 2; B.at(1, 1) = 4; B.at(1, 2) = 6;
  Smith t = smith_normal_form(B);
  CHECK(t.rank == 1);
  CHECK(t.d(0) == 1);

  Smith z = smith_normal_form(Mat(2, 2));
  CHECK(z.rank == 0);
}

TEST_CASE("smith transforms are unimodular inverses and reproduce D") {
  std::mt19937 rng(20240517);
  std::uniform_int_distribution<int> dim(1, 5), val(-6, 6);
  for (int trial = 0; trial < 60; ++trial) {
    Mat A(dim(rng), dim(rng));
    for (int r = 0; r < A.rows; ++r)
      for (int c = 0; c < A.cols; ++c) A.at(r, c) = val(rng);
    Smith s = smith_normal_form(A);
    CHECK(mat_mul(mat_mul(s.U, A), s.V) == s.D);
    CHECK(mat_mul(s.U, s.Ui) == Mat::identity(A.rows));
    CHECK(mat_mul(s.Vi, s.V) == Mat::identity(A.cols));
    for (int i = 0; i + 1 < s.rank; ++i) {
      CHECK(s.d(i) > 0);
      CHECK(s.d(i + 1) % s.d(i) == 0);
    }
    for (int r = 0; r < s.D.rows; ++r)
      for (int c = 0; c < s.D.cols; ++c)
        if (r != c) CHECK(s.D.at(r, c) == 0);
  }
}

TEST_CASE("prime fields") {
  FiniteField F = finite_field(7, 1);
  CHECK(F.q == 7);
  CHECK(F.mul(3, 5) == 1);
  CHECK(F.inv(3) == 5);
  CHECK(F.pow(3, 6) == 1);
  CHECK(F.sub(2, 5) == 4);
  CHECK(F.unit_order(F.generator) == 6);
  CHECK_THROWS_AS(F.inv(0), ValidationError);

  CHECK(finite_field(5, 1).generator == 2);
  CHECK(finite_field(7, 1).generator == 3);
}

TEST_CASE("non-prime characteristic is rejected") {
  try {
    finite_field(6, 1);
    FAIL("expected NotPrime");
  } catch (const ValidationError& e) {
    CHECK(e.code() == ValidationError::Code::NotPrime);
    CHECK(e.witness().front() == 6);
  }
  CHECK_THROWS_AS(finite_field(1, 1), ValidationError);
}

TEST_CASE("extension field via an explicit irreducible modulus") {
  // X^3 - 3 over F_7: the cubes mod 7 are {0, 1, 6}, so 3 is a non-cube.
  FiniteField K = finite_field(7, 3, {4, 0, 0, 1});
  CHECK(K.q == 343);
  i64 theta = K.pack({0, 1, 0});
  CHECK(K.pow(theta, 3) == K.pack({3, 0, 0}));
  CHECK(K.mul(theta, K.inv(theta)) == 1);
  CHECK(K.unit_order(K.generator) == 342);
  // Norm to the base field: theta^(1 + 7 + 49) = theta^3 * theta^54;
  // N(theta) = a for a cubic Kummer root.
  i64 norm = K.pow(theta, 1 + 7 + 49);
  CHECK(norm == 3);
}

TEST_CASE("reducible modulus is rejected with a factor witness") {
  try {
    finite_field(7, 2, {6, 0, 1});  // X^2 - 1 = (X-1)(X+1)
    FAIL("expected Reducible");
  } catch (const ValidationError& e) {
    CHECK(e.code() == ValidationError::Code::Reducible);
  }
  CHECK_THROWS_AS(finite_field(5, 2, {0, 0, 1}), ValidationError);
}

TEST_CASE("default modulus search and binary fields") {
  FiniteField F16 = finite_field(2, 4);
  CHECK(F16.q == 16);
  CHECK(F16.unit_order(F16.generator) == 15);
  int count = 0;
  for (i64 x = 1; x < F16.q; ++x)
    if (F16.unit_order(x) == 15) ++count;
  CHECK(count == 8);  // phi(15) primitive elements
}

TEST_CASE("field size cap") {
  CHECK_NOTHROW(finite_field(2, 16));  // exactly 2^16
  CHECK_THROWS_AS(finite_field(2, 17), CapExceeded);
  CHECK_THROWS_AS(finite_field(251, 3), CapExceeded);
}

TEST_CASE("primality and prime divisor helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(prime_divisors(12) == std::vector<i64>{2, 3});
  CHECK(prime_divisors(97) == std::vector<i64>{97});
}

TEST_CASE("polynomial irreducibility") {
  CHECK(polynomial_irreducible(7, {4, 0, 0, 1}));       // X^3 - 3
  CHECK_FALSE(polynomial_irreducible(7, {6, 0, 0, 1})); // X^3 - 1
  CHECK(polynomial_irreducible(2, {1, 1, 1}));          // X^2 + X + 1
  CHECK_FALSE(polynomial_irreducible(2, {1, 0, 1}));    // (X + 1)^2
}

TEST_CASE("field matrices") {
  FiniteField F = finite_field(5, 1);
  FieldMatrix m{2, {1, 2, 3, 4}};
  FieldMatrix id = mat_identity(2);
  CHECK(mat_mul(F, m, id) == m);
  auto inv = mat_inverse(F, m);
  REQUIRE(inv.has_value());
  CHECK(mat_mul(F, m, *inv) == id);
  CHECK(mat_pow(F, m, 0) == id);
  CHECK(mat_pow(F, m, 3) == mat_mul(F, m, mat_mul(F, m, m)));

  FieldMatrix singular{2, {1, 2, 2, 4}};
  CHECK_FALSE(mat_inverse(F, singular).has_value());

  CHECK(mat_scalar_of(mat_scale(F, 3, id)) == 3);
  CHECK_FALSE(mat_scalar_of(m).has_value());
  FieldMatrix diag{2, {2, 0, 0, 3}};
  CHECK_FALSE(mat_scalar_of(diag).has_value());
}
