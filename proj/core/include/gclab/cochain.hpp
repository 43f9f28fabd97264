#pragma once

#include <random>

#include "gclab/gmodule.hpp"

namespace gclab {

// Inhomogeneous cochain: a total table G^degree -> A (degree 0 is a single
// element). Position of (g_1,...,g_n) is the base-|G| number with g_1 most
// significant. Values are A element indices.
struct Cochain {
  int degree = 0;
  std::vector<i64> values;

  bool operator==(const Cochain&) const = default;
};

i64 cochain_positions(const GModule& M, int degree);
Cochain zero_cochain(const GModule& M, int degree);
void check_cochain_shape(const GModule& M, const Cochain& c);

Cochain cochain_add(const GModule& M, const Cochain& a, const Cochain& b);
Cochain cochain_sub(const GModule& M, const Cochain& a, const Cochain& b);
bool cochain_is_zero(const Cochain& c);

// Standard alternating-sign differential, degrees 0..2 (the degree-3 output
// exists only so d(d(.)) can be checked):
//   d0 c (s)       = s.c - c
//   d1 g (s,t)     = s.g(t) - g(st) + g(s)
//   d2 h (a,s,t)   = a.h(s,t) - h(as,t) + h(a,st) - h(a,s)
Cochain differential(const GModule& M, const Cochain& c);

// Degree 1 or 2. On failure fills `witness` (if given) with the first tuple,
// in lexicographic order, where the cocycle identity breaks.
bool is_cocycle(const GModule& M, const Cochain& c, std::vector<i64>* witness = nullptr);

// Subtracts the coboundary of the constant h(e,e), making h(e,s) = h(s,e) = 0
// exact when h is a cocycle.
Cochain normalize(const GModule& M, const Cochain& h);

Cochain random_cochain(const GModule& M, int degree, std::mt19937& rng);

// Value lookup helpers for low degrees.
i64 cochain_value1(const GModule& M, const Cochain& g, int s);
i64 cochain_value2(const GModule& M, const Cochain& h, int s, int t);

}  // namespace gclab
