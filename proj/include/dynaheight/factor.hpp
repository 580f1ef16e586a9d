#pragma once

#include <utility>
#include <vector>

#include "dynaheight/unipoly.hpp"

namespace dyna {

// Factorization over the rationals: p = lead * prod factor_i ^ mult_i with
// every factor monic irreducible in Q[x].
struct RationalFactorization {
    Rational lead;
    std::vector<std::pair<RPoly, int>> factors;
};

// Complete factorization into monic irreducibles (Berlekamp over a small
// prime, quadratic Hensel lifting, Mignotte-bounded recombination).  Degrees
// above Config::kFactorDegreeCap raise ErrorKind::unsupported.
RationalFactorization factor_rational(const RPoly& p);

bool is_irreducible(const RPoly& p);

// Squarefree decomposition p = lead * prod part_i ^ i (Yun); parts monic.
std::vector<std::pair<RPoly, int>> squarefree_decomposition(const RPoly& p);

// Clear denominators and integer content: returns primitive integer
// coefficients (low-to-high) and the rational scale with
// p = scale * primitive.
std::pair<std::vector<Integer>, Rational> primitive_integer_coeffs(const RPoly& p);

} // namespace dyna
