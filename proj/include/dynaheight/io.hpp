#pragma once

#include <string>

#include <json.hpp>

#include "dynaheight/algebraic.hpp"
#include "dynaheight/multipoly.hpp"
#include "dynaheight/unipoly.hpp"

namespace dyna {

// Plain-text polynomial syntax: `x^4 + 2*x^2 + 2`, ASCII only, `^` for
// powers, `*` optional (juxtaposition works: `2x^2`).  Multivariate inputs
// name variables x1..xn; a bare `x` is accepted when there is one variable.
// Division is permitted by constants only (`x/2`, `1/3*x`).  Parse errors
// carry a column number.
RPoly parse_poly(const std::string& text);
MultiPoly parse_multipoly(const std::string& text, int nvars);

std::string poly_to_string(const RPoly& p);
std::string multipoly_to_string(const MultiPoly& p);

// JSON shape pinned for reports: {"minpoly": "...", "approx": [re, im],
// "radius": r} with the radius rounded up so the floats stay an enclosure.
nlohmann::json algebraic_to_json(const AlgebraicNumber& a);

// Upper bound of an interval/radius as a double, rounded away from zero.
double radius_to_double(const BigFloat& r);

} // namespace dyna
