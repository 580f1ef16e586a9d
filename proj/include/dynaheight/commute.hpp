#pragma once

#include <memory>
#include <vector>

#include "dynaheight/algebraic.hpp"
#include "dynaheight/classify.hpp"
#include "dynaheight/numberfield.hpp"

namespace dyna {

// One linear symmetry L(x) = mu x commuting with an iterate of f, together
// with the smallest witnessing iterate.
struct SymmetryElement {
    AlgebraicNumber mu;
    long witness_k = 0;
};

// The group of linear symmetries mu x that commute with some iterate of a
// disintegrated map in normal form.  Cyclic of order dividing the gap
// exponent; mu values are m-th roots of unity where m is the order.
struct SymmetryGroup {
    std::vector<SymmetryElement> elements;          // mus_[i].embed(), same order
    std::vector<NFElem> mus;                        // exact field representation
    std::shared_ptr<const NumberField> field;       // Q(zeta_m); null when m <= 2
    long gap = 0;                                   // r from the normal form
    long searched_k_max = 0;                        // how far witnesses were sought

    long order() const { return static_cast<long>(elements.size()); }
    // Index of an element of maximal multiplicative order (a cyclic generator).
    size_t generator_index() const;
};

// A polynomial commuting with a witnessed iterate of f.
struct Commuter {
    NFPoly poly;
    long witness_k = 0;
};

struct CommuterSet {
    RPoly base;                        // the minimal commuter f~
    SymmetryGroup group;
    long D_exponent = 1;               // e with deg(f) = deg(base)^e
    std::vector<Commuter> elements;    // {base^m o L : deg <= D}, m ascending
};

// All linear maps mu x commuting with f^k for some k <= k_max (0 picks the
// default r*d).  Requires f disintegrated and in normal form.
SymmetryGroup symmetry_group(const RPoly& f, long k_max = 0);

// Lowest-degree polynomial of degree >= 2 commuting with an iterate of f;
// f itself when deg(f) is not a proper power or no smaller commuter is found
// within k_max.  Requires f disintegrated.
RPoly minimal_commuter(const RPoly& f, long k_max = 0);

// Every polynomial of degree <= D commuting with some iterate of f, as
// {base^m o L} with witnesses.  Requires f disintegrated and in normal form.
CommuterSet commuters_up_to(const RPoly& f, long D, long k_max = 0);

} // namespace dyna
