#pragma once

#include "posslog/base.h"
#include "posslog/network.h"

namespace posslog {

// (instance, context, degree) -> (!instance | !context : 1 - degree).
WeightedClause triple_to_clause(const Triple& t);

/// Base whose distribution equals the min-chain joint of `g`: one clause per
/// triple, merged by max.
PossBase encode_min(const PossNetwork& g);

/// Product combination of two bases: both inputs plus every non-tautological
/// cross disjunction (p | q : a + b - a*b), duplicates merged by max. Its
/// distribution is the pointwise product of the inputs' distributions.
PossBase combine_product(const PossBase& a, const PossBase& b);

/// Base whose distribution equals the product-chain joint of `g`: a left fold
/// of combine_product over the triples' singleton bases, taken in
/// topological node order.
PossBase encode_product(const PossNetwork& g);

}  // namespace posslog
