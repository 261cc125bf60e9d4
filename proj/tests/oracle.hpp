#pragma once

#include "polytri/simplexrel.hpp"

namespace polytri::testing {

// Brute-force reference classification of a simplex pair: enumerate every
// vertex of conv(a) ∩ conv(b) as a basic solution of d inequality rows drawn
// from the two facet systems, then read the relation off the vertex set.
// Exponential and exact; for desk-scale cross-checks only.
PairRelation oracle_classify(const PointConfiguration& pc, const Simplex& a,
                             const Simplex& b);

}  // namespace polytri::testing
