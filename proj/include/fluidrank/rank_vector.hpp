#pragma once

#include <vector>

#include "fluidrank/graph.hpp"

namespace fluidrank {

enum class RankMethod { fr, h_only, pr, loc };

/// Per-node scores plus the method that produced them. The canonical rank
/// order is score descending, ascending node id breaking ties.
struct RankVector {
    std::vector<double> scores;
    RankMethod method = RankMethod::fr;
};

/// Node ids sorted by the canonical order of v.
std::vector<NodeId> canonical_order(const RankVector& v);

}  // namespace fluidrank
