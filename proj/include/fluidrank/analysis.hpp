#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fluidrank/diffusion.hpp"
#include "fluidrank/rank_vector.hpp"

namespace fluidrank {

struct BoundReport {
    double l1_error = 0.0;       ///< |x - scaled history|_1
    double bound = 0.0;          ///< 1/(alpha-1); +inf for alpha <= 1
    bool componentwise_ok = false;
    double max_violation = 0.0;  ///< worst inequality breach, 0 when none
};

struct OverlapPoint {
    double fraction;
    double overlap;
};

struct OverlapCurve {
    std::vector<OverlapPoint> points;
};

/// history + fluid of a finished quantized run, or history alone on request.
RankVector fr_scores(const DiffusionResult& result, bool history_only = false);

/// In-degree of every node.
RankVector loc_scores(const Graph& g);

/// Elementwise (1-damping) / (alpha*n) * h.
std::vector<double> scale_history(std::span<const double> h, double alpha, double damping,
                                  std::size_t n);

/// Checks that the scaled history brackets x: from below by 0 and from above
/// by a 1/(alpha-1) relative band, componentwise and in L1. oracle_epsilon
/// widens every comparison by the precision x was computed at. For
/// alpha <= 1 only the lower inequality applies and bound is +inf.
BoundReport check_theorem_bound(const RankVector& x, std::span<const double> h, double alpha,
                                double damping, double oracle_epsilon);

double l1_distance(std::span<const double> a, std::span<const double> b);

/// For each fraction f, the share of common nodes between both rankings'
/// top-k sets, k = max(1, floor(f*n)). Fractions must lie in (0, 1].
OverlapCurve top_overlap(const RankVector& a, const RankVector& b,
                         std::span<const double> fractions);

}  // namespace fluidrank
