#include "fluidrank/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fluidrank {

namespace {

// floor(f*n) with a sliver of slack: f*n may land a rounding error below the
// exact product (e.g. 0.57 * 100), and the exact value is what is meant.
std::size_t top_k_size(double fraction, std::size_t n) {
    const double kf = std::floor(fraction * static_cast<double>(n) + 1e-9);
    auto k = kf > 0.0 ? static_cast<std::size_t>(kf) : 0;
    if (k < 1) k = 1;
    if (k > n) k = n;
    return k;
}

}  // namespace

std::vector<NodeId> canonical_order(const RankVector& v) {
    std::vector<NodeId> ids(v.scores.size());
    std::iota(ids.begin(), ids.end(), NodeId{0});
    std::sort(ids.begin(), ids.end(), [&v](NodeId a, NodeId b) {
        if (v.scores[a] != v.scores[b]) return v.scores[a] > v.scores[b];
        return a < b;
    });
    return ids;
}

RankVector fr_scores(const DiffusionResult& result, bool history_only) {
    if (result.history.size() != result.fluid.size())
        throw std::invalid_argument("fr_scores: history/fluid length mismatch");
    RankVector v;
    v.method = history_only ? RankMethod::h_only : RankMethod::fr;
    v.scores = result.history;
    if (!history_only)
        for (std::size_t i = 0; i < v.scores.size(); ++i) v.scores[i] += result.fluid[i];
    return v;
}

RankVector loc_scores(const Graph& g) {
    RankVector v;
    v.method = RankMethod::loc;
    v.scores.resize(g.num_nodes());
    for (std::size_t i = 0; i < v.scores.size(); ++i)
        v.scores[i] = static_cast<double>(g.in_degree(static_cast<NodeId>(i)));
    return v;
}

std::vector<double> scale_history(std::span<const double> h, double alpha, double damping,
                                  std::size_t n) {
    if (n == 0) return {};
    const double factor = (1.0 - damping) / (alpha * static_cast<double>(n));
    std::vector<double> scaled(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) scaled[i] = h[i] * factor;
    return scaled;
}

BoundReport check_theorem_bound(const RankVector& x, std::span<const double> h, double alpha,
                                double damping, double oracle_epsilon) {
    if (x.scores.size() != h.size())
        throw std::invalid_argument("check_theorem_bound: length mismatch");

    const std::vector<double> scaled = scale_history(h, alpha, damping, h.size());
    BoundReport report;
    report.bound =
        alpha > 1.0 ? 1.0 / (alpha - 1.0) : std::numeric_limits<double>::infinity();

    double l1 = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double diff = x.scores[i] - scaled[i];
        l1 += std::abs(diff);
        double violation = -diff;  // lower side: scaled must not exceed x
        if (alpha > 1.0) violation = std::max(violation, diff - scaled[i] / (alpha - 1.0));
        worst = std::max(worst, violation);
    }
    report.l1_error = l1;
    report.componentwise_ok = worst <= oracle_epsilon;
    report.max_violation = std::max(worst, 0.0);
    return report;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("l1_distance: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

OverlapCurve top_overlap(const RankVector& a, const RankVector& b,
                         std::span<const double> fractions) {
    const std::size_t n = a.scores.size();
    if (n == 0) throw std::invalid_argument("top_overlap: empty ranking");
    if (b.scores.size() != n) throw std::invalid_argument("top_overlap: length mismatch");

    const std::vector<NodeId> order_a = canonical_order(a);
    const std::vector<NodeId> order_b = canonical_order(b);

    std::vector<std::uint32_t> marked(n, 0);
    std::uint32_t generation = 0;
    OverlapCurve curve;
    curve.points.reserve(fractions.size());
    for (const double f : fractions) {
        if (!(f > 0.0) || !(f <= 1.0))
            throw std::invalid_argument("top_overlap: fraction outside (0,1]");
        const std::size_t k = top_k_size(f, n);
        ++generation;
        for (std::size_t i = 0; i < k; ++i) marked[order_a[i]] = generation;
        std::size_t common = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (marked[order_b[i]] == generation) ++common;
        curve.points.push_back({f, static_cast<double>(common) / static_cast<double>(k)});
    }
    return curve;
}

}  // namespace fluidrank
