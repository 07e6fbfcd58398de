// Shared test utilities: small fixture graphs, random generators, and
// reference oracles computed by dense linear algebra, independent of the
// sparse engine.
#pragma once

#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fluidrank/graph.hpp"

namespace testsupport {

using fluidrank::Graph;
using fluidrank::NodeId;
using Edge = std::pair<NodeId, NodeId>;

// 0 <-> 1
inline Graph two_cycle() { return Graph::from_edges(2, {{0, 1}, {1, 0}}); }

// single node, no edges
inline Graph single_dangling() { return Graph::from_edges(1, {}); }

// 0 -> 1 -> 2
inline Graph chain3() { return Graph::from_edges(3, {{0, 1}, {1, 2}}); }

// 0 -> 1, 0 -> 2, 1 -> 2
inline Graph fork3() { return Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}); }

inline std::vector<Edge> gnp_edges(std::mt19937& rng, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (coin(rng)) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    return edges;
}

inline Graph gnp_graph(std::mt19937& rng, std::size_t n, double p) {
    return Graph::from_edges(n, gnp_edges(rng, n, p));
}

// Every node gets an out-edge, so no fluid is ever absorbed.
inline Graph gnp_graph_no_dangling(std::mt19937& rng, std::size_t n, double p) {
    auto edges = gnp_edges(rng, n, p);
    std::vector<bool> has_out(n, false);
    for (const auto& e : edges) has_out[e.first] = true;
    for (std::size_t i = 0; i < n; ++i)
        if (!has_out[i])
            edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
    return Graph::from_edges(n, edges);
}

// deg distinct out-targets per node, except a dangling_frac slice with no
// out-edges. The sinks drain circulating fluid at a damping-independent rate,
// as in web graphs; without them cost blows up as damping approaches 1.
inline Graph random_web_graph(std::mt19937& rng, std::size_t n, std::size_t deg,
                              double dangling_frac) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::bernoulli_distribution is_dangling(dangling_frac);
    std::vector<Edge> edges;
    edges.reserve(n * deg);
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_dangling(rng)) continue;
        chosen.clear();
        while (chosen.size() < deg) {
            const std::size_t j = pick(rng);
            bool seen = false;
            for (const std::size_t c : chosen) seen = seen || c == j;
            if (!seen) chosen.push_back(j);
        }
        for (const std::size_t j : chosen)
            edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
    return Graph::from_edges(n, edges);
}

// Dense damped transition matrix: M[j][i] = damping / out_degree(i) for each
// edge i -> j, columns of dangling nodes all zero.
inline std::vector<std::vector<double>> dense_transition(const Graph& g, double damping) {
    const std::size_t n = g.num_nodes();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const auto nb = g.out_neighbors(static_cast<NodeId>(i));
        if (nb.empty()) continue;
        const double w = damping / static_cast<double>(nb.size());
        for (const NodeId j : nb) m[j][i] += w;
    }
    return m;
}

inline std::vector<double> mat_vec(const std::vector<std::vector<double>>& m,
                                   const std::vector<double>& x) {
    std::vector<double> y(m.size(), 0.0);
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < x.size(); ++c) y[r] += m[r][c] * x[c];
    return y;
}

// Solves x = M x + b by Gaussian elimination with partial pivoting; (I - M)
// is invertible because every column of M sums to at most damping < 1.
inline std::vector<double> solve_fixed_point_dense(const Graph& g, double damping,
                                                   const std::vector<double>& b) {
    const std::size_t n = g.num_nodes();
    auto m = dense_transition(g, damping);
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a[r][c] = (r == c ? 1.0 : 0.0) - m[r][c];
        a[r][n] = b[r];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        if (a[col][col] == 0.0) throw std::runtime_error("singular system");
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            if (factor == 0.0) continue;
            for (std::size_t c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double acc = a[r][n];
        for (std::size_t c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

// Reference for the recursive in-degree-0 closure: a node belongs iff no
// cycle can reach it. Reachability by Floyd-Warshall over paths of length
// >= 1; only for tiny graphs.
inline std::size_t brute_zero_in_closure(const Graph& g) {
    const std::size_t n = g.num_nodes();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (const NodeId j : g.out_neighbors(static_cast<NodeId>(i))) reach[i][j] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool tainted = false;
        for (std::size_t j = 0; j < n && !tainted; ++j)
            tainted = reach[j][j] && (j == i || reach[j][i]);
        if (!tainted) ++count;
    }
    return count;
}

inline double l1(const std::vector<double>& v) {
    double s = 0.0;
    for (const double x : v) s += std::abs(x);
    return s;
}

inline double l1_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

}  // namespace testsupport
