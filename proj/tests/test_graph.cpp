#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "fluidrank/graph.hpp"
#include "support.hpp"

using fluidrank::Graph;
using fluidrank::GraphStats;
using fluidrank::load_edge_list;
using fluidrank::NodeId;
using fluidrank::ParseError;
using fluidrank::RangeError;
namespace ts = testsupport;

namespace {

Graph load_str(const std::string& text, std::optional<std::size_t> limit = std::nullopt) {
    std::istringstream in(text);
    return load_edge_list(in, limit);
}

std::vector<NodeId> row(const Graph& g, NodeId i) {
    const auto nb = g.out_neighbors(i);
    return {nb.begin(), nb.end()};
}

}  // namespace

TEST_CASE("load_edge_list reads a two-node cycle") {
    const Graph g = load_str("0 1\n1 0\n");
    CHECK(g.num_nodes() == 2);
    CHECK(g.num_edges() == 2);
    CHECK(row(g, 0) == std::vector<NodeId>{1});
    CHECK(row(g, 1) == std::vector<NodeId>{0});
}

TEST_CASE("load_edge_list collapses duplicates and skips comments") {
    const Graph g = load_str("0 1\n0 1\n# comment\n0 2\n1 2\n");
    CHECK(g.num_nodes() == 3);
    CHECK(g.num_edges() == 3);
    CHECK(row(g, 0) == std::vector<NodeId>{1, 2});
    CHECK(row(g, 1) == std::vector<NodeId>{2});
    CHECK(row(g, 2).empty());
    CHECK(g.in_degree(0) == 0);
    CHECK(g.in_degree(1) == 1);
    CHECK(g.in_degree(2) == 2);
}

TEST_CASE("load_edge_list sizes the graph one past the largest id") {
    const Graph g = load_str("7 3\n");
    CHECK(g.num_nodes() == 8);
    CHECK(g.num_edges() == 1);
}

TEST_CASE("load_edge_list on empty input yields an empty graph") {
    const Graph g = load_str("");
    CHECK(g.num_nodes() == 0);
    CHECK(g.num_edges() == 0);
}

TEST_CASE("node_limit keeps only edges inside the prefix and fixes n") {
    const Graph g = load_str("0 1\n5 9\n1 2\n", 3);
    CHECK(g.num_nodes() == 3);
    CHECK(g.num_edges() == 2);
    CHECK(row(g, 0) == std::vector<NodeId>{1});
    CHECK(row(g, 1) == std::vector<NodeId>{2});

    const Graph padded = load_str("0 1\n", 5);
    CHECK(padded.num_nodes() == 5);
    CHECK(padded.num_edges() == 1);
}

TEST_CASE("malformed lines raise ParseError with the line number") {
    const auto line_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            load_edge_list(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("0\n") == 1);
    CHECK(line_of("a b\n") == 1);
    CHECK(line_of("0 1\n0 x\n") == 2);
    CHECK(line_of("1 2 3\n") == 1);
    CHECK(line_of("3.5 1\n") == 1);
    CHECK(line_of("-1 2\n") == 1);
    CHECK(line_of("0 1\n\n") == 2);
    CHECK_THROWS_AS(load_str("0 one\n"), ParseError);
}

TEST_CASE("oversized ids raise RangeError") {
    CHECK_THROWS_AS(load_str("0 99999999999999999999\n"), RangeError);
    CHECK_THROWS_AS(load_str("0 4294967296\n"), RangeError);
    // With a limit the oversized endpoint is simply outside the prefix.
    const Graph g = load_str("0 4294967296\n", 10);
    CHECK(g.num_nodes() == 10);
    CHECK(g.num_edges() == 0);
}

TEST_CASE("self-loops are stored once") {
    const Graph g = load_str("0 0\n0 0\n");
    CHECK(g.num_nodes() == 1);
    CHECK(g.num_edges() == 1);
    CHECK(g.has_edge(0, 0));
}

TEST_CASE("from_edges rejects endpoints outside [0, n)") {
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(0, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("compute_stats on the fork graph") {
    const GraphStats s = fluidrank::compute_stats(ts::fork3());
    CHECK(s.node_count == 3);
    CHECK(s.edge_count == 3);
    CHECK(s.dangling_count == 1);
    CHECK(s.zero_in_closure == 3);
    CHECK(s.self_loop_count == 0);
    CHECK(s.max_in_degree == 2);
    CHECK(s.max_out_degree == 2);
}

TEST_CASE("compute_stats on a single self-loop") {
    const GraphStats s = fluidrank::compute_stats(Graph::from_edges(1, {{0, 0}}));
    CHECK(s.node_count == 1);
    CHECK(s.edge_count == 1);
    CHECK(s.dangling_count == 0);
    CHECK(s.zero_in_closure == 0);
    CHECK(s.self_loop_count == 1);
    CHECK(s.max_in_degree == 1);
    CHECK(s.max_out_degree == 1);
}

TEST_CASE("compute_stats on an edgeless graph") {
    const GraphStats s = fluidrank::compute_stats(Graph::from_edges(2, {}));
    CHECK(s.node_count == 2);
    CHECK(s.edge_count == 0);
    CHECK(s.dangling_count == 2);
    CHECK(s.zero_in_closure == 2);
    CHECK(s.self_loop_count == 0);
    CHECK(s.max_in_degree == 0);
    CHECK(s.max_out_degree == 0);
}

TEST_CASE("edge count equals the number of distinct input edges") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> node(0, 9);
    for (int trial = 0; trial < 50; ++trial) {
        std::ostringstream text;
        std::set<std::pair<int, int>> distinct;
        const int lines = 1 + static_cast<int>(rng() % 40);
        int max_id = 0;
        for (int k = 0; k < lines; ++k) {
            const int s = node(rng);
            const int t = node(rng);
            text << s << " " << t << "\n";
            distinct.emplace(s, t);
            max_id = std::max({max_id, s, t});
        }
        const Graph g = load_str(text.str());
        CHECK(g.num_nodes() == static_cast<std::size_t>(max_id) + 1);
        CHECK(g.num_edges() == distinct.size());

        // Loading the same bytes twice gives identical adjacency.
        const Graph again = load_str(text.str());
        REQUIRE(again.num_nodes() == g.num_nodes());
        for (std::size_t i = 0; i < g.num_nodes(); ++i)
            CHECK(row(again, static_cast<NodeId>(i)) == row(g, static_cast<NodeId>(i)));
    }
}

TEST_CASE("degree sums match the edge count") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 30;
        const Graph g = ts::gnp_graph(rng, n, 0.15);
        std::size_t out_sum = 0;
        std::size_t in_sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            out_sum += g.out_degree(static_cast<NodeId>(i));
            in_sum += g.in_degree(static_cast<NodeId>(i));
        }
        CHECK(out_sum == g.num_edges());
        CHECK(in_sum == g.num_edges());
    }
}

TEST_CASE("zero_in_closure matches brute-force cycle reachability") {
    std::mt19937 rng(23);
    int nonzero_cases = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        const Graph g = ts::gnp_graph(rng, n, 0.22);
        const GraphStats s = fluidrank::compute_stats(g);
        CHECK(s.zero_in_closure == ts::brute_zero_in_closure(g));
        if (s.zero_in_closure > 0 && s.zero_in_closure < n) ++nonzero_cases;
    }
    CHECK(nonzero_cases > 10);  // the corpus exercises non-trivial closures
}
