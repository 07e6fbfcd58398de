#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fluidrank {

using NodeId = std::uint32_t;

/// Failure while reading an edge list. line() is the 1-based line of the
/// offending input (0 when the failure is not tied to a line).
class LoadError : public std::runtime_error {
public:
    LoadError(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Malformed input: non-integer token or wrong number of fields on a line.
class ParseError : public LoadError {
public:
    using LoadError::LoadError;
};

/// Node id too large for the 32-bit index type.
class RangeError : public LoadError {
public:
    using LoadError::LoadError;
};

/// Immutable sparse directed graph in CSR layout. Adjacency lists are
/// strictly ascending and duplicate-free; self-loops are allowed and stored
/// once. Safe for concurrent reads once built.
class Graph {
public:
    Graph() = default;

    /// Builds a graph over nodes [0, n) from (source, target) pairs.
    /// Duplicate pairs collapse to a single edge. Throws
    /// std::invalid_argument if an endpoint is >= n.
    static Graph from_edges(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges);

    std::size_t num_nodes() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return targets_.size(); }

    std::span<const NodeId> out_neighbors(NodeId i) const {
        return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
    }

    std::size_t out_degree(NodeId i) const {
        return static_cast<std::size_t>(offsets_[i + 1] - offsets_[i]);
    }
    std::size_t in_degree(NodeId i) const { return in_degree_[i]; }

    bool has_edge(NodeId i, NodeId j) const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> offsets_ = {0};
    std::vector<NodeId> targets_;
    std::vector<std::uint32_t> in_degree_;
};

/// Whole-graph counters.
struct GraphStats {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::size_t dangling_count = 0;   ///< nodes with out-degree 0
    std::size_t zero_in_closure = 0;  ///< see compute_stats
    std::size_t self_loop_count = 0;
    std::size_t max_in_degree = 0;
    std::size_t max_out_degree = 0;
};

/// Reads an ASCII edge list: one "src dst" pair of non-negative decimal
/// integers per line, '#'-prefixed lines skipped. Without node_limit the
/// node count is one past the largest id seen (0 for empty input). With
/// node_limit = N only edges with both endpoints < N are kept and the node
/// count is exactly N.
///
/// Throws ParseError on malformed lines and RangeError on ids that do not
/// fit the index type.
Graph load_edge_list(std::istream& in, std::optional<std::size_t> node_limit = std::nullopt);

/// Computes the stats row for g. zero_in_closure counts the least fixed
/// point of "every in-neighbor is already in the set": in-degree-0 nodes
/// seed the set, and a node on or downstream of a cycle never enters it.
GraphStats compute_stats(const Graph& g);

}  // namespace fluidrank
