#include "fluidrank/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <limits>
#include <numeric>

namespace fluidrank {

namespace {

constexpr std::uint64_t kMaxNodeId = std::numeric_limits<NodeId>::max();

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// One "src dst" line; both fields must be runs of decimal digits.
std::pair<std::uint64_t, std::uint64_t> parse_edge_line(const std::string& line,
                                                        std::size_t line_no) {
    std::uint64_t vals[2] = {0, 0};
    const char* p = line.data();
    const char* end = p + line.size();
    for (int field = 0; field < 2; ++field) {
        while (p != end && is_space(*p)) ++p;
        const char* tok = p;
        while (p != end && !is_space(*p)) ++p;
        if (tok == p)
            throw ParseError("expected two fields, found " + std::to_string(field), line_no);
        auto [ptr, ec] = std::from_chars(tok, p, vals[field]);
        if (ec == std::errc::result_out_of_range)
            throw RangeError("node id out of range", line_no);
        if (ec != std::errc() || ptr != p)
            throw ParseError("field is not a non-negative integer", line_no);
    }
    while (p != end && is_space(*p)) ++p;
    if (p != end) throw ParseError("trailing data after two fields", line_no);
    return {vals[0], vals[1]};
}

}  // namespace

Graph Graph::from_edges(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges) {
    for (const auto& [src, dst] : edges)
        if (src >= n || dst >= n) throw std::invalid_argument("edge endpoint out of range");

    Graph g;
    g.n_ = n;

    // Counting sort by source, then sort and dedup each adjacency row.
    std::vector<std::uint64_t> bounds(n + 1, 0);
    for (const auto& e : edges) ++bounds[e.first + 1];
    std::partial_sum(bounds.begin(), bounds.end(), bounds.begin());

    std::vector<NodeId> scratch(edges.size());
    {
        std::vector<std::uint64_t> cursor(bounds.begin(), bounds.end() - 1);
        for (const auto& [src, dst] : edges) scratch[cursor[src]++] = dst;
    }

    g.offsets_.assign(n + 1, 0);
    g.targets_.reserve(scratch.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto first = scratch.begin() + static_cast<std::ptrdiff_t>(bounds[i]);
        auto last = scratch.begin() + static_cast<std::ptrdiff_t>(bounds[i + 1]);
        std::sort(first, last);
        auto stop = std::unique(first, last);
        g.targets_.insert(g.targets_.end(), first, stop);
        g.offsets_[i + 1] = g.targets_.size();
    }

    g.in_degree_.assign(n, 0);
    for (NodeId t : g.targets_) ++g.in_degree_[t];
    return g;
}

bool Graph::has_edge(NodeId i, NodeId j) const {
    const auto nb = out_neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), j);
}

Graph load_edge_list(std::istream& in, std::optional<std::size_t> node_limit) {
    if (node_limit) {
        if (*node_limit == 0) throw std::invalid_argument("node_limit must be positive");
        if (*node_limit > kMaxNodeId + 1ull)
            throw RangeError("node_limit exceeds the index range", 0);
    }

    std::vector<std::pair<NodeId, NodeId>> edges;
    std::string line;
    std::size_t line_no = 0;
    std::uint64_t max_id = 0;
    bool saw_node = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.front() == '#') continue;
        const auto [src, dst] = parse_edge_line(line, line_no);
        if (node_limit) {
            if (src >= *node_limit || dst >= *node_limit) continue;
        } else {
            if (src > kMaxNodeId || dst > kMaxNodeId)
                throw RangeError("node id exceeds the index range", line_no);
            max_id = std::max({max_id, src, dst});
            saw_node = true;
        }
        edges.emplace_back(static_cast<NodeId>(src), static_cast<NodeId>(dst));
    }

    const std::size_t n = node_limit ? *node_limit : (saw_node ? max_id + 1 : 0);
    return Graph::from_edges(n, std::move(edges));
}

GraphStats compute_stats(const Graph& g) {
    GraphStats s;
    const std::size_t n = g.num_nodes();
    s.node_count = n;
    s.edge_count = g.num_edges();

    std::vector<std::uint32_t> pending(n);
    std::vector<NodeId> worklist;
    for (std::size_t v = 0; v < n; ++v) {
        const auto i = static_cast<NodeId>(v);
        const std::size_t out = g.out_degree(i);
        if (out == 0) ++s.dangling_count;
        s.max_out_degree = std::max(s.max_out_degree, out);
        s.max_in_degree = std::max(s.max_in_degree, g.in_degree(i));
        if (g.has_edge(i, i)) ++s.self_loop_count;
        pending[v] = static_cast<std::uint32_t>(g.in_degree(i));
        if (pending[v] == 0) worklist.push_back(i);
    }

    // Peel nodes whose in-neighbors have all settled; anything on or fed by
    // a cycle keeps a positive pending count forever.
    while (!worklist.empty()) {
        const NodeId i = worklist.back();
        worklist.pop_back();
        ++s.zero_in_closure;
        for (NodeId j : g.out_neighbors(i))
            if (--pending[j] == 0) worklist.push_back(j);
    }
    return s;
}

}  // namespace fluidrank
