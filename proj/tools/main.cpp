// Command-line front end: stats, rank, bench, compare. All tables are TSV
// with a single '#' header line. Exit codes: 0 ok, 2 unreadable/malformed
// input file, 3 invalid flags or mismatched node sets, 4 numeric failure.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fluidrank/analysis.hpp"
#include "fluidrank/diffusion.hpp"
#include "fluidrank/graph.hpp"
#include "fluidrank/rank_vector.hpp"

namespace fr = fluidrank;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitFlags = 3;
constexpr int kExitNumeric = 4;

struct CliError {
    int code;
    std::string message;
};

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_ratio(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = s.find(',', start);
        parts.push_back(s.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return parts;
}

double parse_double_or_fail(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw CliError{kExitFlags, "invalid " + what + " value '" + s + "'"};
    }
}

double parse_damping(const std::string& s) {
    const double d = parse_double_or_fail(s, "damping");
    if (!(d > 0.0) || !(d < 1.0))
        throw CliError{kExitFlags, "damping must lie strictly between 0 and 1"};
    return d;
}

// "auto" resolves to 1/n once the graph is known.
double resolve_epsilon(const std::string& s, std::size_t n) {
    if (s == "auto") return n > 0 ? 1.0 / static_cast<double>(n) : 1.0;
    const double e = parse_double_or_fail(s, "epsilon");
    if (!(e > 0.0)) throw CliError{kExitFlags, "epsilon must be positive"};
    return e;
}

std::optional<std::size_t> node_limit_from(std::uint64_t nodes) {
    if (nodes == 0) return std::nullopt;
    if (nodes > (1ull << 32))
        throw CliError{kExitFlags, "--nodes exceeds the supported node id range"};
    return static_cast<std::size_t>(nodes);
}

fr::Graph load_graph(const std::string& path, std::optional<std::size_t> nodes) {
    std::ifstream in(path);
    if (!in) throw CliError{kExitInput, "cannot open '" + path + "'"};
    try {
        return fr::load_edge_list(in, nodes);
    } catch (const fr::LoadError& e) {
        throw CliError{kExitInput, path + ":" + std::to_string(e.line()) + ": " + e.what()};
    }
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw CliError{1, "cannot write '" + path + "'"};
    return out;
}

void write_scores(std::ostream& out, const fr::RankVector& v) {
    out << "# node\tscore\n";
    for (const fr::NodeId id : fr::canonical_order(v))
        out << id << "\t" << fmt_g(v.scores[id]) << "\n";
}

void write_trace(std::ostream& out, const fr::ConvergenceTrace& trace) {
    out << "# cost_iterations\tresidual\n";
    for (const auto& p : trace.samples)
        out << fmt_g(p.cost_iterations) << "\t" << fmt_g(p.residual) << "\n";
}

// ---------------------------------------------------------------- stats ---

struct StatsArgs {
    std::string graph;
    std::uint64_t nodes = 0;
};

int run_stats(const StatsArgs& a) {
    const fr::Graph g = load_graph(a.graph, node_limit_from(a.nodes));
    const fr::GraphStats s = fr::compute_stats(g);
    const auto ratio = [&](std::size_t v) {
        return s.node_count ? static_cast<double>(v) / static_cast<double>(s.node_count) : 0.0;
    };
    std::cout << "# N\tL\tL/N\tD/N\tE/N\tO/N\tmax_in\tmax_out\n"
              << s.node_count << "\t" << s.edge_count << "\t" << fmt_ratio(ratio(s.edge_count))
              << "\t" << fmt_ratio(ratio(s.dangling_count)) << "\t"
              << fmt_ratio(ratio(s.zero_in_closure)) << "\t"
              << fmt_ratio(ratio(s.self_loop_count)) << "\t" << s.max_in_degree << "\t"
              << s.max_out_degree << "\n";
    return kExitOk;
}

// ----------------------------------------------------------------- rank ---

struct RankArgs {
    std::string graph;
    std::string method;
    std::string epsilon = "auto";
    std::string score = "h+f";
    std::string trace;
    std::string output;
    double damping = 0.85;
    double alpha = 1.0;
    double beta = 1.0;
    std::uint64_t nodes = 0;
    bool naive_stop = false;
    bool alpha_seen = false;
    bool beta_seen = false;
    bool epsilon_seen = false;
    bool trace_seen = false;
};

int run_rank(const RankArgs& a) {
    const bool engine_method = a.method == "fi" || a.method == "di" || a.method == "jacobi";
    if (a.method == "fi" && a.epsilon_seen)
        throw CliError{kExitFlags, "--epsilon applies to di and jacobi only"};
    if (a.method != "fi" && (a.alpha_seen || a.beta_seen))
        throw CliError{kExitFlags, "--alpha and --beta apply to fi only"};
    if (!(a.damping > 0.0) || !(a.damping < 1.0))
        throw CliError{kExitFlags, "damping must lie strictly between 0 and 1"};
    if (a.method == "fi") {
        if (!(a.alpha > 0.0)) throw CliError{kExitFlags, "alpha must be positive"};
        if (!(a.beta > 0.0)) throw CliError{kExitFlags, "beta must be positive for fi"};
    }

    const fr::Graph g = load_graph(a.graph, node_limit_from(a.nodes));
    const std::size_t n = g.num_nodes();
    const std::size_t edges = g.num_edges();

    fr::RankVector scores;
    fr::ConvergenceTrace trace;
    double cost = 0.0;
    std::uint64_t diffusions = 0;

    if (a.method == "loc") {
        scores = fr::loc_scores(g);
    } else if (engine_method && n > 0) {
        fr::DiffusionConfig cfg;
        cfg.damping = a.damping;
        cfg.naive_stop = a.naive_stop;
        if (a.method == "fi") {
            cfg.beta = a.beta;
            cfg.initial_fluid = fr::UniformFluid{a.alpha};
        } else {
            cfg.beta = 0.0;
            cfg.epsilon = resolve_epsilon(a.epsilon, n);
            cfg.initial_fluid = fr::UniformFluid{(1.0 - a.damping) / static_cast<double>(n)};
            cfg.schedule = a.method == "di" ? fr::Schedule::cyclic : fr::Schedule::sync;
        }
        const fr::DiffusionResult res = fr::run_diffusion(g, cfg);
        cost = edges ? static_cast<double>(res.coordinate_uses) / static_cast<double>(edges)
                     : 0.0;
        diffusions = res.diffusions;
        trace = res.trace;
        if (a.method == "fi") {
            scores = fr::fr_scores(res, a.score == "h");
        } else {
            scores.method = fr::RankMethod::pr;
            scores.scores = res.history;
            if (a.score == "h+f")
                for (std::size_t i = 0; i < n; ++i) scores.scores[i] += res.fluid[i];
        }
    }

    auto out = open_output(a.output);
    write_scores(out, scores);
    if (a.trace_seen) {
        auto tout = open_output(a.trace);
        write_trace(tout, trace);
    }
    std::cout << a.method << "\t" << fmt_g(cost) << "\t" << diffusions << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- bench ---

struct BenchArgs {
    std::string graph;
    std::string damping;
    std::string methods;
    std::string alpha = "1";
    std::string epsilon = "auto";
    std::uint64_t nodes = 0;
    bool naive_stop = false;
};

int run_bench(const BenchArgs& a) {
    std::vector<double> dampings;
    for (const auto& s : split_csv(a.damping)) dampings.push_back(parse_damping(s));
    const std::vector<std::string> methods = split_csv(a.methods);
    for (const auto& m : methods)
        if (m != "jacobi" && m != "di" && m != "fi")
            throw CliError{kExitFlags, "unknown bench method '" + m + "'"};
    std::vector<double> alphas;
    for (const auto& s : split_csv(a.alpha)) {
        const double v = parse_double_or_fail(s, "alpha");
        if (!(v > 0.0)) throw CliError{kExitFlags, "alpha must be positive"};
        alphas.push_back(v);
    }

    const fr::Graph g = load_graph(a.graph, node_limit_from(a.nodes));
    const std::size_t n = g.num_nodes();
    const std::size_t edges = g.num_edges();

    const auto run_cost = [&](const std::string& method, double d, double alpha) {
        if (n == 0 || edges == 0) return 0.0;
        fr::DiffusionConfig cfg;
        cfg.damping = d;
        cfg.naive_stop = a.naive_stop;
        if (method == "fi") {
            cfg.beta = 1.0;
            cfg.initial_fluid = fr::UniformFluid{alpha};
        } else {
            cfg.beta = 0.0;
            cfg.epsilon = resolve_epsilon(a.epsilon, n);
            cfg.initial_fluid = fr::UniformFluid{(1.0 - d) / static_cast<double>(n)};
            cfg.schedule = method == "di" ? fr::Schedule::cyclic : fr::Schedule::sync;
        }
        const fr::DiffusionResult res = fr::run_diffusion(g, cfg);
        return static_cast<double>(res.coordinate_uses) / static_cast<double>(edges);
    };

    std::cout << "# damping\tmethod\talpha\tcost_iterations\n";
    for (const double d : dampings) {
        for (const auto& m : methods) {
            if (m == "fi") {
                for (const double alpha : alphas)
                    std::cout << fmt_g(d) << "\t" << m << "\t" << fmt_g(alpha) << "\t"
                              << fmt_g(run_cost(m, d, alpha)) << "\n";
            } else {
                std::cout << fmt_g(d) << "\t" << m << "\t-\t" << fmt_g(run_cost(m, d, 1.0))
                          << "\n";
            }
        }
    }
    return kExitOk;
}

// -------------------------------------------------------------- compare ---

struct CompareArgs {
    std::string a;
    std::string b;
    std::string fractions;
};

std::vector<std::pair<std::uint64_t, double>> parse_score_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{kExitInput, "cannot open '" + path + "'"};
    std::vector<std::pair<std::uint64_t, double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.front() == '#') continue;
        std::istringstream fields(line);
        std::string id_tok, score_tok, extra;
        if (!(fields >> id_tok >> score_tok) || (fields >> extra))
            throw CliError{kExitInput,
                           path + ":" + std::to_string(line_no) + ": expected two fields"};
        std::uint64_t id = 0;
        const auto [ptr, ec] = std::from_chars(id_tok.data(), id_tok.data() + id_tok.size(), id);
        if (ec != std::errc() || ptr != id_tok.data() + id_tok.size())
            throw CliError{kExitInput, path + ":" + std::to_string(line_no) + ": bad node id"};
        double score = 0.0;
        try {
            std::size_t used = 0;
            score = std::stod(score_tok, &used);
            if (used != score_tok.size() || !std::isfinite(score)) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw CliError{kExitInput, path + ":" + std::to_string(line_no) + ": bad score"};
        }
        rows.emplace_back(id, score);
    }
    std::sort(rows.begin(), rows.end());
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].first == rows[i - 1].first)
            throw CliError{kExitInput,
                           path + ": duplicate node id " + std::to_string(rows[i].first)};
    return rows;
}

int run_compare(const CompareArgs& a) {
    std::vector<double> fractions;
    if (a.fractions.empty()) {
        for (int i = 1; i <= 100; ++i) fractions.push_back(static_cast<double>(i) / 100.0);
    } else {
        for (const auto& s : split_csv(a.fractions)) {
            const double f = parse_double_or_fail(s, "fraction");
            if (!(f > 0.0) || !(f <= 1.0))
                throw CliError{kExitFlags, "fractions must lie in (0,1]"};
            fractions.push_back(f);
        }
    }

    const auto rows_a = parse_score_file(a.a);
    const auto rows_b = parse_score_file(a.b);
    bool same = rows_a.size() == rows_b.size();
    for (std::size_t i = 0; same && i < rows_a.size(); ++i)
        same = rows_a[i].first == rows_b[i].first;
    if (!same) throw CliError{kExitFlags, "score files rank different node sets"};
    if (rows_a.empty()) throw CliError{kExitFlags, "score files are empty"};

    // Rows are id-sorted, so dense indices preserve the id tie-break order.
    fr::RankVector va, vb;
    va.scores.reserve(rows_a.size());
    vb.scores.reserve(rows_b.size());
    for (const auto& [id, score] : rows_a) va.scores.push_back(score);
    for (const auto& [id, score] : rows_b) vb.scores.push_back(score);

    const fr::OverlapCurve curve = fr::top_overlap(va, vb, fractions);
    std::cout << "# fraction\toverlap\n";
    for (const auto& p : curve.points)
        std::cout << fmt_g(p.fraction) << "\t" << fmt_g(p.overlap) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse directed-graph ranking by quantized fluid diffusion"};
    app.require_subcommand(1);

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("stats", "print one TSV row of graph statistics");
    stats->add_option("--graph", stats_args.graph, "edge-list file")->required();
    stats->add_option("--nodes", stats_args.nodes, "keep only nodes with id < N")
        ->check(CLI::PositiveNumber);

    RankArgs rank_args;
    auto* rank = app.add_subcommand("rank", "score nodes and write a TSV ranking");
    rank->add_option("--graph", rank_args.graph, "edge-list file")->required();
    rank->add_option("--method", rank_args.method, "fi|di|jacobi|loc")
        ->required()
        ->check(CLI::IsMember({"fi", "di", "jacobi", "loc"}));
    rank->add_option("--damping", rank_args.damping, "damping factor in (0,1)");
    auto* rank_alpha = rank->add_option("--alpha", rank_args.alpha, "initial fluid per node (fi)");
    auto* rank_beta = rank->add_option("--beta", rank_args.beta, "diffusion granularity (fi)");
    auto* rank_eps =
        rank->add_option("--epsilon", rank_args.epsilon, "precision, or 'auto' for 1/N");
    rank->add_option("--score", rank_args.score, "h+f|h")
        ->check(CLI::IsMember({"h+f", "h"}));
    auto* rank_trace = rank->add_option("--trace", rank_args.trace, "write convergence trace TSV");
    rank->add_option("--output", rank_args.output, "write scores TSV")->required();
    rank->add_option("--nodes", rank_args.nodes, "keep only nodes with id < N")
        ->check(CLI::PositiveNumber);
    rank->add_flag("--naive-stop", rank_args.naive_stop, "stop at |F|1 <= epsilon");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "convergence cost per method and damping");
    bench->add_option("--graph", bench_args.graph, "edge-list file")->required();
    bench->add_option("--damping", bench_args.damping, "comma-separated damping list")->required();
    bench->add_option("--methods", bench_args.methods, "comma-separated from jacobi,di,fi")
        ->required();
    bench->add_option("--alpha", bench_args.alpha, "comma-separated alpha list for fi");
    bench->add_option("--epsilon", bench_args.epsilon, "precision, or 'auto' for 1/N");
    bench->add_option("--nodes", bench_args.nodes, "keep only nodes with id < N")
        ->check(CLI::PositiveNumber);
    bench->add_flag("--naive-stop", bench_args.naive_stop, "stop at |F|1 <= epsilon");

    CompareArgs compare_args;
    auto* compare = app.add_subcommand("compare", "top-k overlap curve of two score files");
    compare->add_option("--a", compare_args.a, "first score TSV")->required();
    compare->add_option("--b", compare_args.b, "second score TSV")->required();
    compare->add_option("--fractions", compare_args.fractions,
                        "comma-separated fractions (default 0.01..1.00 step 0.01)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFlags;
    }

    rank_args.alpha_seen = rank_alpha->count() > 0;
    rank_args.beta_seen = rank_beta->count() > 0;
    rank_args.epsilon_seen = rank_eps->count() > 0;
    rank_args.trace_seen = rank_trace->count() > 0;

    try {
        if (stats->parsed()) return run_stats(stats_args);
        if (rank->parsed()) return run_rank(rank_args);
        if (bench->parsed()) return run_bench(bench_args);
        if (compare->parsed()) return run_compare(compare_args);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const fr::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const fr::LoadError& e) {
        std::cerr << "error: line " << e.line() << ": " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFlags;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
