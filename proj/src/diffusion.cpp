#include "fluidrank/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace fluidrank {

namespace {

// Slack applied before flooring so that a value sitting one rounding error
// below an exact multiple of beta still counts as that multiple.
constexpr double kFloorSlack = 1e-12;

double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

std::vector<double> make_initial_fluid(const DiffusionConfig& cfg, std::size_t n) {
    if (const auto* u = std::get_if<UniformFluid>(&cfg.initial_fluid)) {
        if (!(u->alpha > 0.0) || !std::isfinite(u->alpha))
            throw std::invalid_argument("initial fluid: alpha must be positive and finite");
        return std::vector<double>(n, u->alpha);
    }
    const auto& v = std::get<CustomFluid>(cfg.initial_fluid).values;
    if (v.size() != n) throw std::invalid_argument("initial fluid: length mismatch");
    for (double x : v)
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("initial fluid: entries must be finite and non-negative");
    return v;
}

void validate_config(const DiffusionConfig& cfg) {
    if (!(cfg.damping > 0.0) || !(cfg.damping < 1.0))
        throw std::invalid_argument("damping must lie strictly between 0 and 1");
    if (!(cfg.beta >= 0.0) || !std::isfinite(cfg.beta))
        throw std::invalid_argument("beta must be finite and non-negative");
    if (!(cfg.epsilon > 0.0))
        throw std::invalid_argument("epsilon must be positive");
}

}  // namespace

double diffusible_amount(const DiffusionState& state, double beta, NodeId i) {
    if (i >= state.fluid.size()) throw std::out_of_range("node id out of range");
    const double f = state.fluid[i];
    if (beta > 0.0) {
        const double parts = std::floor(f / beta + kFloorSlack);
        return parts > 0.0 ? parts * beta : 0.0;
    }
    return f > 0.0 ? f : 0.0;
}

void diffuse_once(DiffusionState& state, const Graph& g, double damping, double beta, NodeId i) {
    if (i >= g.num_nodes()) throw std::out_of_range("node id out of range");
    const double amount = diffusible_amount(state, beta, i);
    if (amount <= 0.0)
        throw EligibilityError("node " + std::to_string(i) + " holds no diffusible fluid");
    if (!std::isfinite(amount)) throw NumericError("diffusion amount is not finite");

    state.history[i] += amount;
    const double rest = state.fluid[i] - amount;
    state.fluid[i] = rest > 0.0 ? rest : 0.0;  // clamp floor slack dust

    const auto neighbors = g.out_neighbors(i);
    if (!neighbors.empty()) {
        const double share = amount * damping / static_cast<double>(neighbors.size());
        for (NodeId j : neighbors) {
            double& fj = state.fluid[j];
            fj += share;
            if (!std::isfinite(fj))
                throw NumericError("fluid overflowed at node " + std::to_string(j));
        }
        state.coordinate_uses += neighbors.size();
    }
}

std::size_t sync_round(DiffusionState& state, const Graph& g, double damping, double beta) {
    const std::size_t n = g.num_nodes();
    std::vector<double> amounts(n);
    std::size_t events = 0;
    for (std::size_t v = 0; v < n; ++v) {
        amounts[v] = diffusible_amount(state, beta, static_cast<NodeId>(v));
        if (amounts[v] > 0.0) ++events;
    }
    if (events == 0) return 0;

    // All amounts are fixed now, so subtraction and scatter may interleave:
    // additions commute and nothing re-reads an amount.
    for (std::size_t v = 0; v < n; ++v) {
        const double amount = amounts[v];
        if (amount <= 0.0) continue;
        if (!std::isfinite(amount)) throw NumericError("diffusion amount is not finite");
        const auto i = static_cast<NodeId>(v);
        state.history[i] += amount;
        const double rest = state.fluid[i] - amount;
        state.fluid[i] = rest > 0.0 ? rest : 0.0;
        const auto neighbors = g.out_neighbors(i);
        if (!neighbors.empty()) {
            const double share = amount * damping / static_cast<double>(neighbors.size());
            for (NodeId j : neighbors) {
                double& fj = state.fluid[j];
                fj += share;
                if (!std::isfinite(fj))
                    throw NumericError("fluid overflowed at node " + std::to_string(j));
            }
            state.coordinate_uses += neighbors.size();
        }
    }
    return events;
}

DiffusionResult run_diffusion(const Graph& g, const DiffusionConfig& cfg) {
    validate_config(cfg);
    const std::size_t n = g.num_nodes();
    DiffusionResult out;
    if (n == 0) return out;

    DiffusionState st;
    st.history.assign(n, 0.0);
    st.fluid = make_initial_fluid(cfg, n);

    const std::uint64_t edges = g.num_edges();
    const double d = cfg.damping;
    const double beta = cfg.beta;
    const bool quantized = beta > 0.0;
    const double threshold =
        cfg.naive_stop ? cfg.epsilon : cfg.epsilon * (1.0 - d);

    std::uint64_t diffusions = 0;
    ConvergenceTrace trace;
    double residual = sum(st.fluid);  // running |F|_1, refreshed at samples
    std::uint64_t next_mark = edges;

    const auto cost_now = [&] {
        return edges ? static_cast<double>(st.coordinate_uses) / static_cast<double>(edges) : 0.0;
    };
    trace.samples.push_back({0.0, residual});

    const auto on_marks = [&](bool residual_is_exact) {
        if (edges == 0 || st.coordinate_uses < next_mark) return;
        if (!residual_is_exact) residual = sum(st.fluid);
        trace.samples.push_back({cost_now(), residual});
        next_mark = (st.coordinate_uses / edges + 1) * edges;
    };
    const auto after_diffuse = [&](double amount, bool dangling) {
        ++diffusions;
        residual -= dangling ? amount : amount * (1.0 - d);
        if (residual < 0.0) residual = 0.0;
        on_marks(false);
    };
    // beta = 0 stop rule; confirms the running residual against an exact sum.
    const auto converged = [&] {
        if (residual > threshold) return false;
        residual = sum(st.fluid);
        return residual <= threshold;
    };

    switch (cfg.schedule) {
        case Schedule::cyclic: {
            std::size_t idle = 0;
            while (idle < n) {
                const auto i = static_cast<NodeId>(st.cursor);
                const double amount = diffusible_amount(st, beta, i);
                st.cursor = st.cursor + 1 == n ? 0 : st.cursor + 1;
                if (amount > 0.0) {
                    const bool dangling = g.out_degree(i) == 0;
                    diffuse_once(st, g, d, beta, i);
                    after_diffuse(amount, dangling);
                    idle = 0;
                    if (!quantized && converged()) break;
                } else {
                    ++idle;
                }
            }
            break;
        }
        case Schedule::greedy: {
            while (true) {
                NodeId best = 0;
                double best_fluid = st.fluid[0];
                for (std::size_t v = 1; v < n; ++v)
                    if (st.fluid[v] > best_fluid) {
                        best_fluid = st.fluid[v];
                        best = static_cast<NodeId>(v);
                    }
                const double amount = diffusible_amount(st, beta, best);
                if (amount <= 0.0) break;
                const bool dangling = g.out_degree(best) == 0;
                diffuse_once(st, g, d, beta, best);
                after_diffuse(amount, dangling);
                if (!quantized && converged()) break;
            }
            break;
        }
        case Schedule::sync: {
            while (true) {
                const std::size_t events = sync_round(st, g, d, beta);
                if (events == 0) break;
                diffusions += events;
                residual = sum(st.fluid);
                on_marks(true);
                if (!quantized && residual <= threshold) break;
            }
            break;
        }
    }

    residual = sum(st.fluid);
    if (trace.samples.empty() || trace.samples.back().cost_iterations != cost_now() ||
        trace.samples.back().residual != residual)
        trace.samples.push_back({cost_now(), residual});

    out.history = std::move(st.history);
    out.fluid = std::move(st.fluid);
    out.coordinate_uses = st.coordinate_uses;
    out.diffusions = diffusions;
    out.trace = std::move(trace);
    return out;
}

RankVector pagerank_oracle(const Graph& g, double damping, double epsilon) {
    const std::size_t n = g.num_nodes();
    if (n == 0) throw std::invalid_argument("pagerank_oracle: empty graph");
    DiffusionConfig cfg;
    cfg.damping = damping;
    cfg.beta = 0.0;
    cfg.initial_fluid = UniformFluid{(1.0 - damping) / static_cast<double>(n)};
    cfg.epsilon = epsilon;
    cfg.schedule = Schedule::cyclic;
    DiffusionResult res = run_diffusion(g, cfg);
    return RankVector{std::move(res.history), RankMethod::pr};
}

}  // namespace fluidrank
