#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "fluidrank/graph.hpp"
#include "fluidrank/rank_vector.hpp"

namespace fluidrank {

/// Node visit order used by run_diffusion.
enum class Schedule {
    cyclic,  ///< sweep ids 0..n-1 repeatedly, skipping ineligible nodes
    greedy,  ///< always the node holding the most fluid (ties: smallest id)
    sync,    ///< per round, amounts are read once for all nodes, then applied
             ///< together (Jacobi-style)
};

struct UniformFluid {
    double alpha = 1.0;  ///< every node starts with this much fluid
};

struct CustomFluid {
    std::vector<double> values;  ///< length n, entries finite and >= 0
};

using InitialFluid = std::variant<UniformFluid, CustomFluid>;

struct DiffusionConfig {
    double damping = 0.85;  ///< in (0,1)
    double beta = 1.0;      ///< diffusion granularity; 0 diffuses all fluid
    InitialFluid initial_fluid = UniformFluid{1.0};
    double epsilon = 1e-6;  ///< beta = 0 target precision
    Schedule schedule = Schedule::cyclic;
    bool naive_stop = false;  ///< stop at |F|1 <= epsilon instead of epsilon*(1-damping)
};

/// Mutable per-run state. history only grows; fluid stays non-negative.
struct DiffusionState {
    std::vector<double> history;
    std::vector<double> fluid;
    std::uint64_t coordinate_uses = 0;  ///< matrix coordinates touched so far
    std::size_t cursor = 0;             ///< next position of the cyclic schedule
};

struct TracePoint {
    double cost_iterations;  ///< coordinate_uses / edge count (0 when no edges)
    double residual;         ///< |fluid|_1
};

struct ConvergenceTrace {
    std::vector<TracePoint> samples;
};

struct DiffusionResult {
    std::vector<double> history;
    std::vector<double> fluid;
    std::uint64_t coordinate_uses = 0;
    std::uint64_t diffusions = 0;  ///< node-diffusion events
    ConvergenceTrace trace;
};

/// diffuse_once was asked to act on a node with nothing to diffuse.
class EligibilityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Fluid overflowed to a non-finite value.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Amount node i would diffuse: floor(f_i / beta) * beta for beta > 0 (a
/// hair of slack is added before flooring so a value a rounding error below
/// an exact multiple still counts), all of f_i for beta = 0. Zero means the
/// node is ineligible.
double diffusible_amount(const DiffusionState& state, double beta, NodeId i);

/// One diffusion at node i: the diffusible amount moves from fluid to
/// history and amount * damping / out_degree(i) lands on every out-neighbor.
/// coordinate_uses grows by out_degree(i); a dangling node costs nothing and
/// simply absorbs the amount. Throws EligibilityError when nothing is
/// diffusible (schedulers must skip such nodes, never call).
void diffuse_once(DiffusionState& state, const Graph& g, double damping, double beta, NodeId i);

/// One synchronous round: every node's amount is computed from the state as
/// it was when the round started, then all moves are applied. Returns the
/// number of nodes diffused (0 when none was eligible).
std::size_t sync_round(DiffusionState& state, const Graph& g, double damping, double beta);

/// Runs diffusion to termination. beta > 0 stops when no node holds beta or
/// more fluid, which happens after finitely many diffusions; beta = 0 stops
/// once |F|_1 <= epsilon * (1 - damping), which keeps the history within
/// epsilon (L1) of its limit. The trace is sampled whenever coordinate_uses
/// crosses a multiple of the edge count, and at termination.
DiffusionResult run_diffusion(const Graph& g, const DiffusionConfig& cfg);

/// History limit of a beta = 0 cyclic run seeded with (1-damping)/n fluid
/// everywhere: the damped-walk score vector, within epsilon in L1.
RankVector pagerank_oracle(const Graph& g, double damping, double epsilon);

}  // namespace fluidrank
