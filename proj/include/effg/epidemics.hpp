#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "effg/centrality.hpp"
#include "effg/graph.hpp"

namespace effg {

struct SIConfig {
    /// Per-step transmission probability along each infected-susceptible edge.
    double beta = 0.2;
    int t_max = 20;
    int runs = 50;
    std::uint64_t seed = 1;

    /// Throws std::domain_error when a field is out of range.
    void validate() const;
};

/// How the per-edge Bernoulli trials get their randomness.
enum class DrawMode {
    /// One mt19937_64 stream per run, consumed in traversal order.
    Stream,
    /// Each trial (step, from, to) gets a uniform from a counter hash of the
    /// run seed. Two simulations with the same seed then see the same draw on
    /// every edge, which couples them monotonically in beta and in the seed set.
    Shared,
};

struct SimulationOptions {
    DrawMode draws = DrawMode::Stream;
    /// Extra coordinate mixed into every run seed (measure index, node index).
    std::uint64_t stream = 0;
    bool keep_run_curves = false;
};

struct SIOutcome {
    /// F(t) for t = 0..t_max, mean over runs.
    std::vector<double> f_curve;
    double final_mean = 0.0;
    std::vector<count> per_run_finals;
    /// Infected count per step for every run; only with keep_run_curves.
    std::vector<std::vector<count>> run_curves;

    /// Sample standard deviation of the final counts.
    double final_stddev() const;
};

/// Synchronous discrete-time SI: each step every infected node tries each
/// susceptible neighbor once; new infections take effect at step end.
SIOutcome simulate_si(const Graph &g, std::span<const node> seeds, const SIConfig &cfg,
                      const SimulationOptions &opts = {});

/// Mean final infected count with {v} as the only seed, for every node v.
std::vector<double> spreading_power(const Graph &g, const SIConfig &cfg,
                                    DrawMode draws = DrawMode::Stream);

struct InfectionCurve {
    std::string measure;
    SIOutcome outcome;
};

/// Seeds each ranking's top-k nodes together. By default every measure uses
/// the same run streams (common random numbers); set `per_measure_streams` to
/// mix the measure index into the seed instead.
std::vector<InfectionCurve>
top_k_infection_curves(const Graph &g, std::span<const std::pair<std::string, Ranking>> rankings,
                       std::size_t k, const SIConfig &cfg, bool per_measure_streams = false);

/// Hop eccentricity of a seed set: max over nodes of the distance to the
/// nearest seed. Returns kUnreachableHops when some node is unreachable.
std::uint32_t seed_set_eccentricity(const Graph &g, std::span<const node> seeds);

} // namespace effg
