#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "effg/centrality.hpp"
#include "effg/epidemics.hpp"

namespace effg {

enum class TauConvention {
    /// (n+ - n-) / (N (N - 1)); bounded by 0.5 in absolute value.
    OrderedPairs,
    /// (n+ - n-) / (N (N - 1) / 2), Kendall's tau-a.
    Standard,
};

std::string_view convention_name(TauConvention c);
std::optional<TauConvention> parse_convention(std::string_view name);

struct RankComparison {
    double tau = 0.0;
    std::uint64_t concordant = 0;
    std::uint64_t discordant = 0;
    std::uint64_t pairs_total = 0;
    TauConvention convention = TauConvention::Standard;
};

/// Ties in either sequence count as neither concordant nor discordant, but
/// stay in the denominator. O(N log N).
RankComparison kendall_tau(std::span<const double> x, std::span<const double> y,
                           TauConvention convention = TauConvention::Standard);

struct OverlapReport {
    std::size_t k = 0;
    std::size_t shared = 0;
};

OverlapReport top_k_overlap(const Ranking &a, const Ranking &b, std::size_t k);

struct TauRow {
    std::string measure;
    double beta = 0.0;
    RankComparison comparison;
    /// Ground truth is constant at this beta, so every pair is tied.
    bool degenerate = false;
};

/// For each beta, ground truth = spreading_power(beta); tau of every score
/// vector against it. Rows are ordered by beta, then by measure. With
/// `truth_row`, an extra "si" row compares the ground truth with itself.
std::vector<TauRow> tau_vs_beta_sweep(const Graph &g, std::span<const ScoreVector> measures,
                                      std::span<const double> betas, const SIConfig &cfg,
                                      TauConvention convention = TauConvention::Standard,
                                      bool truth_row = false);

struct SpreadRow {
    std::size_t rank = 0;
    node id = 0;
    double mean_final = 0.0;
};

/// Single-seed mean final infected count, listed in ranking order.
std::vector<SpreadRow> rank_vs_spread(const Graph &g, const Ranking &ranking, const SIConfig &cfg);
/// Same, reusing a precomputed spreading-power vector.
std::vector<SpreadRow> rank_vs_spread(const Ranking &ranking, std::span<const double> power);

struct ClampedGrid {
    std::vector<double> betas;
    std::vector<std::string> warnings;
};

/// Clamps values above 1 to 1 (with a warning each), rejects negatives and
/// drops repeats produced by clamping, keeping first-occurrence order.
ClampedGrid clamp_beta_grid(std::span<const double> betas);

} // namespace effg
