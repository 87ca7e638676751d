#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "effg/graph.hpp"

namespace effg {

/// Unreachable targets and the diagonal carry +infinity.
inline constexpr double kUnreachableDistance = std::numeric_limits<double>::infinity();

inline bool is_reachable(double d) noexcept { return std::isfinite(d); }

/// One step of the unbiased random walk out of `source`: P(source->j) = 1/k_source
/// for each neighbor j, zero elsewhere.
struct TransitionRow {
    node source = 0;
    std::vector<double> prob;
    bool isolated = false;
};

TransitionRow transition_probabilities(const Graph &g, node m);

/// D(source -> j) = min over paths of 1 - log2(product of P along the path).
struct EffectiveDistanceRow {
    node source = 0;
    std::vector<double> dist;
};

/// Dijkstra over arc weights log2(k_u), plus one on every finite result.
EffectiveDistanceRow effective_distances(const Graph &g, node source);

/// Dense all-pairs matrix, row-major by source. Asymmetric in general.
class EffectiveDistanceMatrix {
public:
    EffectiveDistanceMatrix() = default;
    explicit EffectiveDistanceMatrix(std::size_t n)
        : n_(n), data_(n * n, kUnreachableDistance) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(node from, node to) const { return data_[from * n_ + to]; }
    double &operator()(node from, node to) { return data_[from * n_ + to]; }

    std::span<const double> row(node from) const { return {data_.data() + from * n_, n_}; }
    std::span<double> row(node from) { return {data_.data() + from * n_, n_}; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// All rows, computed independently (in parallel when OpenMP is available).
EffectiveDistanceMatrix effective_distance_matrix(const Graph &g);

/// CSV with a header of target labels and one row per source; "inf" for the sentinel.
std::string effective_distance_csv(const Graph &g, const EffectiveDistanceMatrix &D);

} // namespace effg
