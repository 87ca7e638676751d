#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "effg/effective_distance.hpp"
#include "effg/graph.hpp"

namespace effg {

enum class Measure { Degree, Betweenness, Closeness, Eigenvector, PageRank, Gravity, EffG };

inline constexpr Measure kAllMeasures[] = {Measure::Degree,      Measure::Betweenness,
                                           Measure::Closeness,   Measure::Eigenvector,
                                           Measure::PageRank,    Measure::Gravity,
                                           Measure::EffG};

/// Short CLI name: dc, bc, cc, ec, pagerank, gm, effg.
std::string_view measure_name(Measure m);
std::optional<Measure> parse_measure(std::string_view name);

struct ScoreVector {
    std::string measure;
    std::vector<double> scores;
    // Iterative measures only.
    std::optional<int> iterations;
    std::optional<double> residual;
    std::optional<double> eigenvalue;

    std::size_t size() const noexcept { return scores.size(); }
};

/// Nodes sorted by descending score, ties by ascending node index.
struct Ranking {
    std::vector<node> order;
    /// 1-based rank per node index.
    std::vector<std::size_t> rank;

    std::size_t size() const noexcept { return order.size(); }
    std::span<const node> top(std::size_t k) const {
        return {order.data(), std::min(k, order.size())};
    }
};

/// Thrown by the iterative measures when the residual stays above tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string &what, int iterations, double residual)
        : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

struct IterationOptions {
    double tol = 1e-10;
    int max_iter = 1000;
};

ScoreVector degree_centrality(const Graph &g);

/// Unordered-pair betweenness: sum over {s,t}, s != v != t, of sigma_st(v)/sigma_st.
ScoreVector betweenness_centrality(const Graph &g);

/// 1 / sum of hop distances to reachable peers; 0 without peers.
ScoreVector closeness_centrality(const Graph &g);

/// Principal adjacency eigenvector, unit length, nonnegative. The iteration
/// runs on A + I so bipartite graphs converge too; the reported eigenvalue is
/// the Rayleigh quotient of A.
ScoreVector eigenvector_centrality(const Graph &g, IterationOptions opts = {});

/// PC^q(i) = sum_j a_ij PC^{q-1}(j) / k_j from the uniform vector. With
/// damping < 1 the teleport term (1 - damping) / n' is added, where n' counts
/// non-isolated nodes. Isolated nodes score 0.
ScoreVector pagerank(const Graph &g, IterationOptions opts = {}, double damping = 1.0);

/// C(i) = sum over reachable j != i of k_i k_j / d_ij^2 with hop distance d.
ScoreVector gravity_centrality(const Graph &g);

/// C_EffG(i) = sum over j != i with finite D(i->j) of k_i k_j / D(i->j)^2.
ScoreVector effg_centrality(const Graph &g, const EffectiveDistanceMatrix &D);
/// Streams the effective-distance rows without storing the matrix.
ScoreVector effg_centrality(const Graph &g);

struct MeasureOptions {
    IterationOptions iteration;
    double damping = 1.0;
};

ScoreVector compute_measure(const Graph &g, Measure m, const MeasureOptions &opts = {},
                            const EffectiveDistanceMatrix *D = nullptr);

Ranking rank(const ScoreVector &scores);
Ranking rank(std::span<const double> scores);

} // namespace effg
