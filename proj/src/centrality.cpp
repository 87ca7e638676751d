#include "effg/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace effg {

namespace {

// Per-source floating-point contributions are summed in fixed blocks and the
// blocks combined in index order, so results do not depend on thread count.
constexpr std::size_t kReductionBlocks = 64;

template <class PerSource>
std::vector<double> block_reduce(std::size_t n, PerSource &&per_source) {
    const std::size_t blocks = std::min<std::size_t>(kReductionBlocks, std::max<std::size_t>(n, 1));
    std::vector<std::vector<double>> partial(blocks, std::vector<double>(n, 0.0));
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
        const std::size_t lo = n * b / blocks;
        const std::size_t hi = n * (b + 1) / blocks;
        per_source(lo, hi, partial[b]);
    }
    std::vector<double> total(n, 0.0);
    for (const auto &p : partial)
        for (std::size_t i = 0; i < n; ++i)
            total[i] += p[i];
    return total;
}

} // namespace

std::string_view measure_name(Measure m) {
    switch (m) {
    case Measure::Degree:
        return "dc";
    case Measure::Betweenness:
        return "bc";
    case Measure::Closeness:
        return "cc";
    case Measure::Eigenvector:
        return "ec";
    case Measure::PageRank:
        return "pagerank";
    case Measure::Gravity:
        return "gm";
    case Measure::EffG:
        return "effg";
    }
    return "?";
}

std::optional<Measure> parse_measure(std::string_view name) {
    for (Measure m : kAllMeasures)
        if (measure_name(m) == name)
            return m;
    return std::nullopt;
}

ScoreVector degree_centrality(const Graph &g) {
    ScoreVector out{std::string(measure_name(Measure::Degree)), std::vector<double>(g.num_nodes())};
    for (node u = 0; u < g.num_nodes(); ++u)
        out.scores[u] = static_cast<double>(g.degree(u));
    return out;
}

ScoreVector betweenness_centrality(const Graph &g) {
    const std::size_t n = g.num_nodes();
    ScoreVector out{std::string(measure_name(Measure::Betweenness))};
    out.scores = block_reduce(n, [&](std::size_t lo, std::size_t hi, std::vector<double> &acc) {
        std::vector<std::uint32_t> dist(n);
        std::vector<double> sigma(n);
        std::vector<double> delta(n);
        std::vector<node> order;
        order.reserve(n);
        for (std::size_t s = lo; s < hi; ++s) {
            bfs_into(g, static_cast<node>(s), dist, order);
            std::fill(sigma.begin(), sigma.end(), 0.0);
            std::fill(delta.begin(), delta.end(), 0.0);
            sigma[s] = 1.0;
            for (node u : order)
                for (node v : g.neighbors(u))
                    if (dist[v] == dist[u] + 1)
                        sigma[v] += sigma[u];
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                const node w = *it;
                for (node v : g.neighbors(w))
                    if (dist[v] + 1 == dist[w])
                        delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                if (w != s)
                    acc[w] += delta[w];
            }
        }
    });
    // Each unordered pair was counted from both endpoints.
    for (double &x : out.scores)
        x *= 0.5;
    return out;
}

ScoreVector closeness_centrality(const Graph &g) {
    const std::size_t n = g.num_nodes();
    ScoreVector out{std::string(measure_name(Measure::Closeness)), std::vector<double>(n, 0.0)};
#pragma omp parallel
    {
        std::vector<std::uint32_t> dist(n);
        std::vector<node> queue;
        queue.reserve(n);
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) {
            bfs_into(g, static_cast<node>(s), dist, queue);
            count total = 0;
            for (node v : queue)
                total += dist[v];
            out.scores[s] = total > 0 ? 1.0 / static_cast<double>(total) : 0.0;
        }
    }
    return out;
}

ScoreVector eigenvector_centrality(const Graph &g, IterationOptions opts) {
    const std::size_t n = g.num_nodes();
    if (g.num_edges() == 0)
        throw std::domain_error("eigenvector_centrality: graph has no edges");
    ScoreVector out{std::string(measure_name(Measure::Eigenvector))};

    auto multiply = [&](const std::vector<double> &x, std::vector<double> &y) {
        for (node u = 0; u < n; ++u) {
            double s = 0.0;
            for (node v : g.neighbors(u))
                s += x[v];
            y[u] = s;
        }
    };
    auto normalize = [](std::vector<double> &x) {
        const double norm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
        for (double &v : x)
            v /= norm;
    };

    std::vector<double> x(n, 1.0), ax(n);
    normalize(x);
    double lambda = 0.0;
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= opts.max_iter; ++it) {
        multiply(x, ax);
        // Shifted step x <- (A + I) x.
        for (std::size_t i = 0; i < n; ++i)
            x[i] += ax[i];
        normalize(x);

        multiply(x, ax);
        lambda = std::inner_product(x.begin(), x.end(), ax.begin(), 0.0);
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = ax[i] - lambda * x[i];
            r2 += d * d;
        }
        residual = std::sqrt(r2);
        if (residual <= opts.tol) {
            out.scores = std::move(x);
            out.iterations = it;
            out.residual = residual;
            out.eigenvalue = lambda;
            return out;
        }
    }
    throw ConvergenceError(
        fmt::format("eigenvector centrality did not converge in {} iterations (residual {:.3e})",
                    opts.max_iter, residual),
        opts.max_iter, residual);
}

ScoreVector pagerank(const Graph &g, IterationOptions opts, double damping) {
    if (!(damping > 0.0 && damping <= 1.0))
        throw std::domain_error("pagerank: damping must be in (0, 1]");
    const std::size_t n = g.num_nodes();
    ScoreVector out{std::string(measure_name(Measure::PageRank)), std::vector<double>(n, 0.0)};

    std::size_t active = 0;
    for (node u = 0; u < n; ++u)
        active += g.degree(u) > 0;
    if (active == 0) {
        out.iterations = 0;
        out.residual = 0.0;
        return out;
    }

    const double uniform = 1.0 / static_cast<double>(active);
    const double teleport = (1.0 - damping) * uniform;
    std::vector<double> x(n, 0.0), share(n, 0.0), next(n, 0.0);
    for (node u = 0; u < n; ++u)
        if (g.degree(u) > 0)
            x[u] = uniform;

    double change = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= opts.max_iter; ++it) {
        for (node u = 0; u < n; ++u) {
            const count k = g.degree(u);
            share[u] = k > 0 ? x[u] / static_cast<double>(k) : 0.0;
        }
        change = 0.0;
        for (node u = 0; u < n; ++u) {
            if (g.degree(u) == 0)
                continue;
            double s = 0.0;
            for (node v : g.neighbors(u))
                s += share[v];
            next[u] = teleport + damping * s;
            change += std::abs(next[u] - x[u]);
        }
        std::swap(x, next);
        if (change <= opts.tol) {
            out.scores = std::move(x);
            out.iterations = it;
            out.residual = change;
            return out;
        }
    }
    throw ConvergenceError(
        fmt::format("pagerank did not converge in {} iterations (L1 change {:.3e}); the walk may "
                    "be periodic (bipartite graph), try damping < 1",
                    opts.max_iter, change),
        opts.max_iter, change);
}

ScoreVector gravity_centrality(const Graph &g) {
    const std::size_t n = g.num_nodes();
    ScoreVector out{std::string(measure_name(Measure::Gravity)), std::vector<double>(n, 0.0)};
#pragma omp parallel
    {
        std::vector<std::uint32_t> dist(n);
        std::vector<node> queue;
        queue.reserve(n);
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t s_ = 0; s_ < static_cast<std::int64_t>(n); ++s_) {
            const node s = static_cast<node>(s_);
            bfs_into(g, s, dist, queue);
            const double ks = static_cast<double>(g.degree(s));
            double total = 0.0;
            for (node j = 0; j < n; ++j) {
                if (j == s || dist[j] == kUnreachableHops)
                    continue;
                const double d = dist[j];
                total += ks * static_cast<double>(g.degree(j)) / (d * d);
            }
            out.scores[s] = total;
        }
    }
    return out;
}

namespace {

double effg_row_sum(const Graph &g, node i, std::span<const double> row) {
    const double ki = static_cast<double>(g.degree(i));
    double total = 0.0;
    for (node j = 0; j < row.size(); ++j) {
        if (j == i || !is_reachable(row[j]))
            continue;
        total += ki * static_cast<double>(g.degree(j)) / (row[j] * row[j]);
    }
    return total;
}

} // namespace

ScoreVector effg_centrality(const Graph &g, const EffectiveDistanceMatrix &D) {
    if (D.size() != g.num_nodes())
        throw std::domain_error(fmt::format(
            "effg_centrality: distance matrix is {}x{} but the graph has {} nodes", D.size(),
            D.size(), g.num_nodes()));
    ScoreVector out{std::string(measure_name(Measure::EffG)), std::vector<double>(g.num_nodes())};
    for (node i = 0; i < g.num_nodes(); ++i)
        out.scores[i] = effg_row_sum(g, i, D.row(i));
    return out;
}

ScoreVector effg_centrality(const Graph &g) {
    const std::size_t n = g.num_nodes();
    ScoreVector out{std::string(measure_name(Measure::EffG)), std::vector<double>(n)};
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        auto row = effective_distances(g, static_cast<node>(i));
        out.scores[i] = effg_row_sum(g, static_cast<node>(i), row.dist);
    }
    return out;
}

ScoreVector compute_measure(const Graph &g, Measure m, const MeasureOptions &opts,
                            const EffectiveDistanceMatrix *D) {
    switch (m) {
    case Measure::Degree:
        return degree_centrality(g);
    case Measure::Betweenness:
        return betweenness_centrality(g);
    case Measure::Closeness:
        return closeness_centrality(g);
    case Measure::Eigenvector:
        return eigenvector_centrality(g, opts.iteration);
    case Measure::PageRank:
        return pagerank(g, opts.iteration, opts.damping);
    case Measure::Gravity:
        return gravity_centrality(g);
    case Measure::EffG:
        return D ? effg_centrality(g, *D) : effg_centrality(g);
    }
    throw std::invalid_argument("unknown measure");
}

Ranking rank(std::span<const double> scores) {
    Ranking r;
    r.order.resize(scores.size());
    std::iota(r.order.begin(), r.order.end(), node{0});
    std::stable_sort(r.order.begin(), r.order.end(),
                     [&](node a, node b) { return scores[a] > scores[b]; });
    r.rank.resize(scores.size());
    for (std::size_t pos = 0; pos < r.order.size(); ++pos)
        r.rank[r.order[pos]] = pos + 1;
    return r;
}

Ranking rank(const ScoreVector &scores) { return rank(std::span<const double>(scores.scores)); }

} // namespace effg
