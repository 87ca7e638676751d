#include "effg/effective_distance.hpp"

#include <queue>

#include <fmt/format.h>

namespace effg {

namespace {

// Fills `dist` with the weight-space distance sum(log2 k_u) over the best path,
// then shifts finite entries by one. The source entry ends up at infinity.
void dijkstra_into(const Graph &g, node source, std::span<double> dist,
                   std::span<const double> log_degree) {
    using entry = std::pair<double, node>;
    std::priority_queue<entry, std::vector<entry>, std::greater<>> heap;
    std::fill(dist.begin(), dist.end(), kUnreachableDistance);
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u])
            continue;
        const double next = d + log_degree[u];
        for (node v : g.neighbors(u)) {
            if (next < dist[v]) {
                dist[v] = next;
                heap.emplace(next, v);
            }
        }
    }
    for (double &d : dist)
        d += 1.0;
    dist[source] = kUnreachableDistance;
}

std::vector<double> log2_degrees(const Graph &g) {
    std::vector<double> w(g.num_nodes());
    for (node u = 0; u < g.num_nodes(); ++u) {
        const count k = g.degree(u);
        w[u] = k > 0 ? std::log2(static_cast<double>(k)) : 0.0;
    }
    return w;
}

} // namespace

TransitionRow transition_probabilities(const Graph &g, node m) {
    g.check(m);
    TransitionRow row{m, std::vector<double>(g.num_nodes(), 0.0), false};
    const count k = g.degree(m);
    if (k == 0) {
        row.isolated = true;
        return row;
    }
    const double p = 1.0 / static_cast<double>(k);
    for (node v : g.neighbors(m))
        row.prob[v] = p;
    return row;
}

EffectiveDistanceRow effective_distances(const Graph &g, node source) {
    g.check(source);
    EffectiveDistanceRow row{source, std::vector<double>(g.num_nodes())};
    const auto w = log2_degrees(g);
    dijkstra_into(g, source, row.dist, w);
    return row;
}

EffectiveDistanceMatrix effective_distance_matrix(const Graph &g) {
    if (g.empty())
        throw std::domain_error("effective_distance_matrix: graph has no nodes");
    const std::size_t n = g.num_nodes();
    EffectiveDistanceMatrix D(n);
    const auto w = log2_degrees(g);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s)
        dijkstra_into(g, static_cast<node>(s), D.row(static_cast<node>(s)), w);
    return D;
}

std::string effective_distance_csv(const Graph &g, const EffectiveDistanceMatrix &D) {
    if (D.size() != g.num_nodes())
        throw std::domain_error("effective_distance_csv: matrix size does not match graph");
    std::string out = "source";
    for (node v = 0; v < g.num_nodes(); ++v) {
        out += ',';
        out += g.label(v);
    }
    out += '\n';
    for (node u = 0; u < g.num_nodes(); ++u) {
        out += g.label(u);
        for (double d : D.row(u)) {
            out += ',';
            out += is_reachable(d) ? fmt::format("{:.10g}", d) : std::string("inf");
        }
        out += '\n';
    }
    return out;
}

} // namespace effg
