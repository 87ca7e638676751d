#include "effg/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace effg {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
    while (i < line.size()) {
        while (i < line.size() && is_sep(line[i]))
            ++i;
        std::size_t start = i;
        while (i < line.size() && !is_sep(line[i]))
            ++i;
        if (i > start)
            tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

std::optional<long long> as_integer(std::string_view s) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return value;
}

} // namespace

Graph Graph::from_edges(std::vector<std::string> labels,
                        std::span<const std::pair<node, node>> edges, ParseReport *report) {
    Graph g;
    const std::size_t n = labels.size();
    g.labels_ = std::move(labels);
    g.index_.reserve(n);
    for (node i = 0; i < n; ++i) {
        if (!g.index_.emplace(g.labels_[i], i).second)
            throw std::invalid_argument("duplicate node label '" + g.labels_[i] + "'");
    }

    std::vector<std::pair<node, node>> arcs;
    arcs.reserve(2 * edges.size());
    count loops = 0;
    for (auto [u, v] : edges) {
        g.check(u);
        g.check(v);
        if (u == v) {
            ++loops;
            continue;
        }
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    const std::size_t before = arcs.size();
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : arcs)
        ++g.offsets_[u + 1];
    for (std::size_t i = 0; i < n; ++i)
        g.offsets_[i + 1] += g.offsets_[i];
    g.adjacency_.reserve(arcs.size());
    for (auto [u, v] : arcs)
        g.adjacency_.push_back(v);

    if (report) {
        report->self_loops_dropped += loops;
        report->duplicates_merged += (before - arcs.size()) / 2;
    }
    return g;
}

bool Graph::has_edge(node u, node v) const {
    auto nb = neighbors(u);
    check(v);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<node> Graph::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Graph parse_edge_list(std::istream &in, const ParseOptions &options, ParseReport *report) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, node> index;
    std::vector<std::pair<node, node>> edges;
    ParseReport local;

    auto intern = [&](std::string_view token) {
        auto [it, inserted] = index.try_emplace(std::string(token), static_cast<node>(labels.size()));
        if (inserted)
            labels.emplace_back(token);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        ++local.lines_read;
        auto tokens = split_tokens(line);
        if (tokens.empty())
            continue;
        if (options.comment_chars.find(tokens.front().front()) != std::string::npos)
            continue;
        if (tokens.size() < 2 || (tokens.size() > 2 && !options.ignore_extra_columns))
            throw ParseError(line_no, "expected exactly two node labels, got " +
                                          std::to_string(tokens.size()) + " token(s)");
        node u = intern(tokens[0]);
        node v = intern(tokens[1]);
        edges.emplace_back(u, v);
    }
    if (in.bad())
        throw ParseError(0, "read error");
    if (labels.empty())
        throw ParseError(0, "empty graph: no edges in input");

    Graph g = Graph::from_edges(std::move(labels), edges, &local);
    if (report)
        *report = local;
    return g;
}

Graph parse_edge_list(std::string_view text, const ParseOptions &options, ParseReport *report) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in, options, report);
}

Graph read_edge_list_file(const std::string &path, const ParseOptions &options,
                          ParseReport *report) {
    std::ifstream in(path);
    if (!in)
        throw std::ios_base::failure("cannot open input file '" + path + "'");
    return parse_edge_list(in, options, report);
}

bool label_less(std::string_view a, std::string_view b) {
    auto ia = as_integer(a);
    auto ib = as_integer(b);
    if (ia && ib)
        return *ia != *ib ? *ia < *ib : a < b;
    if (ia || ib)
        return ia.has_value();
    return a < b;
}

std::string serialize_edge_list(const Graph &g) {
    std::vector<std::pair<const std::string *, const std::string *>> rows;
    rows.reserve(g.num_edges());
    for (node u = 0; u < g.num_nodes(); ++u) {
        for (node v : g.neighbors(u)) {
            if (u >= v)
                continue;
            const std::string *a = &g.label(u);
            const std::string *b = &g.label(v);
            if (label_less(*b, *a))
                std::swap(a, b);
            rows.emplace_back(a, b);
        }
    }
    std::sort(rows.begin(), rows.end(), [](const auto &x, const auto &y) {
        if (*x.first != *y.first)
            return label_less(*x.first, *y.first);
        return label_less(*x.second, *y.second);
    });
    std::string out;
    for (auto [a, b] : rows) {
        out += *a;
        out += ' ';
        out += *b;
        out += '\n';
    }
    return out;
}

count degree(const Graph &g, node i) { return g.degree(i); }

void bfs_into(const Graph &g, node source, std::vector<std::uint32_t> &dist,
              std::vector<node> &queue) {
    std::fill(dist.begin(), dist.end(), kUnreachableHops);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        node u = queue[head];
        for (node v : g.neighbors(u)) {
            if (dist[v] == kUnreachableHops) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
}

HopDistanceRow hop_distances(const Graph &g, node source) {
    g.check(source);
    HopDistanceRow row{source, std::vector<std::uint32_t>(g.num_nodes())};
    std::vector<node> queue;
    queue.reserve(g.num_nodes());
    bfs_into(g, source, row.dist, queue);
    return row;
}

TopologyStats topology_stats(const Graph &g) {
    if (g.empty())
        throw std::domain_error("topology_stats: graph has no nodes");
    const std::size_t n = g.num_nodes();
    TopologyStats s;
    s.n = n;
    s.m = g.num_edges();
    s.avg_degree = 2.0 * static_cast<double>(s.m) / static_cast<double>(n);

    // Hop sums per source are integers, so the reduction is exact and order-free.
    count dist_sum = 0;
    count reachable_pairs = 0;
#pragma omp parallel reduction(+ : dist_sum, reachable_pairs)
    {
        std::vector<std::uint32_t> dist(n);
        std::vector<node> queue;
        queue.reserve(n);
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t s_ = 0; s_ < static_cast<std::int64_t>(n); ++s_) {
            bfs_into(g, static_cast<node>(s_), dist, queue);
            for (node v : queue) {
                dist_sum += dist[v];
            }
            reachable_pairs += queue.size() - 1;
        }
    }
    const double ordered_pairs = static_cast<double>(n) * static_cast<double>(n - 1);
    if (reachable_pairs > 0)
        s.avg_distance = static_cast<double>(dist_sum) / static_cast<double>(reachable_pairs);
    if (ordered_pairs > 0)
        s.unreachable_fraction = 1.0 - static_cast<double>(reachable_pairs) / ordered_pairs;

    // Local clustering averaged over all nodes; degree < 2 contributes 0.
    double clustering_sum = 0.0;
    std::vector<char> mark(n, 0);
    for (node u = 0; u < n; ++u) {
        auto nb = g.neighbors(u);
        const count k = nb.size();
        if (k < 2)
            continue;
        for (node v : nb)
            mark[v] = 1;
        count links = 0;
        for (node v : nb)
            for (node w : g.neighbors(v))
                if (w > v && mark[w])
                    ++links;
        for (node v : nb)
            mark[v] = 0;
        clustering_sum += 2.0 * static_cast<double>(links) / (static_cast<double>(k) * (k - 1));
    }
    s.clustering = clustering_sum / static_cast<double>(n);

    // Pearson correlation of endpoint degrees over both orientations of each edge.
    if (s.m > 0) {
        double sum_xy = 0.0, sum_x = 0.0, sum_x2 = 0.0;
        for (node u = 0; u < n; ++u) {
            const double ku = static_cast<double>(g.degree(u));
            for (node v : g.neighbors(u)) {
                const double kv = static_cast<double>(g.degree(v));
                sum_xy += ku * kv;
                sum_x += ku;
                sum_x2 += ku * ku;
            }
        }
        const double arcs = 2.0 * static_cast<double>(s.m);
        const double mean = sum_x / arcs;
        const double var = sum_x2 / arcs - mean * mean;
        const double cov = sum_xy / arcs - mean * mean;
        if (var > 1e-12 * std::max(1.0, mean * mean))
            s.assortativity = std::clamp(cov / var, -1.0, 1.0);
    }
    return s;
}

} // namespace effg
