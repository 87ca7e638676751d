#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace effg {

/// Dense node index in [0, n). Labels from the input file are kept separately.
using node = std::uint32_t;
using count = std::uint64_t;

/// Marks a node that cannot be reached from the BFS source.
inline constexpr std::uint32_t kUnreachableHops = std::numeric_limits<std::uint32_t>::max();

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    /// 1-based line number, or 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct ParseOptions {
    /// A line whose first non-blank character is one of these is skipped.
    std::string comment_chars = "#%";
    /// Accept lines with more than two tokens and use the first two (weighted lists).
    bool ignore_extra_columns = false;
};

struct ParseReport {
    count lines_read = 0;
    count self_loops_dropped = 0;
    count duplicates_merged = 0;
};

/// Immutable undirected simple graph in compressed adjacency form.
class Graph {
public:
    Graph() = default;

    /// Builds from index pairs. Loops are dropped and duplicates merged; the
    /// counts are added to `report` when given.
    static Graph from_edges(std::vector<std::string> labels,
                            std::span<const std::pair<node, node>> edges,
                            ParseReport *report = nullptr);

    std::size_t num_nodes() const noexcept { return labels_.size(); }
    std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }
    bool empty() const noexcept { return labels_.empty(); }

    /// Sorted neighbor indices of `u`.
    std::span<const node> neighbors(node u) const {
        check(u);
        return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
    }

    count degree(node u) const {
        check(u);
        return offsets_[u + 1] - offsets_[u];
    }

    /// a_uv membership test, O(log k_u).
    bool has_edge(node u, node v) const;

    const std::string &label(node u) const {
        check(u);
        return labels_[u];
    }
    const std::vector<std::string> &labels() const noexcept { return labels_; }
    std::optional<node> find(std::string_view label) const;

    /// Throws std::out_of_range when `u` is not a node of this graph.
    void check(node u) const {
        if (u >= labels_.size())
            throw std::out_of_range("node index " + std::to_string(u) + " out of range (n=" +
                                    std::to_string(labels_.size()) + ")");
    }

private:
    std::vector<std::size_t> offsets_{0};
    std::vector<node> adjacency_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, node> index_;
};

/// Parses a whitespace- or comma-separated edge list. Nodes are indexed in
/// order of first appearance.
Graph parse_edge_list(std::istream &in, const ParseOptions &options = {},
                      ParseReport *report = nullptr);
Graph parse_edge_list(std::string_view text, const ParseOptions &options = {},
                      ParseReport *report = nullptr);
Graph read_edge_list_file(const std::string &path, const ParseOptions &options = {},
                          ParseReport *report = nullptr);

/// One edge per line, "min max" by label order (integers numerically, then
/// lexicographic), lines sorted.
std::string serialize_edge_list(const Graph &g);

/// Ordering used for serialization: integer labels first by value, the rest
/// lexicographically.
bool label_less(std::string_view a, std::string_view b);

/// DC(i) = k_i. Throws std::out_of_range for bad indices.
count degree(const Graph &g, node i);

struct HopDistanceRow {
    node source = 0;
    std::vector<std::uint32_t> dist;

    bool reachable(node v) const { return dist[v] != kUnreachableHops; }
};

HopDistanceRow hop_distances(const Graph &g, node source);

/// BFS into caller-owned buffers; `dist` must have size n. Used by the
/// all-pairs loops to avoid reallocations.
void bfs_into(const Graph &g, node source, std::vector<std::uint32_t> &dist,
              std::vector<node> &queue);

struct TopologyStats {
    std::size_t n = 0;
    std::size_t m = 0;
    double avg_degree = 0.0;
    /// Mean hop distance over ordered reachable pairs; 0 when there are none.
    double avg_distance = 0.0;
    /// Fraction of ordered pairs i != j skipped because they are disconnected.
    double unreachable_fraction = 0.0;
    double clustering = 0.0;
    /// Degree assortativity; empty when the endpoint degree variance is zero.
    std::optional<double> assortativity;
};

TopologyStats topology_stats(const Graph &g);

} // namespace effg
