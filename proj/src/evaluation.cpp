#include "effg/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace effg {

std::string_view convention_name(TauConvention c) {
    return c == TauConvention::OrderedPairs ? "ordered-pairs" : "standard";
}

std::optional<TauConvention> parse_convention(std::string_view name) {
    if (name == "ordered-pairs")
        return TauConvention::OrderedPairs;
    if (name == "standard")
        return TauConvention::Standard;
    return std::nullopt;
}

namespace {

// Pairs inside runs of equal keys, in a sequence already sorted by that key.
template <class Equal>
std::uint64_t tied_pairs(std::span<const std::uint32_t> order, Equal &&equal) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && equal(order[i], order[j]))
            ++j;
        const std::uint64_t run = j - i;
        total += run * (run - 1) / 2;
        i = j;
    }
    return total;
}

// Merge sort by y over `order`, counting pairs that end up swapped with
// strictly greater y first.
std::uint64_t count_inversions(std::vector<std::uint32_t> &order, std::span<const double> y) {
    std::vector<std::uint32_t> buffer(order.size());
    std::uint64_t swaps = 0;
    for (std::size_t width = 1; width < order.size(); width *= 2) {
        for (std::size_t lo = 0; lo < order.size(); lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, order.size());
            const std::size_t hi = std::min(lo + 2 * width, order.size());
            std::size_t a = lo, b = mid, out = lo;
            while (a < mid && b < hi) {
                if (y[order[b]] < y[order[a]]) {
                    swaps += mid - a;
                    buffer[out++] = order[b++];
                } else {
                    buffer[out++] = order[a++];
                }
            }
            while (a < mid)
                buffer[out++] = order[a++];
            while (b < hi)
                buffer[out++] = order[b++];
        }
        std::swap(order, buffer);
    }
    return swaps;
}

} // namespace

RankComparison kendall_tau(std::span<const double> x, std::span<const double> y,
                           TauConvention convention) {
    if (x.size() != y.size())
        throw std::domain_error(
            fmt::format("kendall_tau: length mismatch ({} vs {})", x.size(), y.size()));
    if (x.size() < 2)
        throw std::domain_error("kendall_tau: need at least two observations");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::isnan(x[i]) || std::isnan(y[i]))
            throw std::domain_error("kendall_tau: NaN in input");

    const std::uint64_t n = x.size();
    const std::uint64_t pairs = n * (n - 1) / 2;

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
        return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
    });
    const std::uint64_t tied_x = tied_pairs(order, [&](auto a, auto b) { return x[a] == x[b]; });
    const std::uint64_t tied_xy =
        tied_pairs(order, [&](auto a, auto b) { return x[a] == x[b] && y[a] == y[b]; });
    const std::uint64_t discordant = count_inversions(order, y);
    // `order` is now sorted by y.
    const std::uint64_t tied_y = tied_pairs(order, [&](auto a, auto b) { return y[a] == y[b]; });
    const std::uint64_t concordant = pairs - tied_x - tied_y + tied_xy - discordant;

    RankComparison out;
    out.concordant = concordant;
    out.discordant = discordant;
    out.pairs_total = pairs;
    out.convention = convention;
    const double numerator = static_cast<double>(concordant) - static_cast<double>(discordant);
    const double denominator = convention == TauConvention::OrderedPairs
                                   ? static_cast<double>(n) * static_cast<double>(n - 1)
                                   : static_cast<double>(pairs);
    out.tau = numerator / denominator;
    return out;
}

OverlapReport top_k_overlap(const Ranking &a, const Ranking &b, std::size_t k) {
    if (a.size() != b.size())
        throw std::domain_error(fmt::format(
            "top_k_overlap: rankings cover different node sets ({} vs {} nodes)", a.size(),
            b.size()));
    if (k > a.size())
        throw std::domain_error(
            fmt::format("top_k_overlap: k = {} exceeds node count {}", k, a.size()));
    std::vector<char> in_a(a.size(), 0);
    for (node v : a.top(k))
        in_a[v] = 1;
    std::size_t shared = 0;
    for (node v : b.top(k))
        shared += in_a[v];
    return {k, shared};
}

std::vector<TauRow> tau_vs_beta_sweep(const Graph &g, std::span<const ScoreVector> measures,
                                      std::span<const double> betas, const SIConfig &cfg,
                                      TauConvention convention, bool truth_row) {
    for (const auto &m : measures)
        if (m.size() != g.num_nodes())
            throw std::domain_error("tau_vs_beta_sweep: score vector '" + m.measure +
                                    "' does not match the graph");
    std::vector<TauRow> rows;
    rows.reserve(betas.size() * measures.size());
    for (double beta : betas) {
        SIConfig at = cfg;
        at.beta = beta;
        const auto truth = spreading_power(g, at);
        const bool constant =
            std::adjacent_find(truth.begin(), truth.end(), std::not_equal_to<>()) == truth.end();
        for (const auto &m : measures) {
            TauRow row{m.measure, beta, kendall_tau(m.scores, truth, convention), constant};
            rows.push_back(std::move(row));
        }
        if (truth_row)
            rows.push_back({"si", beta, kendall_tau(truth, truth, convention), constant});
    }
    return rows;
}

std::vector<SpreadRow> rank_vs_spread(const Ranking &ranking, std::span<const double> power) {
    if (power.size() != ranking.size())
        throw std::domain_error("rank_vs_spread: spreading power does not match the ranking");
    std::vector<SpreadRow> rows;
    rows.reserve(ranking.size());
    for (std::size_t pos = 0; pos < ranking.size(); ++pos) {
        const node v = ranking.order[pos];
        rows.push_back({pos + 1, v, power[v]});
    }
    return rows;
}

std::vector<SpreadRow> rank_vs_spread(const Graph &g, const Ranking &ranking, const SIConfig &cfg) {
    if (ranking.size() != g.num_nodes())
        throw std::domain_error("rank_vs_spread: ranking does not match the graph");
    return rank_vs_spread(ranking, spreading_power(g, cfg));
}

ClampedGrid clamp_beta_grid(std::span<const double> betas) {
    ClampedGrid out;
    for (double b : betas) {
        if (!(b >= 0.0))
            throw std::domain_error(fmt::format("beta must be non-negative, got {}", b));
        if (b > 1.0) {
            out.warnings.push_back(fmt::format("beta {} is not a probability; clamped to 1", b));
            b = 1.0;
        }
        if (std::find(out.betas.begin(), out.betas.end(), b) == out.betas.end())
            out.betas.push_back(b);
    }
    return out;
}

} // namespace effg
