#include "effg/epidemics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "effg/rng.hpp"

namespace effg {

void SIConfig::validate() const {
    if (!(beta >= 0.0 && beta <= 1.0))
        throw std::domain_error(fmt::format("beta must be in [0, 1], got {}", beta));
    if (t_max < 0)
        throw std::domain_error(fmt::format("t_max must be >= 0, got {}", t_max));
    if (runs < 1)
        throw std::domain_error(fmt::format("runs must be >= 1, got {}", runs));
}

double SIOutcome::final_stddev() const {
    const std::size_t r = per_run_finals.size();
    if (r < 2)
        return 0.0;
    double ss = 0.0;
    for (count c : per_run_finals) {
        const double d = static_cast<double>(c) - final_mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(r - 1));
}

namespace {

enum : char { kSusceptible = 0, kInfected = 1, kPending = 2 };

class SingleRun {
public:
    SingleRun(const Graph &g, std::span<const node> seeds, double beta, DrawMode mode,
              std::uint64_t run_seed)
        : g_(g), beta_(beta), mode_(mode), run_seed_(run_seed), rng_(run_seed),
          state_(g.num_nodes(), kSusceptible) {
        for (node s : seeds) {
            state_[s] = kInfected;
            active_.push_back(s);
        }
        infected_ = active_.size();
    }

    count infected() const noexcept { return infected_; }

    void step(int t) {
        fresh_.clear();
        std::size_t keep = 0;
        for (std::size_t idx = 0; idx < active_.size(); ++idx) {
            const node u = active_[idx];
            bool exposed = false;
            for (node v : g_.neighbors(u)) {
                if (state_[v] != kSusceptible)
                    continue;
                if (draw(t, u, v) < beta_) {
                    state_[v] = kPending;
                    fresh_.push_back(v);
                } else {
                    exposed = true;
                }
            }
            // Nodes with no susceptible neighbor left can never transmit again.
            if (exposed)
                active_[keep++] = u;
        }
        active_.resize(keep);
        for (node v : fresh_) {
            state_[v] = kInfected;
            active_.push_back(v);
        }
        infected_ += fresh_.size();
    }

    bool saturated() const noexcept { return active_.empty(); }

private:
    double draw(int t, node u, node v) {
        if (mode_ == DrawMode::Stream)
            return rng_.uniform();
        return to_unit(derive_seed(run_seed_, static_cast<std::uint64_t>(t), u, v));
    }

    const Graph &g_;
    double beta_;
    DrawMode mode_;
    std::uint64_t run_seed_;
    Rng rng_;
    std::vector<char> state_;
    std::vector<node> active_;
    std::vector<node> fresh_;
    count infected_ = 0;
};

std::vector<node> unique_seeds(const Graph &g, std::span<const node> seeds) {
    if (seeds.empty())
        throw std::domain_error("simulate_si: seed set is empty");
    std::vector<node> out(seeds.begin(), seeds.end());
    for (node s : out)
        g.check(s);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

SIOutcome simulate_si(const Graph &g, std::span<const node> seeds, const SIConfig &cfg,
                      const SimulationOptions &opts) {
    cfg.validate();
    const auto seed_set = unique_seeds(g, seeds);
    const std::size_t steps = static_cast<std::size_t>(cfg.t_max) + 1;
    const std::size_t runs = static_cast<std::size_t>(cfg.runs);

    std::vector<std::vector<count>> curves(runs, std::vector<count>(steps));
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(runs); ++r) {
        SingleRun run(g, seed_set, cfg.beta, opts.draws,
                      derive_seed(cfg.seed, static_cast<std::uint64_t>(r), opts.stream));
        auto &curve = curves[r];
        curve[0] = run.infected();
        for (std::size_t t = 1; t < steps; ++t) {
            if (!run.saturated())
                run.step(static_cast<int>(t));
            curve[t] = run.infected();
        }
    }

    // Integer sums, so the mean is independent of run scheduling.
    SIOutcome out;
    out.f_curve.resize(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        count total = 0;
        for (const auto &curve : curves)
            total += curve[t];
        out.f_curve[t] = static_cast<double>(total) / static_cast<double>(runs);
    }
    out.final_mean = out.f_curve.back();
    out.per_run_finals.reserve(runs);
    for (const auto &curve : curves)
        out.per_run_finals.push_back(curve.back());
    if (opts.keep_run_curves)
        out.run_curves = std::move(curves);
    return out;
}

std::vector<double> spreading_power(const Graph &g, const SIConfig &cfg, DrawMode draws) {
    cfg.validate();
    const std::size_t n = g.num_nodes();
    std::vector<double> power(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v) {
        const node seed = static_cast<node>(v);
        SimulationOptions opts{draws, static_cast<std::uint64_t>(v), false};
        power[v] = simulate_si(g, std::span<const node>(&seed, 1), cfg, opts).final_mean;
    }
    return power;
}

std::vector<InfectionCurve>
top_k_infection_curves(const Graph &g, std::span<const std::pair<std::string, Ranking>> rankings,
                       std::size_t k, const SIConfig &cfg, bool per_measure_streams) {
    if (k > g.num_nodes())
        throw std::domain_error(
            fmt::format("top-k size {} exceeds node count {}", k, g.num_nodes()));
    if (k == 0)
        throw std::domain_error("top-k size must be at least 1");
    std::vector<InfectionCurve> out;
    out.reserve(rankings.size());
    for (std::size_t i = 0; i < rankings.size(); ++i) {
        const auto &[name, ranking] = rankings[i];
        if (ranking.size() != g.num_nodes())
            throw std::domain_error("ranking '" + name + "' does not cover the graph");
        SimulationOptions opts;
        opts.stream = per_measure_streams ? i + 1 : 0;
        out.push_back({name, simulate_si(g, ranking.top(k), cfg, opts)});
    }
    return out;
}

std::uint32_t seed_set_eccentricity(const Graph &g, std::span<const node> seeds) {
    const auto seed_set = unique_seeds(g, seeds);
    std::vector<std::uint32_t> dist(g.num_nodes(), kUnreachableHops);
    std::vector<node> queue;
    for (node s : seed_set) {
        dist[s] = 0;
        queue.push_back(s);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const node u = queue[head];
        for (node v : g.neighbors(u))
            if (dist[v] == kUnreachableHops) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
    }
    if (queue.size() < g.num_nodes())
        return kUnreachableHops;
    std::uint32_t ecc = 0;
    for (std::uint32_t d : dist)
        ecc = std::max(ecc, d);
    return ecc;
}

} // namespace effg
