#include "effg/cli.hpp"

#include <filesystem>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "effg/centrality.hpp"
#include "effg/effective_distance.hpp"
#include "effg/epidemics.hpp"
#include "effg/evaluation.hpp"
#include "effg/graph.hpp"

namespace effg::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kGroundTruth = "si";

std::string valid_measure_names(bool allow_si) {
    std::string names;
    for (Measure m : kAllMeasures) {
        if (!names.empty())
            names += ", ";
        names += measure_name(m);
    }
    if (allow_si)
        names += ", si";
    return names;
}

// Validates names and keeps first occurrences in order.
std::vector<std::string> resolve_measures(const std::vector<std::string> &requested,
                                          bool allow_si) {
    std::vector<std::string> out;
    for (const auto &name : requested) {
        if (name.empty())
            continue;
        const bool ok = parse_measure(name).has_value() || (allow_si && name == kGroundTruth);
        if (!ok)
            throw UsageError(fmt::format("unknown measure '{}'; valid names: {}", name,
                                         valid_measure_names(allow_si)));
        if (std::find(out.begin(), out.end(), name) == out.end())
            out.push_back(name);
    }
    if (out.empty())
        throw UsageError("no measures given; valid names: " + valid_measure_names(allow_si));
    return out;
}

Graph load(const ExperimentConfig &cfg, std::ostream &err) {
    if (cfg.input.empty())
        throw UsageError("--input is required");
    if (!fs::exists(cfg.input))
        throw UsageError("input file not found: " + cfg.input);
    ParseReport report;
    Graph g = read_edge_list_file(cfg.input, {}, &report);
    if (report.self_loops_dropped || report.duplicates_merged)
        err << fmt::format("note: {} self-loop(s) dropped, {} duplicate edge(s) merged\n",
                           report.self_loops_dropped, report.duplicates_merged);
    return g;
}

fs::path prepare_out_dir(const ExperimentConfig &cfg) {
    fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw UsageError("cannot create output directory '" + cfg.out_dir + "'");
    return dir;
}

void write_config(const fs::path &dir, const ExperimentConfig &cfg,
                  nlohmann::ordered_json extra = {}) {
    auto j = cfg.to_json();
    for (auto &[key, value] : extra.items())
        j[key] = value;
    write_text(dir / "config.json", j.dump(2) + "\n");
}

SIConfig si_config(const ExperimentConfig &cfg, double beta, int t_max) {
    SIConfig si{beta, t_max, cfg.runs, cfg.seed};
    try {
        si.validate();
    } catch (const std::domain_error &e) {
        throw UsageError(e.what());
    }
    return si;
}

MeasureOptions measure_options(const ExperimentConfig &cfg) {
    MeasureOptions opts;
    opts.damping = cfg.damping;
    if (!(cfg.damping > 0.0 && cfg.damping <= 1.0))
        throw UsageError(fmt::format("--damping must be in (0, 1], got {}", cfg.damping));
    return opts;
}

std::vector<ScoreVector> compute_scores(const Graph &g, const std::vector<std::string> &names,
                                        const ExperimentConfig &cfg) {
    const auto opts = measure_options(cfg);
    std::vector<ScoreVector> out;
    for (const auto &name : names)
        if (auto m = parse_measure(name))
            out.push_back(compute_measure(g, *m, opts));
    return out;
}

} // namespace

nlohmann::ordered_json ExperimentConfig::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["input"] = input;
    j["measures"] = measures;
    j["beta"] = beta;
    if (!beta_grid.empty())
        j["beta_grid"] = beta_grid;
    j["t_max"] = t_max;
    if (command == "evaluate")
        j["rank_t_max"] = rank_t_max;
    j["runs"] = runs;
    j["seed"] = seed;
    j["k"] = k;
    j["out"] = out_dir;
    j["format"] = format == OutputFormat::Csv ? "csv" : "json";
    j["tau_convention"] = std::string(convention_name(tau_convention));
    j["damping"] = damping;
    if (command == "evaluate")
        j["reference"] = reference;
    return j;
}

int cmd_stats(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err) {
    const Graph g = load(cfg, err);
    const auto dir = prepare_out_dir(cfg);
    const auto s = topology_stats(g);

    Table t{{"n", "m", "avg_degree", "avg_distance", "unreachable_fraction", "clustering",
             "assortativity"}};
    t.add({std::to_string(s.n), std::to_string(s.m), format_number(s.avg_degree),
           format_number(s.avg_distance), format_number(s.unreachable_fraction),
           format_number(s.clustering),
           s.assortativity ? format_number(*s.assortativity) : std::string("undefined")});
    const auto path = write_table(dir, "stats", t, cfg.format);
    write_config(dir, cfg);

    out << fmt::format("n={} m={} <k>={:.4f} <d>={:.4f} C={:.4f} r={}\n", s.n, s.m, s.avg_degree,
                       s.avg_distance, s.clustering,
                       s.assortativity ? fmt::format("{:.4f}", *s.assortativity) : "undefined");
    if (s.unreachable_fraction > 0)
        out << fmt::format("note: {:.4f} of ordered pairs are disconnected and excluded from <d>\n",
                           s.unreachable_fraction);
    out << "wrote " << path.string() << "\n";
    return kOk;
}

int cmd_rank(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err) {
    const auto names = resolve_measures(cfg.measures, false);
    const Graph g = load(cfg, err);
    const auto dir = prepare_out_dir(cfg);
    const auto opts = measure_options(cfg);

    std::optional<EffectiveDistanceMatrix> D;
    const bool wants_effg = std::find(names.begin(), names.end(), "effg") != names.end();
    if (cfg.dump_distances || wants_effg) {
        D = effective_distance_matrix(g);
        if (cfg.dump_distances)
            write_text(dir / "effective_distance.csv", effective_distance_csv(g, *D));
    }

    nlohmann::ordered_json combined;
    for (const auto &name : names) {
        const Measure m = *parse_measure(name);
        const auto scores = compute_measure(g, m, opts, D ? &*D : nullptr);
        const auto ranking = rank(scores);

        if (cfg.format == OutputFormat::Csv) {
            Table t{{"node_label", "score", "rank"}};
            for (node v = 0; v < g.num_nodes(); ++v)
                t.add({g.label(v), format_number(scores.scores[v]), std::to_string(ranking.rank[v])});
            write_table(dir, name, t, OutputFormat::Csv);
        } else {
            nlohmann::ordered_json entry;
            entry["scores"] = scores.scores;
            auto labels = nlohmann::ordered_json::array();
            for (node v : ranking.order)
                labels.push_back(g.label(v));
            entry["ranking"] = labels;
            if (scores.iterations)
                entry["iterations"] = *scores.iterations;
            if (scores.residual)
                entry["residual"] = *scores.residual;
            if (scores.eigenvalue)
                entry["eigenvalue"] = *scores.eigenvalue;
            combined[name] = std::move(entry);
        }

        std::string top;
        for (node v : ranking.top(10))
            top += (top.empty() ? "" : " ") + g.label(v);
        out << fmt::format("{:<9} top: {}\n", name, top);
    }
    if (cfg.format == OutputFormat::Json) {
        nlohmann::ordered_json doc;
        doc["labels"] = g.labels();
        doc["measures"] = std::move(combined);
        write_text(dir / "scores.json", doc.dump(2) + "\n");
    }
    write_config(dir, cfg);
    return kOk;
}

int cmd_spread(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err) {
    const auto names = resolve_measures(cfg.measures, false);
    const SIConfig si = si_config(cfg, cfg.beta, cfg.t_max);
    const Graph g = load(cfg, err);
    if (cfg.k == 0 || cfg.k > g.num_nodes())
        throw UsageError(
            fmt::format("--k must be in [1, n]; got {} for n = {}", cfg.k, g.num_nodes()));
    const auto dir = prepare_out_dir(cfg);

    std::vector<std::pair<std::string, Ranking>> rankings;
    for (const auto &s : compute_scores(g, names, cfg))
        rankings.emplace_back(s.measure, rank(s));
    const auto curves = top_k_infection_curves(g, rankings, cfg.k, si);

    Table t{{"t"}};
    for (const auto &c : curves)
        t.header.push_back("F_" + c.measure);
    for (int step = 0; step <= si.t_max; ++step) {
        std::vector<std::string> row{std::to_string(step)};
        for (const auto &c : curves)
            row.push_back(format_number(c.outcome.f_curve[step]));
        t.add(std::move(row));
    }
    const auto path = write_table(dir, "spread", t, cfg.format);
    write_config(dir, cfg);

    for (const auto &c : curves)
        out << fmt::format("{:<9} F({})={:.3f}\n", c.measure, si.t_max, c.outcome.final_mean);
    out << "wrote " << path.string() << "\n";
    return kOk;
}

int cmd_evaluate(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err) {
    const auto names = resolve_measures(cfg.measures, true);
    if (!parse_measure(cfg.reference) && cfg.reference != kGroundTruth)
        throw UsageError(fmt::format("unknown reference measure '{}'; valid names: {}",
                                     cfg.reference, valid_measure_names(true)));

    ClampedGrid grid;
    try {
        grid = clamp_beta_grid(cfg.beta_grid);
    } catch (const std::domain_error &e) {
        throw UsageError(e.what());
    }
    if (grid.betas.empty())
        throw UsageError("--beta-grid is empty");
    for (const auto &w : grid.warnings)
        err << "warning: " << w << "\n";
    const SIConfig sweep_cfg = si_config(cfg, grid.betas.front(), cfg.t_max);
    const SIConfig spread_cfg = si_config(cfg, cfg.beta, cfg.rank_t_max);

    const Graph g = load(cfg, err);
    if (cfg.k == 0 || cfg.k > g.num_nodes())
        throw UsageError(
            fmt::format("--k must be in [1, n]; got {} for n = {}", cfg.k, g.num_nodes()));
    const auto dir = prepare_out_dir(cfg);

    // Scores for every structural measure requested, plus the reference.
    auto structural = names;
    if (cfg.reference != kGroundTruth &&
        std::find(structural.begin(), structural.end(), cfg.reference) == structural.end())
        structural.push_back(cfg.reference);
    const auto scores = compute_scores(g, structural, cfg);
    const bool with_truth =
        std::find(names.begin(), names.end(), kGroundTruth) != names.end() ||
        cfg.reference == kGroundTruth;

    // Tau sweep over the requested measures only.
    std::vector<ScoreVector> swept;
    for (const auto &s : scores)
        if (std::find(names.begin(), names.end(), s.measure) != names.end())
            swept.push_back(s);
    const bool si_requested = std::find(names.begin(), names.end(), kGroundTruth) != names.end();
    const auto tau_rows =
        tau_vs_beta_sweep(g, swept, grid.betas, sweep_cfg, cfg.tau_convention, si_requested);
    Table tau{{"measure", "beta", "tau", "concordant", "discordant", "pairs", "degenerate"}};
    for (const auto &r : tau_rows)
        tau.add({r.measure, format_number(r.beta), format_number(r.comparison.tau),
                 std::to_string(r.comparison.concordant), std::to_string(r.comparison.discordant),
                 std::to_string(r.comparison.pairs_total), r.degenerate ? "true" : "false"});
    write_table(dir, "tau_sweep", tau, cfg.format);

    // Single-seed spreading power at the ranking horizon serves the overlap,
    // top-k and rank-vs-spread tables.
    const auto power = spreading_power(g, spread_cfg);
    std::vector<std::pair<std::string, Ranking>> rankings;
    for (const auto &s : scores)
        rankings.emplace_back(s.measure, rank(s));
    if (with_truth)
        rankings.emplace_back(std::string(kGroundTruth), rank(std::span<const double>(power)));
    auto find_ranking = [&](const std::string &name) -> const Ranking & {
        for (const auto &[n, r] : rankings)
            if (n == name)
                return r;
        throw std::logic_error("missing ranking " + name);
    };

    const Ranking &reference = find_ranking(cfg.reference);
    Table overlap{{"measure_a", "measure_b", "k", "shared"}};
    for (const auto &name : names) {
        if (name == cfg.reference)
            continue;
        const auto rep = top_k_overlap(reference, find_ranking(name), cfg.k);
        overlap.add({cfg.reference, name, std::to_string(rep.k), std::to_string(rep.shared)});
    }
    write_table(dir, "overlap", overlap, cfg.format);

    std::vector<std::string> listed = names;
    if (std::find(listed.begin(), listed.end(), cfg.reference) == listed.end())
        listed.insert(listed.begin(), cfg.reference);
    Table top{{"rank"}};
    for (const auto &name : listed)
        top.header.push_back(name);
    for (std::size_t pos = 0; pos < cfg.k; ++pos) {
        std::vector<std::string> row{std::to_string(pos + 1)};
        for (const auto &name : listed)
            row.push_back(g.label(find_ranking(name).order[pos]));
        top.add(std::move(row));
    }
    write_table(dir, "top_k", top, cfg.format);

    for (const auto &name : names) {
        if (name == kGroundTruth)
            continue;
        Table t{{"rank", "node_label", "mean_final"}};
        for (const auto &r : rank_vs_spread(find_ranking(name), power))
            t.add({std::to_string(r.rank), g.label(r.id), format_number(r.mean_final)});
        write_table(dir, "rank_vs_spread_" + name, t, cfg.format);
    }

    nlohmann::ordered_json extra;
    extra["resolved_beta_grid"] = grid.betas;
    if (!grid.warnings.empty())
        extra["warnings"] = grid.warnings;
    write_config(dir, cfg, extra);

    for (const auto &row : overlap.rows)
        out << fmt::format("overlap {} vs {} (k={}): {}\n", row[0], row[1], row[2], row[3]);
    out << fmt::format("wrote {} tau rows to {}\n", tau.rows.size(), dir.string());
    return kOk;
}

namespace {

struct Bound {
    ExperimentConfig cfg;
    std::string format = "csv";
    std::string tau = "standard";
    bool measures_set = false;
};

void add_common(CLI::App *app, Bound &b, bool si_params, bool measures) {
    app->add_option("--input,-i", b.cfg.input, "Edge-list file")->required();
    app->add_option("--out,-o", b.cfg.out_dir, "Output directory")->capture_default_str();
    app->add_option("--format", b.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    if (measures)
        app->add_option("--measures,-m", b.cfg.measures, "Comma-separated measure names")
            ->delimiter(',')
            ->expected(0, -1)
            ->capture_default_str();
    app->add_option("--damping", b.cfg.damping, "PageRank damping in (0, 1]")
        ->capture_default_str();
    if (si_params) {
        app->add_option("--beta", b.cfg.beta, "SI transmission probability")->capture_default_str();
        app->add_option("--t-max", b.cfg.t_max, "SI steps")->capture_default_str();
        app->add_option("--runs", b.cfg.runs, "SI ensemble size")->capture_default_str();
        app->add_option("--seed", b.cfg.seed, "Master RNG seed")->capture_default_str();
        app->add_option("--k", b.cfg.k, "Top-k size")->capture_default_str();
    }
}

std::vector<std::string> all_measure_names() {
    std::vector<std::string> v;
    for (Measure m : kAllMeasures)
        v.emplace_back(measure_name(m));
    return v;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Influential-node ranking with the effective-distance gravity model"};
    app.require_subcommand(1);

    Bound stats, rank_b, spread, evaluate;
    stats.cfg.command = "stats";
    rank_b.cfg.command = "rank";
    rank_b.cfg.measures = all_measure_names();
    spread.cfg.command = "spread";
    spread.cfg.measures = all_measure_names();
    evaluate.cfg.command = "evaluate";
    evaluate.cfg.measures = all_measure_names();
    evaluate.cfg.measures.emplace_back(kGroundTruth);
    evaluate.cfg.t_max = 5;
    evaluate.cfg.k = 20;
    evaluate.cfg.beta_grid = {0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6};

    auto *stats_cmd = app.add_subcommand("stats", "Topology statistics of a network");
    add_common(stats_cmd, stats, false, false);

    auto *rank_cmd = app.add_subcommand("rank", "Centrality scores and rankings");
    add_common(rank_cmd, rank_b, false, true);
    rank_cmd->add_flag("--distances", rank_b.cfg.dump_distances,
                       "Also write effective_distance.csv");

    auto *spread_cmd = app.add_subcommand("spread", "SI curves seeded by each measure's top-k");
    add_common(spread_cmd, spread, true, true);

    auto *eval_cmd =
        app.add_subcommand("evaluate", "Kendall tau sweep, top-k overlap and rank-vs-spread");
    add_common(eval_cmd, evaluate, true, true);
    eval_cmd->add_option("--beta-grid", evaluate.cfg.beta_grid, "Comma-separated betas for the sweep")
        ->delimiter(',')
        ->capture_default_str();
    eval_cmd->add_option("--rank-t-max", evaluate.cfg.rank_t_max,
                         "SI steps for rank-vs-spread and the SI ranking")
        ->capture_default_str();
    eval_cmd->add_option("--tau-convention", evaluate.tau, "standard or ordered-pairs")
        ->check(CLI::IsMember({"standard", "ordered-pairs"}))
        ->capture_default_str();
    eval_cmd->add_option("--reference", evaluate.cfg.reference,
                         "Measure the overlap table compares against")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    Bound *chosen = nullptr;
    int (*command)(const ExperimentConfig &, std::ostream &, std::ostream &) = nullptr;
    if (stats_cmd->parsed()) {
        chosen = &stats;
        command = cmd_stats;
    } else if (rank_cmd->parsed()) {
        chosen = &rank_b;
        command = cmd_rank;
    } else if (spread_cmd->parsed()) {
        chosen = &spread;
        command = cmd_spread;
    } else {
        chosen = &evaluate;
        command = cmd_evaluate;
    }
    chosen->cfg.format = chosen->format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    chosen->cfg.tau_convention = *parse_convention(chosen->tau);

    try {
        return command(chosen->cfg, out, err);
    } catch (const ConvergenceError &e) {
        err << "error: " << e.what() << "\n";
        return kComputationError;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ParseError &e) {
        err << "error: " << chosen->cfg.input << ": " << e.what() << "\n";
        return kUsageError;
    } catch (const std::ios_base::failure &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kComputationError;
    }
}

} // namespace effg::cli
