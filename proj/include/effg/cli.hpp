#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "effg/evaluation.hpp"
#include "effg/table.hpp"

namespace effg::cli {

enum ExitCode : int { kOk = 0, kComputationError = 1, kUsageError = 2 };

/// Raised for bad arguments, unknown measures and out-of-range parameters.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fully resolved parameters of one invocation. Written next to the outputs
/// as config.json.
struct ExperimentConfig {
    std::string command;
    std::string input;
    std::vector<std::string> measures;
    double beta = 0.2;
    std::vector<double> beta_grid;
    int t_max = 20;
    /// evaluate only: horizon for rank-vs-spread and the SI ranking.
    int rank_t_max = 20;
    int runs = 50;
    std::uint64_t seed = 1;
    std::size_t k = 100;
    std::string out_dir = ".";
    OutputFormat format = OutputFormat::Csv;
    TauConvention tau_convention = TauConvention::Standard;
    double damping = 1.0;
    /// evaluate only: measure the overlap table is computed against.
    std::string reference = "effg";
    /// rank only: also dump the effective-distance matrix.
    bool dump_distances = false;

    nlohmann::ordered_json to_json() const;
};

int cmd_stats(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_rank(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_spread(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_evaluate(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err);

/// Parses argv, dispatches, maps exceptions to exit codes. Diagnostics go to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace effg::cli
