#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "effg/cli.hpp"
#include "test_support.hpp"

namespace effg {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("effg_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        seven_ = write("seven.txt", testing::kSevenNodeEdgeList);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string &name, const std::string &text) {
        auto p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    static std::string read(const fs::path &p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    int run(std::vector<std::string> args) {
        args.insert(args.begin(), "effg");
        std::vector<const char *> argv;
        for (const auto &a : args)
            argv.push_back(a.c_str());
        out_.str("");
        err_.str("");
        return cli::run(static_cast<int>(argv.size()), argv.data(), out_, err_);
    }

    std::vector<std::vector<std::string>> csv(const fs::path &p) {
        std::vector<std::vector<std::string>> rows;
        std::istringstream in(read(p));
        std::string line;
        while (std::getline(in, line)) {
            std::vector<std::string> cells;
            std::stringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ','))
                cells.push_back(cell);
            rows.push_back(cells);
        }
        return rows;
    }

    fs::path dir_;
    std::string seven_;
    std::ostringstream out_, err_;
};

TEST_F(CliTest, StatsTriangle) {
    auto tri = write("tri.txt", "1 2\n1 5\n2 5\n");
    auto out = (dir_ / "stats").string();
    ASSERT_EQ(run({"stats", "--input", tri, "--out", out}), 0) << err_.str();
    auto rows = csv(fs::path(out) / "stats.csv");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0][0], "n");
    EXPECT_EQ(rows[1][0], "3");
    EXPECT_EQ(rows[1][1], "3");
    EXPECT_EQ(rows[1][5], "1");
    EXPECT_EQ(rows[1][6], "undefined");
    EXPECT_TRUE(fs::exists(fs::path(out) / "config.json"));
}

TEST_F(CliTest, StatsJson) {
    auto out = (dir_ / "stats").string();
    ASSERT_EQ(run({"stats", "-i", seven_, "-o", out, "--format", "json"}), 0);
    auto doc = nlohmann::json::parse(read(fs::path(out) / "stats.json"));
    EXPECT_EQ(doc[0]["n"], 7);
    EXPECT_EQ(doc[0]["m"], 10);
}

TEST_F(CliTest, MissingInputExitsTwoAndNamesPath) {
    const std::string missing = (dir_ / "absent.txt").string();
    EXPECT_EQ(run({"stats", "--input", missing, "--out", dir_.string()}), 2);
    EXPECT_NE(err_.str().find(missing), std::string::npos);
}

TEST_F(CliTest, MalformedInputExitsTwo) {
    auto bad = write("bad.txt", "1 2\n3\n");
    EXPECT_EQ(run({"stats", "--input", bad, "--out", dir_.string()}), 2);
    EXPECT_NE(err_.str().find("line 2"), std::string::npos);
}

TEST_F(CliTest, RankEffGMatchesWorkedExample) {
    auto out = (dir_ / "rank").string();
    ASSERT_EQ(run({"rank", "-i", seven_, "-o", out, "--measures", "effg,dc", "--distances"}), 0)
        << err_.str();
    auto effg = csv(fs::path(out) / "effg.csv");
    ASSERT_EQ(effg.size(), 8u);
    EXPECT_EQ(effg[0], (std::vector<std::string>{"node_label", "score", "rank"}));
    const double expected_scores[] = {6.5358, 5.9104, 5.9104, 6.0704, 6.2865, 5.5981};
    for (int i = 0; i < 6; ++i) {
        EXPECT_EQ(effg[i + 1][0], std::to_string(i + 1));
        EXPECT_NEAR(std::stod(effg[i + 1][1]), expected_scores[i], 1e-3);
    }
    auto dc = csv(fs::path(out) / "dc.csv");
    const char *degrees[] = {"6", "2", "2", "3", "4", "2", "1"};
    for (int i = 0; i < 7; ++i)
        EXPECT_EQ(dc[i + 1][1], degrees[i]);
    EXPECT_EQ(dc[1][2], "1");
    EXPECT_FALSE(fs::exists(fs::path(out) / "bc.csv"));
    auto ed = csv(fs::path(out) / "effective_distance.csv");
    EXPECT_EQ(ed[2][2], "inf");
}

TEST_F(CliTest, RankJsonHasAllMeasures) {
    auto out = (dir_ / "rank").string();
    ASSERT_EQ(run({"rank", "-i", seven_, "-o", out, "--format", "json"}), 0) << err_.str();
    auto doc = nlohmann::json::parse(read(fs::path(out) / "scores.json"));
    for (const char *m : {"dc", "bc", "cc", "ec", "pagerank", "gm", "effg"})
        ASSERT_TRUE(doc["measures"].contains(m)) << m;
    EXPECT_EQ(doc["measures"]["dc"]["ranking"][0], "1");
    EXPECT_EQ(doc["labels"].size(), 7u);
}

TEST_F(CliTest, RankUsageErrors) {
    EXPECT_EQ(run({"rank", "-i", seven_, "-o", dir_.string(), "--measures", ""}), 2);
    EXPECT_EQ(run({"rank", "-i", seven_, "-o", dir_.string(), "--measures", "kshell"}), 2);
    EXPECT_NE(err_.str().find("effg"), std::string::npos); // lists valid names
    EXPECT_EQ(run({"rank", "-i", seven_, "-o", dir_.string()}), 0);
    EXPECT_EQ(run({"bogus"}), 2);
    EXPECT_EQ(run({}), 2);
}

TEST_F(CliTest, NonConvergenceExitsOne) {
    auto pair = write("path.txt", "a b\nb c\n");
    EXPECT_EQ(run({"rank", "-i", pair, "-o", dir_.string(), "--measures", "pagerank"}), 1);
    EXPECT_NE(err_.str().find("damping"), std::string::npos);
    EXPECT_EQ(run({"rank", "-i", pair, "-o", dir_.string(), "--measures", "pagerank",
                   "--damping", "0.85"}),
              0);
}

TEST_F(CliTest, SpreadZeroBetaIsFlatAtK) {
    auto out = (dir_ / "spread").string();
    ASSERT_EQ(run({"spread", "-i", seven_, "-o", out, "--beta", "0", "--k", "3", "--t-max", "4"}),
              0)
        << err_.str();
    auto rows = csv(fs::path(out) / "spread.csv");
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0].size(), 8u);
    EXPECT_EQ(rows[0][1], "F_dc");
    for (std::size_t r = 1; r < rows.size(); ++r)
        for (std::size_t c = 1; c < rows[r].size(); ++c)
            EXPECT_EQ(rows[r][c], "3");
}

TEST_F(CliTest, SpreadIsReproducible) {
    auto a = (dir_ / "a").string();
    auto b = (dir_ / "b").string();
    ASSERT_EQ(run({"spread", "-i", seven_, "-o", a, "--k", "2", "--seed", "77"}), 0);
    ASSERT_EQ(run({"spread", "-i", seven_, "-o", b, "--k", "2", "--seed", "77"}), 0);
    EXPECT_EQ(read(fs::path(a) / "spread.csv"), read(fs::path(b) / "spread.csv"));
    auto cfg = nlohmann::json::parse(read(fs::path(a) / "config.json"));
    EXPECT_EQ(cfg["seed"], 77);
    EXPECT_EQ(cfg["beta"], 0.2);
    EXPECT_EQ(cfg["t_max"], 20);
    EXPECT_EQ(cfg["runs"], 50);
}

TEST_F(CliTest, SpreadKLargerThanGraph) {
    EXPECT_EQ(run({"spread", "-i", seven_, "-o", dir_.string()}), 2); // default k = 100 > 7
    EXPECT_EQ(run({"spread", "-i", seven_, "-o", dir_.string(), "--k", "7", "--beta", "1.5"}), 2);
}

TEST_F(CliTest, EvaluateWritesAllTables) {
    auto out = (dir_ / "eval").string();
    ASSERT_EQ(run({"evaluate", "-i", seven_, "-o", out, "--k", "3", "--runs", "20", "--beta-grid",
                   "0.02,0.04,0.06,0.08,0.10,0.12,0.14,0.16"}),
              0)
        << err_.str();
    auto tau = csv(fs::path(out) / "tau_sweep.csv");
    // 7 measures plus the ground-truth row, for each of 8 betas.
    EXPECT_EQ(tau.size(), 1u + 8u * 8u);
    // The ground truth against itself has no discordant pair; ties are
    // counted in neither class, so tau itself may fall short of 1.
    for (std::size_t r = 1; r < tau.size(); ++r)
        if (tau[r][0] == "si") {
            EXPECT_EQ(tau[r][4], "0");
            EXPECT_NE(tau[r][3], "0");
        }

    auto overlap = csv(fs::path(out) / "overlap.csv");
    EXPECT_EQ(overlap[0], (std::vector<std::string>{"measure_a", "measure_b", "k", "shared"}));
    EXPECT_EQ(overlap.size(), 1u + 7u); // effg vs 6 others + si
    auto top = csv(fs::path(out) / "top_k.csv");
    EXPECT_EQ(top.size(), 4u);
    for (const char *m : {"dc", "bc", "cc", "ec", "pagerank", "gm", "effg"})
        EXPECT_TRUE(fs::exists(fs::path(out) / (std::string("rank_vs_spread_") + m + ".csv")));
    auto cfg = nlohmann::json::parse(read(fs::path(out) / "config.json"));
    EXPECT_EQ(cfg["t_max"], 5);
    EXPECT_EQ(cfg["rank_t_max"], 20);
    EXPECT_EQ(cfg["resolved_beta_grid"].size(), 8u);
}

TEST_F(CliTest, EvaluateDefaultGridIsClampedWithWarning) {
    auto out = (dir_ / "eval").string();
    ASSERT_EQ(run({"evaluate", "-i", seven_, "-o", out, "--k", "3", "--runs", "5", "--measures",
                   "dc,effg", "--tau-convention", "ordered-pairs"}),
              0)
        << err_.str();
    EXPECT_NE(err_.str().find("clamped"), std::string::npos);
    auto cfg = nlohmann::json::parse(read(fs::path(out) / "config.json"));
    EXPECT_EQ(cfg["resolved_beta_grid"], nlohmann::json({0.2, 0.4, 0.6, 0.8, 1.0}));
    EXPECT_EQ(cfg["tau_convention"], "ordered-pairs");
    auto tau = csv(fs::path(out) / "tau_sweep.csv");
    EXPECT_EQ(tau.size(), 1u + 2u * 5u);
}

TEST_F(CliTest, BinaryExitCodes) {
    const std::string exe = EFFG_CLI_PATH;
    const std::string missing = (dir_ / "none.txt").string();
    int status = std::system((exe + " stats --input " + missing + " > /dev/null 2>&1").c_str());
    ASSERT_TRUE(WIFEXITED(status));
    EXPECT_EQ(WEXITSTATUS(status), 2);
    status = std::system((exe + " stats --input " + seven_ + " --out " + dir_.string() +
                          " > /dev/null 2>&1")
                             .c_str());
    EXPECT_EQ(WEXITSTATUS(status), 0);
}

} // namespace
} // namespace effg
