#include <gtest/gtest.h>

#include <numeric>

#include "effg/effective_distance.hpp"
#include "test_support.hpp"

namespace effg {
namespace {

using testing::seven_node_graph;

node id(const Graph &g, const char *label) { return *g.find(label); }

TEST(TransitionProbabilities, SevenNodeNode2) {
    auto g = seven_node_graph();
    auto row = transition_probabilities(g, id(g, "2"));
    EXPECT_FALSE(row.isolated);
    EXPECT_DOUBLE_EQ(row.prob[id(g, "1")], 0.5);
    EXPECT_DOUBLE_EQ(row.prob[id(g, "5")], 0.5);
    EXPECT_DOUBLE_EQ(row.prob[id(g, "2")], 0.0);
    EXPECT_DOUBLE_EQ(row.prob[id(g, "3")], 0.0);
}

TEST(TransitionProbabilities, DegreeOneNode) {
    auto g = seven_node_graph();
    auto row = transition_probabilities(g, id(g, "7"));
    EXPECT_DOUBLE_EQ(row.prob[id(g, "1")], 1.0);
    EXPECT_DOUBLE_EQ(std::accumulate(row.prob.begin(), row.prob.end(), 0.0), 1.0);
}

TEST(TransitionProbabilities, RowsSumToOne) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = testing::random_graph(rng, 20, 0.2, true);
        for (node u = 0; u < g.num_nodes(); ++u) {
            auto row = transition_probabilities(g, u);
            EXPECT_NEAR(std::accumulate(row.prob.begin(), row.prob.end(), 0.0), 1.0, 1e-12);
            EXPECT_EQ(row.prob[u], 0.0);
        }
    }
}

TEST(TransitionProbabilities, IsolatedNodeFlagged) {
    auto g = testing::make_graph(3, {{0, 1}});
    auto row = transition_probabilities(g, 2);
    EXPECT_TRUE(row.isolated);
    EXPECT_EQ(std::accumulate(row.prob.begin(), row.prob.end(), 0.0), 0.0);
}

TEST(EffectiveDistances, WorkedExample) {
    auto g = seven_node_graph();
    auto from2 = effective_distances(g, id(g, "2"));
    auto from7 = effective_distances(g, id(g, "7"));
    // 1 - log2(1/2 * 1/6) and 1 - log2(1 * 1/6)
    EXPECT_NEAR(from2.dist[id(g, "7")], 1.0 + std::log2(12.0), 1e-12);
    EXPECT_NEAR(from7.dist[id(g, "2")], 1.0 + std::log2(6.0), 1e-12);
    EXPECT_NEAR(from2.dist[id(g, "7")], 4.5850, 1e-4);
    EXPECT_NEAR(from7.dist[id(g, "2")], 3.5850, 1e-4);
}

TEST(EffectiveDistances, SevenNodeRowForNode2) {
    auto g = seven_node_graph();
    auto row = effective_distances(g, id(g, "2"));
    const double expected[] = {2.0000, 0.0, 4.0000, 4.0000, 2.0000, 4.5850, 4.5850};
    for (node j = 0; j < 7; ++j) {
        if (j == id(g, "2"))
            EXPECT_FALSE(is_reachable(row.dist[j]));
        else
            EXPECT_NEAR(row.dist[j], expected[j], 1e-4) << "target " << g.label(j);
    }
}

TEST(EffectiveDistances, DegreeOneSourceToNeighbor) {
    auto g = testing::path_graph(2);
    auto D = effective_distance_matrix(g);
    EXPECT_DOUBLE_EQ(D(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(D(1, 0), 1.0);
    EXPECT_FALSE(is_reachable(D(0, 0)));
}

TEST(EffectiveDistances, IsolatedSourceRowIsSentinel) {
    auto g = testing::make_graph(3, {{0, 1}});
    auto row = effective_distances(g, 2);
    for (double d : row.dist)
        EXPECT_FALSE(is_reachable(d));
    EXPECT_FALSE(is_reachable(effective_distances(g, 0).dist[2]));
}

TEST(EffectiveDistances, CycleIsOnePlusHops) {
    for (std::size_t n : {3u, 5u, 8u, 11u}) {
        auto g = testing::cycle_graph(n);
        auto D = effective_distance_matrix(g);
        for (node i = 0; i < n; ++i) {
            auto hops = hop_distances(g, i);
            for (node j = 0; j < n; ++j)
                if (i != j)
                    EXPECT_NEAR(D(i, j), 1.0 + hops.dist[j], 1e-12);
        }
    }
}

TEST(EffectiveDistances, RegularGraphScalesWithLogDegree) {
    // K_{3,3} is 3-regular: D = 1 + h log2 3.
    auto g = testing::make_graph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5},
                                     {2, 3}, {2, 4}, {2, 5}});
    auto D = effective_distance_matrix(g);
    for (node i = 0; i < 6; ++i) {
        auto hops = hop_distances(g, i);
        for (node j = 0; j < 6; ++j)
            if (i != j)
                EXPECT_NEAR(D(i, j), 1.0 + hops.dist[j] * std::log2(3.0), 1e-12);
    }
}

TEST(EffectiveDistances, MatchesSimplePathEnumeration) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        std::uniform_int_distribution<std::size_t> size(2, 8);
        std::uniform_real_distribution<double> density(0.1, 0.9);
        auto g = testing::random_graph(rng, size(rng), density(rng), trial % 3 != 0);
        auto D = effective_distance_matrix(g);
        for (node s = 0; s < g.num_nodes(); ++s) {
            auto oracle = testing::brute_force_effective_distances(g, s);
            for (node t = 0; t < g.num_nodes(); ++t) {
                if (!is_reachable(oracle[t])) {
                    EXPECT_FALSE(is_reachable(D(s, t)));
                    continue;
                }
                ASSERT_NEAR(D(s, t), oracle[t], 1e-9) << "trial " << trial << " " << s << "->" << t;
                // First hop costs at least log2 k_s.
                EXPECT_GE(D(s, t), 1.0 + std::log2(static_cast<double>(g.degree(s))) - 1e-12);
            }
        }
    }
}

TEST(EffectiveDistances, SingleRowAgreesWithMatrix) {
    std::mt19937_64 rng(8);
    auto g = testing::random_graph(rng, 40, 0.1, true);
    auto D = effective_distance_matrix(g);
    for (node s = 0; s < g.num_nodes(); s += 7) {
        auto row = effective_distances(g, s);
        for (node t = 0; t < g.num_nodes(); ++t)
            EXPECT_EQ(row.dist[t], D(s, t));
    }
}

TEST(EffectiveDistances, CsvUsesInfForSentinel) {
    auto g = parse_edge_list(std::string_view("a b\n"));
    auto csv = effective_distance_csv(g, effective_distance_matrix(g));
    EXPECT_EQ(csv, "source,a,b\na,inf,1\nb,1,inf\n");
}

} // namespace
} // namespace effg
