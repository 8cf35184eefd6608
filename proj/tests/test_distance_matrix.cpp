#include <gtest/gtest.h>

#include <cmath>

#include "imds/distance_matrix.hpp"
#include "imds/errors.hpp"
#include "support.hpp"

using namespace imds;
using imds::testing::dyadic_graph;
using imds::testing::floyd_warshall;
using imds::testing::share;

TEST(Dijkstra, TwoHopPath) {
    const RangeGraph g(3, 1.0, {{0, 1, 1.0}, {1, 2, 1.0}});
    EXPECT_EQ(dijkstra_all_pairs(g)(0, 2), 2.0);
}

TEST(Dijkstra, DirectEdgeBeatsDetour) {
    const RangeGraph g(3, 2.0, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.5}});
    EXPECT_EQ(dijkstra_all_pairs(g)(0, 2), 1.5);
}

TEST(Dijkstra, MatrixShape) {
    const auto g = dyadic_graph(40, 0.1, 3);
    const auto d = dijkstra_all_pairs(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_EQ(d(i, i), 0.0);
        for (std::size_t j = 0; j < g.size(); ++j) {
            EXPECT_EQ(d(i, j), d(j, i));
            if (i != j) EXPECT_GT(d(i, j), 0.0);
        }
    }
}

TEST(Dijkstra, MatchesFloydWarshallExactly) {
    for (Seed s = 0; s < 30; ++s) {
        const std::size_t n = 10 + s % 41;  // 10..50
        const auto g = dyadic_graph(n, 0.08, s);
        const auto d = dijkstra_all_pairs(g);
        const auto oracle = floyd_warshall(g);
        ASSERT_TRUE(d.values == oracle) << "seed " << s;
    }
}

TEST(Dijkstra, DisconnectedIsInternalError) {
    const RangeGraph g(3, 1.0, {{0, 1, 1.0}});
    EXPECT_THROW(dijkstra_all_pairs(g), Error);
}

TEST(HaCombine, EquilateralCase) {
    EXPECT_NEAR(ha_combine(1.0, 1.0, 1.0), std::sqrt(3.0), 1e-12 * std::sqrt(3.0));
    EXPECT_NEAR(ha_combine(35.0, 35.0, 35.0), std::sqrt(3.0) * 35.0, 1e-12 * 35.0 * std::sqrt(3.0));
}

TEST(HaCombine, RightAngleCase) {
    const double expected = std::sqrt(25.0 + 12.0 * std::sqrt(2.0));
    EXPECT_NEAR(ha_combine(3.0, 4.0, 5.0), expected, 1e-12 * expected);
    EXPECT_NEAR(expected, 6.47847, 1e-5);
}

TEST(HaCombine, ClampedToZeroAngle) {
    EXPECT_NEAR(ha_combine(10.0, 1.0, 1.0), std::sqrt(101.0), 1e-12 * std::sqrt(101.0));
}

TEST(HaCombine, ClampedToStraightAngle) {
    // (d1 + d2) <= R puts the cosine below -1; the half angle is then a right angle.
    EXPECT_NEAR(ha_combine(1.0, 2.0, 5.0), 3.0, 1e-12);
}

TEST(HaCombine, BoundsAndSymmetry) {
    Rng rng(17);
    for (int k = 0; k < 20000; ++k) {
        const double R = rng.uniform(0.1, 50.0);
        const double d1 = rng.uniform(1e-3, 3.0 * R);
        const double d2 = rng.uniform(1e-3, 3.0 * R);
        const double a = ha_combine(d1, d2, R);
        ASSERT_LE(a, d1 + d2);
        ASSERT_EQ(a, ha_combine(d2, d1, R));
        const double c = (d1 * d1 + d2 * d2 - R * R) / (2.0 * d1 * d2);
        if (c > -1.0 && c < 1.0) ASSERT_GT(a, R);
    }
}

TEST(HaCombine, RejectsNonPositive) {
    EXPECT_THROW(ha_combine(0.0, 1.0, 1.0), ParameterError);
    EXPECT_THROW(ha_combine(1.0, -1.0, 1.0), ParameterError);
    EXPECT_THROW(ha_combine(1.0, 1.0, 0.0), ParameterError);
}

TEST(HaAllPairs, DirectNeighborPassesThrough) {
    const RangeGraph g(2, 10.0, {{0, 1, 5.0}});
    EXPECT_EQ(ha_all_pairs(g, 10.0)(0, 1), 5.0);
}

TEST(HaAllPairs, ThreeNodeChain) {
    const double R = 20.0;
    const RangeGraph g(3, R, {{0, 1, R}, {1, 2, R}});
    const auto ha = ha_all_pairs(g, R);
    EXPECT_NEAR(ha(0, 2), std::sqrt(3.0) * R, 1e-12 * R);
    EXPECT_EQ(dijkstra_all_pairs(g)(0, 2), 2.0 * R);
}

TEST(HaAllPairs, NeverLongerThanDijkstra) {
    for (Seed s = 0; s < 30; ++s) {
        const auto nodes = share(gen_random_cube(50, 100.0, 500 + s));
        RangeGraph g = [&] {
            for (double R = 40.0;; R += 5.0) {
                try {
                    return build_graph(nodes, R, NoiseModel{0.1 * (s % 4)}, s);
                } catch (const DisconnectedError&) {
                }
            }
        }();
        const auto dij = dijkstra_all_pairs(g);
        const auto ha = ha_all_pairs(g, g.radio_range());
        ASSERT_TRUE((ha.values.array() <= dij.values.array()).all()) << "seed " << s;
    }
}

TEST(HaAllPairs, DirectEntriesEqualMeasurementsWithoutNoise) {
    const auto nodes = share(gen_random_cube(80, 100.0, 31));
    const auto g = build_graph(nodes, 40.0, NoiseModel{0.0}, 31);
    const auto dij = dijkstra_all_pairs(g);
    const auto ha = ha_all_pairs(g, 40.0);
    for (const auto& e : g.edges()) {
        EXPECT_NEAR(dij(e.i, e.j), e.measured, 1e-12 * e.measured);
        EXPECT_NEAR(ha(e.i, e.j), e.measured, 1e-12 * e.measured);
    }
}

TEST(MatrixError, ExactMatrixIsZero) {
    const auto nodes = gen_random_cube(30, 100.0, 2);
    EXPECT_NEAR(matrix_error(imds::testing::euclidean(nodes), nodes, 10.0), 0.0, 1e-15);
}

TEST(MatrixError, SinglePairOffByRange) {
    const auto nodes = imds::testing::points({{0, 0, 0}, {3, 4, 0}});
    DistanceMatrix d{Eigen::MatrixXd::Zero(2, 2)};
    d.values(0, 1) = d.values(1, 0) = 5.0 + 7.0;
    EXPECT_DOUBLE_EQ(matrix_error(d, nodes, 7.0), 1.0);
}

TEST(MatrixError, SizeMismatch) {
    const auto nodes = gen_random_cube(5, 1.0, 2);
    EXPECT_THROW(matrix_error(DistanceMatrix{Eigen::MatrixXd::Zero(4, 4)}, nodes, 1.0), ParameterError);
}
