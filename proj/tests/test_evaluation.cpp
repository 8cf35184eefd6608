#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <Eigen/Geometry>

#include "imds/errors.hpp"
#include "imds/evaluation.hpp"

using namespace imds;

namespace {

AbsoluteMap exact_map(const NodeSet& nodes) {
    AbsoluteMap m;
    m.coords.resize(static_cast<Eigen::Index>(nodes.size()), 3);
    for (std::size_t i = 0; i < nodes.size(); ++i) m.coords.row(static_cast<Eigen::Index>(i)) = nodes.positions[i];
    return m;
}

std::vector<std::size_t> first(std::size_t k) {
    std::vector<std::size_t> ids(k);
    for (std::size_t i = 0; i < k; ++i) ids[i] = i;
    return ids;
}

}  // namespace

TEST(EstimationError, ExactIsZero) {
    const auto nodes = gen_random_cube(100, 100.0, 1);
    EXPECT_EQ(estimation_error(exact_map(nodes), nodes, make_anchors(nodes, first(10)), 35.0), 0.0);
}

TEST(EstimationError, OneNodeOffByRange) {
    const auto nodes = gen_random_cube(100, 100.0, 1);
    auto est = exact_map(nodes);
    const double R = 35.0;
    est.coords(50, 1) += R;
    EXPECT_NEAR(estimation_error(est, nodes, make_anchors(nodes, first(10)), R), 100.0 / 90.0, 1e-12);
}

TEST(EstimationError, AnchorsExcluded) {
    const auto nodes = gen_random_cube(40, 100.0, 2);
    const auto anchors = make_anchors(nodes, {3, 7, 11, 19});
    auto est = exact_map(nodes);
    est.coords(20, 0) += 4.0;
    const double base = estimation_error(est, nodes, anchors, 10.0);
    for (auto id : anchors.indices) est.coords.row(static_cast<Eigen::Index>(id)) += Eigen::RowVector3d(9, -9, 9);
    EXPECT_EQ(estimation_error(est, nodes, anchors, 10.0), base);
}

TEST(EstimationError, ScaleInvariant) {
    const auto nodes = gen_random_cube(30, 100.0, 3);
    auto est = exact_map(nodes);
    est.coords.array() += 1.5;
    auto big_nodes = nodes;
    for (auto& p : big_nodes.positions) p *= 2.0;
    AbsoluteMap big_est{est.coords * 2.0};
    const auto ids = first(5);
    EXPECT_NEAR(estimation_error(est, nodes, make_anchors(nodes, ids), 20.0),
                estimation_error(big_est, big_nodes, make_anchors(big_nodes, ids), 40.0), 1e-12);
}

TEST(EstimationError, RigidMotionInvariant) {
    const auto nodes = gen_random_cube(30, 100.0, 4);
    auto est = exact_map(nodes);
    Rng rng(4);
    for (Eigen::Index i = 0; i < est.coords.rows(); ++i)
        for (int a = 0; a < 3; ++a) est.coords(i, a) += rng.uniform(-3, 3);
    const Eigen::Matrix3d r = Eigen::Quaterniond(0.3, -0.5, 0.2, 0.7).normalized().toRotationMatrix();
    const Eigen::RowVector3d t(10, -4, 2);
    auto moved_nodes = nodes;
    for (auto& p : moved_nodes.positions) p = r * p + t.transpose();
    AbsoluteMap moved_est{((est.coords * r.transpose()).rowwise() + t).eval()};
    const auto ids = first(6);
    EXPECT_NEAR(estimation_error(est, nodes, make_anchors(nodes, ids), 25.0),
                estimation_error(moved_est, moved_nodes, make_anchors(moved_nodes, ids), 25.0), 1e-9);
}

TEST(EstimationError, AllAnchorsRejected) {
    const auto nodes = gen_random_cube(4, 1.0, 1);
    EXPECT_THROW(estimation_error(exact_map(nodes), nodes, make_anchors(nodes, first(4)), 1.0), ParameterError);
}

TEST(Summarize, MeanAndSampleStddev) {
    const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
    const auto s = summarize(v);
    EXPECT_EQ(s.count, 8u);
    EXPECT_DOUBLE_EQ(s.mean, 5.0);
    EXPECT_NEAR(s.stddev, std::sqrt(32.0 / 7.0), 1e-12);
    EXPECT_EQ(summarize(std::vector<double>{3.0}).stddev, 0.0);
}

TEST(Names, RoundTrip) {
    for (auto a : {Algorithm::mds_map, Algorithm::imds}) EXPECT_EQ(parse_algorithm(to_string(a)), a);
    for (auto k : {TopologyKind::random_cube, TopologyKind::grid, TopologyKind::valley, TopologyKind::mountain})
        EXPECT_EQ(parse_topology(to_string(k)), k);
    EXPECT_FALSE(parse_algorithm("isomap").has_value());
    EXPECT_FALSE(parse_topology("torus").has_value());
}
