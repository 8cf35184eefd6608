#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "imds/errors.hpp"
#include "imds/harness.hpp"

using namespace imds;

namespace {

SweepConfig tiny() {
    SweepConfig cfg;
    cfg.topologies = {TopologyKind::random_cube};
    cfg.anchor_counts = {10};
    cfg.radio_ranges = {35.0};
    cfg.range_errors = {0.1};
    cfg.trials = 2;
    return cfg;
}

std::string csv(const ResultTable& t) {
    std::ostringstream out;
    write_csv(t, out);
    return out.str();
}

bool close(double a, double b, double rel) {
    if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST(Sweep, RowCountSmall) {
    EXPECT_EQ(run_sweep(tiny()).rows.size(), 4u);
}

TEST(Sweep, DefaultMatrixSize) {
    const SweepConfig cfg;
    EXPECT_EQ(cfg.point_count(), 280u);
    EXPECT_EQ(cfg.point_count() * cfg.trials * cfg.algorithms.size(), 16800u);
    EXPECT_EQ(expand(cfg).size(), 280u);
}

TEST(Sweep, CanonicalOrder) {
    auto cfg = tiny();
    cfg.anchor_counts = {4, 10};
    cfg.range_errors = {0.0, 0.2};
    const auto rows = run_sweep(cfg).rows;
    ASSERT_EQ(rows.size(), 2u * 2u * 2u * 2u);
    std::size_t k = 0;
    for (std::size_t a : {4u, 10u})
        for (double e : {0.0, 0.2})
            for (std::size_t t = 0; t < 2; ++t)
                for (auto algo : {Algorithm::mds_map, Algorithm::imds}) {
                    EXPECT_EQ(rows[k].num_anchors, a);
                    EXPECT_EQ(rows[k].range_error, e);
                    EXPECT_EQ(rows[k].trial, t);
                    EXPECT_EQ(rows[k].algorithm, algo);
                    ++k;
                }
}

TEST(Sweep, RepeatableBytes) {
    const auto cfg = tiny();
    EXPECT_EQ(csv(run_sweep(cfg)), csv(run_sweep(cfg)));
}

TEST(Sweep, JobCountDoesNotChangeOutput) {
    auto cfg = tiny();
    cfg.topologies = {TopologyKind::random_cube, TopologyKind::grid};
    cfg.radio_ranges = {35.0, 45.0};
    cfg.trials = 3;
    const auto serial = csv(run_sweep(cfg));
    cfg.jobs = 4;
    EXPECT_EQ(csv(run_sweep(cfg)), serial);
}

TEST(Trial, RepeatableAndPaired) {
    const auto cfg = tiny();
    const auto point = expand(cfg).front();
    const auto a = run_trial(cfg, point, 0);
    const auto b = run_trial(cfg, point, 0);
    ASSERT_EQ(a.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_EQ(a[k].error_pct, b[k].error_pct);
        EXPECT_EQ(a[k].seed, b[k].seed);
    }
    // Both algorithms see the same network.
    EXPECT_EQ(a[0].seed, a[1].seed);
    EXPECT_EQ(a[0].avg_connectivity, a[1].avg_connectivity);
    EXPECT_EQ(a[0].resamples, a[1].resamples);
}

TEST(Trial, DifferentTrialsDifferentNetworks) {
    const auto cfg = tiny();
    const auto point = expand(cfg).front();
    EXPECT_NE(network_seed(cfg, point, 0), network_seed(cfg, point, 1));
    EXPECT_NE(run_trial(cfg, point, 0)[0].error_pct, run_trial(cfg, point, 1)[0].error_pct);
}

TEST(Trial, NetworkSeedIgnoresAnchorAxis) {
    auto cfg = tiny();
    cfg.anchor_counts = {4, 15};
    const auto points = expand(cfg);
    EXPECT_EQ(network_seed(cfg, points[0], 3), network_seed(cfg, points[1], 3));
    EXPECT_NE(anchor_seed(cfg, points[0], 3), anchor_seed(cfg, points[1], 3));
}

TEST(Trial, ImdsBeatsMdsMapOnNoisyCubes) {
    auto cfg = tiny();
    cfg.trials = 30;
    Summary mds, imds;
    const auto rows = run_sweep(cfg).rows;
    std::vector<double> a, b;
    for (const auto& r : rows) (r.algorithm == Algorithm::imds ? b : a).push_back(r.error_pct);
    EXPECT_LT(summarize(b).mean, summarize(a).mean);
}

TEST(Trial, ExactMeasurementsGiveSmallError) {
    auto cfg = tiny();
    cfg.range_errors = {0.0};
    cfg.radio_ranges = {45.0};
    for (const auto& r : run_sweep(cfg).rows) {
        EXPECT_TRUE(r.ok());
        EXPECT_GE(r.error_pct, 0.0);
        EXPECT_GT(r.avg_connectivity, 0.0);
    }
}

TEST(Network, HopelessRangeIsConfigurationError) {
    EXPECT_THROW(draw_network(TopologyKind::random_cube, TopologyParams{}, 5.0, NoiseModel{0.0}, 1), ConfigurationError);
}

TEST(Sweep, FailedTrialsBecomeRows) {
    auto cfg = tiny();
    cfg.radio_ranges = {5.0};
    const auto table = run_sweep(cfg);
    ASSERT_EQ(table.rows.size(), 4u);
    for (const auto& r : table.rows) {
        EXPECT_FALSE(r.ok());
        EXPECT_TRUE(std::isnan(r.error_pct));
    }
    const auto agg = table.aggregates();
    ASSERT_EQ(agg.size(), 2u);
    EXPECT_EQ(agg[0].failed, 2u);
}

TEST(Csv, HeaderOnlyForEmptyTable) {
    EXPECT_EQ(csv(ResultTable{}),
              "topology,n,R,num_anchors,e_r,trial,algorithm,avg_connectivity,error_pct,matrix_error,resamples,seed\n");
}

TEST(Csv, OneRowTwoLines) {
    ResultTable t;
    t.rows = run_trial(tiny(), expand(tiny()).front(), 0);
    t.rows.resize(1);
    const auto text = csv(t);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

TEST(Csv, AggregatesSurviveRoundTrip) {
    auto cfg = tiny();
    cfg.anchor_counts = {4, 10};
    cfg.trials = 5;
    const auto table = run_sweep(cfg);
    std::stringstream rows_file, agg_file;
    write_csv(table, rows_file);
    write_aggregates_csv(table.aggregates(), agg_file);

    const auto reloaded = read_csv(rows_file);
    ASSERT_EQ(reloaded.rows.size(), table.rows.size());
    const auto recomputed = reloaded.aggregates();
    const auto stored = read_aggregates_csv(agg_file);
    ASSERT_EQ(recomputed.size(), stored.size());
    for (std::size_t k = 0; k < stored.size(); ++k) {
        EXPECT_EQ(recomputed[k].num_anchors, stored[k].num_anchors);
        EXPECT_EQ(recomputed[k].algorithm, stored[k].algorithm);
        EXPECT_TRUE(close(recomputed[k].error_pct.mean, stored[k].error_pct.mean, 1e-9));
        EXPECT_TRUE(close(recomputed[k].error_pct.stddev, stored[k].error_pct.stddev, 1e-9));
        EXPECT_TRUE(close(recomputed[k].connectivity.mean, stored[k].connectivity.mean, 1e-9));
        EXPECT_TRUE(close(recomputed[k].matrix_error.mean, stored[k].matrix_error.mean, 1e-9));
    }
}

TEST(Csv, TenSignificantDigits) {
    EXPECT_EQ(format_decimal(1.0 / 3.0), "0.3333333333");
    EXPECT_EQ(format_decimal(35.0), "35");
    EXPECT_EQ(format_decimal(std::nan("")), "nan");
}

TEST(PlotScript, OneChartPerTopologyErrorAnchors) {
    auto cfg = tiny();
    cfg.anchor_counts = {4, 10};
    cfg.radio_ranges = {35.0, 45.0};
    std::ostringstream out;
    write_plot_script(run_sweep(cfg).aggregates(), out);
    const auto text = out.str();
    std::size_t charts = 0;
    for (auto pos = text.find("set output"); pos != std::string::npos; pos = text.find("set output", pos + 1)) ++charts;
    EXPECT_EQ(charts, 2u);
    EXPECT_NE(text.find("IMDS"), std::string::npos);
    EXPECT_NE(text.find("MDS-MAP"), std::string::npos);
}

TEST(Config, ParsesKeyValueFile) {
    std::istringstream in(
        "# small sweep\n"
        "topologies = cube, grid\n"
        "anchors = 4,15\n"
        "ranges = 30, 40\n"
        "errors = 0.0,0.2\n"
        "trials = 3   # short\n"
        "seed = 99\n"
        "algorithms = imds\n"
        "noise = symmetric\n"
        "jobs = 2\n"
        "\n");
    const auto cfg = parse_sweep_config(in);
    EXPECT_EQ(cfg.topologies, (std::vector<TopologyKind>{TopologyKind::random_cube, TopologyKind::grid}));
    EXPECT_EQ(cfg.anchor_counts, (std::vector<std::size_t>{4, 15}));
    EXPECT_EQ(cfg.radio_ranges, (std::vector<double>{30.0, 40.0}));
    EXPECT_EQ(cfg.range_errors, (std::vector<double>{0.0, 0.2}));
    EXPECT_EQ(cfg.trials, 3u);
    EXPECT_EQ(cfg.base_seed, 99u);
    EXPECT_EQ(cfg.algorithms, (std::vector<Algorithm>{Algorithm::imds}));
    EXPECT_EQ(cfg.noise_law, NoiseLaw::symmetric);
    EXPECT_EQ(cfg.jobs, 2u);
}

TEST(Config, RejectsBadInput) {
    std::istringstream unknown("colour = blue\n");
    EXPECT_THROW(parse_sweep_config(unknown), Error);
    std::istringstream few_anchors("anchors = 3\n");
    EXPECT_THROW(parse_sweep_config(few_anchors), ParameterError);
    std::istringstream zero_trials("trials = 0\n");
    EXPECT_THROW(parse_sweep_config(zero_trials), ParameterError);
    std::istringstream empty_list("ranges =\n");
    EXPECT_THROW(parse_sweep_config(empty_list), ParameterError);
    std::istringstream not_number("ranges = 30, abc\n");
    EXPECT_THROW(parse_sweep_config(not_number), ParameterError);
}

TEST(DistanceComparison, ShapeAndDominance) {
    DistanceComparisonConfig cfg;
    cfg.radio_ranges = {18.0, 24.0};
    cfg.range_errors = {0.0, 0.2};
    cfg.trials = 3;
    const auto rows = run_distance_comparison(cfg);
    ASSERT_EQ(rows.size(), 12u);
    for (const auto& r : rows) {
        EXPECT_GT(r.avg_connectivity, 0.0);
        EXPECT_GE(r.dijkstra_error, 0.0);
        EXPECT_GE(r.ha_error, 0.0);
    }
    EXPECT_EQ(rows[0].seed, run_distance_comparison(cfg)[0].seed);
}
