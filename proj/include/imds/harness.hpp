#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "imds/evaluation.hpp"
#include "imds/random.hpp"
#include "imds/ranging.hpp"
#include "imds/topology.hpp"

namespace imds {

/// Shape parameters for each topology family.
struct TopologyParams {
    std::size_t cube_nodes = 100;
    double cube_side = 100.0;
    std::size_t grid_per_axis = 5;
    double grid_spacing = 25.0;
    std::size_t surface_nodes = 100;
    TerrainSpec valley = TerrainSpec::valley();
    TerrainSpec mountain = TerrainSpec::mountain();
};

inline constexpr std::size_t kMaxResamples = 50;

struct SweepConfig {
    std::vector<TopologyKind> topologies{TopologyKind::random_cube, TopologyKind::grid};
    std::vector<std::size_t> anchor_counts{4, 6, 10, 15};
    std::vector<double> radio_ranges{25.0, 30.0, 35.0, 40.0, 45.0};
    std::vector<double> range_errors{0.0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
    std::size_t trials = 30;
    Seed base_seed = 20140620;
    std::vector<Algorithm> algorithms{Algorithm::mds_map, Algorithm::imds};
    NoiseLaw noise_law = NoiseLaw::inflating;
    TopologyParams topology;
    std::size_t jobs = 1;

    void validate() const;
    std::size_t point_count() const;
};

/// One cell of the sweep's Cartesian product.
struct ConfigPoint {
    std::size_t topology_index = 0;
    std::size_t anchor_index = 0;
    std::size_t range_index = 0;
    std::size_t error_index = 0;
    TopologyKind topology = TopologyKind::random_cube;
    std::size_t num_anchors = 10;
    double radio_range = 35.0;
    double range_error = 0.0;
};

/// Every configuration point, in canonical order (topology, anchors, range, error).
std::vector<ConfigPoint> expand(const SweepConfig& cfg);

/// Seed of the network (topology + noise) for one trial. The anchor-count
/// axis is left out so every anchor count localizes the same networks.
Seed network_seed(const SweepConfig& cfg, const ConfigPoint& point, std::size_t trial);

/// Seed of the anchor draw for one trial.
Seed anchor_seed(const SweepConfig& cfg, const ConfigPoint& point, std::size_t trial);

/// Generates the deployment for `kind` from a seed (grid ignores it).
NodeSet generate_topology(TopologyKind kind, const TopologyParams& params, Seed seed);

/// A connected network together with how many disconnected draws preceded it.
struct Network {
    std::shared_ptr<const NodeSet> nodes;
    RangeGraph graph;
    std::size_t resamples = 0;
};

/// Draws topology and measurements, redrawing with derived seeds while the
/// graph is disconnected. Throws ConfigurationError after kMaxResamples
/// consecutive failures.
Network draw_network(TopologyKind kind, const TopologyParams& params, double radio_range, const NoiseModel& noise,
                     Seed seed);

/// Runs every configured algorithm on one shared network and anchor set.
/// Results come back in cfg.algorithms order.
std::vector<TrialResult> run_trial(const SweepConfig& cfg, const ConfigPoint& point, std::size_t trial);

/// Per-configuration statistics over successful trials.
struct Aggregate {
    TopologyKind topology = TopologyKind::random_cube;
    std::size_t n = 0;
    double radio_range = 0.0;
    std::size_t num_anchors = 0;
    double range_error = 0.0;
    Algorithm algorithm = Algorithm::imds;
    Summary error_pct;
    Summary connectivity;
    Summary matrix_error;
    std::size_t failed = 0;
};

struct ResultTable {
    std::vector<TrialResult> rows;

    /// Groups consecutive rows by configuration, preserving row order.
    std::vector<Aggregate> aggregates() const;
};

/// Runs the full product cfg.point_count() x cfg.trials on cfg.jobs workers.
/// Row order is canonical regardless of the worker count. A trial that
/// throws becomes failed rows; the sweep continues.
ResultTable run_sweep(const SweepConfig& cfg);

void write_csv(const ResultTable& table, std::ostream& out);
void write_csv(const ResultTable& table, const std::filesystem::path& path);
ResultTable read_csv(std::istream& in);
ResultTable read_csv(const std::filesystem::path& path);

void write_aggregates_csv(const std::vector<Aggregate>& aggregates, std::ostream& out);
void write_aggregates_csv(const std::vector<Aggregate>& aggregates, const std::filesystem::path& path);
std::vector<Aggregate> read_aggregates_csv(std::istream& in);

/// gnuplot script drawing mean error against mean connectivity, one chart
/// per (topology, e_r, anchors) with a curve per algorithm.
void write_plot_script(const std::vector<Aggregate>& aggregates, std::ostream& out);

/// Ordered key = value pairs from a plain-text configuration file.
/// '#' starts a comment; blank lines are skipped.
using Settings = std::vector<std::pair<std::string, std::string>>;
Settings read_settings(std::istream& in);

/// Applies one setting (lists are comma separated). Returns false for keys
/// that are not sweep settings; throws ParameterError on malformed values.
bool apply_setting(SweepConfig& cfg, std::string_view key, std::string_view value);

/// Reads a whole configuration file; unknown keys are errors.
SweepConfig parse_sweep_config(std::istream& in, SweepConfig base = {});
SweepConfig load_sweep_config(const std::filesystem::path& path, SweepConfig base = {});

/// HA-versus-Dijkstra distance error on a planar deployment.
struct DistanceComparisonConfig {
    std::size_t nodes = 100;
    double side = 100.0;
    std::vector<double> radio_ranges{14.0, 16.0, 18.0, 20.0, 22.0, 24.0, 26.0};
    std::vector<double> range_errors{0.0, 0.10, 0.20, 0.30};
    std::size_t trials = 30;
    Seed base_seed = 20140620;
    NoiseLaw noise_law = NoiseLaw::inflating;

    void validate() const;
};

struct DistanceComparisonRow {
    double radio_range = 0.0;
    double range_error = 0.0;
    std::size_t trial = 0;
    double avg_connectivity = 0.0;
    double dijkstra_error = 0.0;
    double ha_error = 0.0;
    std::size_t resamples = 0;
    Seed seed = 0;
};

std::vector<DistanceComparisonRow> run_distance_comparison(const DistanceComparisonConfig& cfg);
void write_csv(const std::vector<DistanceComparisonRow>& rows, std::ostream& out);

std::string format_decimal(double value, int significant_digits = 10);

}  // namespace imds
