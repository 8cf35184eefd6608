#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "imds/alignment.hpp"
#include "imds/random.hpp"
#include "imds/topology.hpp"

namespace imds {

enum class Algorithm { mds_map, imds };

enum class TopologyKind { random_cube, grid, valley, mountain };

std::string_view to_string(Algorithm algorithm);
std::string_view to_string(TopologyKind kind);
std::optional<Algorithm> parse_algorithm(std::string_view text);
std::optional<TopologyKind> parse_topology(std::string_view text);

/// One localization run of one algorithm on one network.
struct TrialResult {
    Algorithm algorithm = Algorithm::imds;
    TopologyKind topology = TopologyKind::random_cube;
    std::size_t n = 0;
    std::size_t num_anchors = 0;
    double radio_range = 0.0;
    double range_error = 0.0;
    std::size_t trial = 0;
    double avg_connectivity = 0.0;
    double error_pct = 0.0;     ///< mean non-anchor position error / R, percent
    double matrix_error = 0.0;  ///< mean |estimated - true| pair distance / R
    std::size_t resamples = 0;  ///< disconnected graphs discarded before this one
    Seed seed = 0;
    std::string failure;  ///< empty on success

    bool ok() const noexcept { return failure.empty(); }
};

/// Mean distance between estimated and true positions over non-anchor
/// nodes, divided by R, in percent.
double estimation_error(const AbsoluteMap& est, const NodeSet& truth, const AnchorSet& anchors, double radio_range);

struct Summary {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;  ///< sample (n - 1) standard deviation; 0 for count < 2
};

Summary summarize(std::span<const double> values);

}  // namespace imds
