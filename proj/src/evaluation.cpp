#include "imds/evaluation.hpp"

#include <cmath>
#include <vector>

#include "imds/errors.hpp"

namespace imds {

std::string_view to_string(Algorithm algorithm) {
    return algorithm == Algorithm::imds ? "imds" : "mdsmap";
}

std::string_view to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::random_cube: return "cube";
        case TopologyKind::grid: return "grid";
        case TopologyKind::valley: return "valley";
        case TopologyKind::mountain: return "mountain";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
    if (text == "imds" || text == "IMDS") return Algorithm::imds;
    if (text == "mdsmap" || text == "MDS-MAP" || text == "mds-map") return Algorithm::mds_map;
    return std::nullopt;
}

std::optional<TopologyKind> parse_topology(std::string_view text) {
    if (text == "cube" || text == "random" || text == "random_cube") return TopologyKind::random_cube;
    if (text == "grid") return TopologyKind::grid;
    if (text == "valley") return TopologyKind::valley;
    if (text == "mountain") return TopologyKind::mountain;
    return std::nullopt;
}

double estimation_error(const AbsoluteMap& est, const NodeSet& truth, const AnchorSet& anchors, double radio_range) {
    const std::size_t n = truth.size();
    if (est.size() != n) throw ParameterError("estimated map and ground truth differ in size");
    if (!(radio_range > 0.0)) throw ParameterError("radio range must be positive");
    std::vector<char> is_anchor(n, 0);
    for (auto id : anchors.indices) {
        if (id >= n) throw ParameterError("anchor id outside node set");
        is_anchor[id] = 1;
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_anchor[i]) continue;
        sum += (est.position(i) - truth.positions[i]).norm();
        ++count;
    }
    if (count == 0) throw ParameterError("every node is an anchor; nothing to evaluate");
    return sum / (static_cast<double>(count) * radio_range) * 100.0;
}

Summary summarize(std::span<const double> values) {
    Summary s;
    s.count = values.size();
    if (s.count == 0) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.count);
    if (s.count > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(s.count - 1));
    }
    return s;
}

}  // namespace imds
