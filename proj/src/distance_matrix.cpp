#include "imds/distance_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "imds/errors.hpp"

namespace imds {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// One Dijkstra pass; writes distances from `source` into `out`.
void single_source(const RangeGraph& graph, std::size_t source, Eigen::Ref<Eigen::VectorXd> out) {
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    std::vector<char> settled(graph.size(), 0);
    out.setConstant(kInf);
    out(static_cast<Eigen::Index>(source)) = 0.0;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (settled[u]) continue;
        settled[u] = 1;
        for (const auto& nb : graph.neighbors(u)) {
            if (settled[nb.node]) continue;
            const double candidate = d + nb.measured;
            auto& slot = out(static_cast<Eigen::Index>(nb.node));
            if (candidate < slot) {
                slot = candidate;
                queue.emplace(candidate, nb.node);
            }
        }
    }
    for (Eigen::Index k = 0; k < out.size(); ++k)
        if (!std::isfinite(out(k)))
            throw Error("internal: node " + std::to_string(k) + " unreachable from " + std::to_string(source) +
                        " (graph must be connected)");
}

}  // namespace

DistanceMatrix dijkstra_all_pairs(const RangeGraph& graph) {
    const auto n = static_cast<Eigen::Index>(graph.size());
    Eigen::MatrixXd d(n, n);
    // Each source fills its own column; sources are independent.
    for (Eigen::Index s = 0; s < n; ++s) single_source(graph, static_cast<std::size_t>(s), d.col(s));
    // Path sums from either end can differ in the last bit.
    return {0.5 * (d + d.transpose())};
}

double ha_combine(double d1, double d2, double radio_range) {
    if (!(d1 > 0.0) || !(d2 > 0.0) || !(radio_range > 0.0))
        throw ParameterError("ha_combine needs positive distances and radio range");
    const double cos_abc1 = std::clamp((d1 * d1 + d2 * d2 - radio_range * radio_range) / (2.0 * d1 * d2), -1.0, 1.0);
    const double half_angle = 0.5 * std::acos(cos_abc1);
    // sin <= 1 bounds a by d1 + d2; the cap only absorbs rounding at the straight-angle clamp.
    return std::min(std::sqrt(d1 * d1 + d2 * d2 + 2.0 * d1 * d2 * std::sin(half_angle)), d1 + d2);
}

RangeGraph two_hop_augmented(const RangeGraph& graph, double radio_range) {
    if (!(radio_range > 0.0)) throw ParameterError("radio range must be positive");
    const std::size_t n = graph.size();
    std::vector<std::vector<char>> linked(n, std::vector<char>(n, 0));
    for (const auto& e : graph.edges()) linked[e.i][e.j] = linked[e.j][e.i] = 1;

    constexpr double kUnset = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> shortcut(n, std::vector<double>(n, kUnset));
    for (std::size_t relay = 0; relay < n; ++relay) {
        const auto nbs = graph.neighbors(relay);
        for (const auto& a : nbs) {
            for (const auto& c : nbs) {
                if (a.node >= c.node || linked[a.node][c.node]) continue;
                auto& slot = shortcut[a.node][c.node];
                slot = std::min(slot, ha_combine(a.measured, c.measured, radio_range));
            }
        }
    }

    std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (shortcut[i][j] != kUnset) edges.push_back({i, j, shortcut[i][j]});
    return RangeGraph(n, graph.radio_range(), std::move(edges));
}

DistanceMatrix ha_all_pairs(const RangeGraph& graph, double radio_range) {
    return dijkstra_all_pairs(two_hop_augmented(graph, radio_range));
}

double matrix_error(const DistanceMatrix& est, const NodeSet& nodes, double radio_range) {
    const auto n = est.size();
    if (n != nodes.size()) throw ParameterError("distance matrix and node set sizes differ");
    if (!(radio_range > 0.0)) throw ParameterError("radio range must be positive");
    if (n < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            sum += std::abs(est(i, j) - (nodes.positions[i] - nodes.positions[j]).norm());
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return sum / pairs / radio_range;
}

}  // namespace imds
