#include "imds/ranging.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "imds/errors.hpp"

namespace imds {
namespace {

constexpr double kMeasuredFloor = 1e-6;  // fraction of R

}  // namespace

void NoiseModel::validate() const {
    if (!(range_error >= 0.0 && range_error <= 0.5))
        throw ParameterError("range error must lie in [0, 0.5], got " + std::to_string(range_error));
}

RangeGraph::RangeGraph(std::size_t n, double radio_range, std::vector<Edge> edges,
                       std::shared_ptr<const NodeSet> true_positions)
    : radio_range_(radio_range), edges_(std::move(edges)), adjacency_(n), truth_(std::move(true_positions)) {
    if (!(radio_range > 0.0) || !std::isfinite(radio_range)) throw ParameterError("radio range must be positive");
    if (truth_ && truth_->size() != n) throw ParameterError("true positions do not match node count");
    for (auto& e : edges_) {
        if (e.i == e.j) throw ParameterError("self-loop on node " + std::to_string(e.i));
        if (e.i >= n || e.j >= n) throw ParameterError("edge references a node outside [0, n)");
        if (!(e.measured > 0.0) || !std::isfinite(e.measured))
            throw ParameterError("measured distance must be positive and finite");
        if (e.i > e.j) std::swap(e.i, e.j);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
    auto dup = std::adjacent_find(edges_.begin(), edges_.end(),
                                  [](const Edge& a, const Edge& b) { return a.i == b.i && a.j == b.j; });
    if (dup != edges_.end())
        throw ParameterError("duplicate edge " + std::to_string(dup->i) + "-" + std::to_string(dup->j));
    for (const auto& e : edges_) {
        adjacency_[e.i].push_back({e.j, e.measured});
        adjacency_[e.j].push_back({e.i, e.measured});
    }
}

std::size_t RangeGraph::component_count() const {
    const std::size_t n = size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = n;
    for (const auto& e : edges_) {
        const auto a = find(e.i), b = find(e.j);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components;
}

RangeGraph build_graph(std::shared_ptr<const NodeSet> nodes, double radio_range, const NoiseModel& noise,
                       Seed seed) {
    if (!nodes) throw ParameterError("node set is null");
    if (!(radio_range > 0.0) || !std::isfinite(radio_range)) throw ParameterError("radio range must be positive");
    noise.validate();

    const auto& pos = nodes->positions;
    const bool check_los = nodes->terrain && nodes->terrain->kind == TerrainKind::mountain;
    const double spread = noise.range_error * radio_range;
    const double low = noise.law == NoiseLaw::symmetric ? -spread : 0.0;
    const double floor = kMeasuredFloor * radio_range;

    Rng rng(seed);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            const double truth = (pos[i] - pos[j]).norm();
            if (truth > radio_range) continue;
            if (check_los && !line_of_sight(*nodes->terrain, pos[i], pos[j])) continue;
            const double measured = truth + rng.uniform(low, spread);
            edges.push_back({i, j, std::max(measured, floor)});
        }
    }
    RangeGraph graph(pos.size(), radio_range, std::move(edges), std::move(nodes));
    if (const auto c = graph.component_count(); c > 1) throw DisconnectedError(c);
    return graph;
}

double avg_connectivity(const RangeGraph& graph) {
    if (graph.size() == 0) return 0.0;
    return 2.0 * static_cast<double>(graph.edges().size()) / static_cast<double>(graph.size());
}

}  // namespace imds
