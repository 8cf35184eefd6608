#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "imds/distance_matrix.hpp"
#include "imds/random.hpp"
#include "imds/ranging.hpp"
#include "imds/topology.hpp"

namespace imds::testing {

inline std::shared_ptr<const NodeSet> share(NodeSet nodes) {
    return std::make_shared<const NodeSet>(std::move(nodes));
}

inline NodeSet points(std::vector<Vec3> positions) {
    NodeSet out;
    out.positions = std::move(positions);
    return out;
}

/// Exact Euclidean distances, no graph involved.
inline DistanceMatrix euclidean(const NodeSet& nodes) {
    const auto n = static_cast<Eigen::Index>(nodes.size());
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            d(i, j) = (nodes.positions[static_cast<std::size_t>(i)] - nodes.positions[static_cast<std::size_t>(j)]).norm();
    return {d};
}

/// Textbook Floyd-Warshall, kept deliberately separate from the library.
inline Eigen::MatrixXd floyd_warshall(const RangeGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::infinity());
    for (Eigen::Index i = 0; i < n; ++i) d(i, i) = 0.0;
    for (const auto& e : g.edges()) {
        const auto i = static_cast<Eigen::Index>(e.i), j = static_cast<Eigen::Index>(e.j);
        d(i, j) = d(j, i) = std::min(d(i, j), e.measured);
    }
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                if (d(i, k) + d(k, j) < d(i, j)) d(i, j) = d(i, k) + d(k, j);
    return d;
}

/// Connected random graph whose weights are multiples of 1/64, so every path
/// sum is exact in binary floating point and any two correct shortest-path
/// algorithms must agree bit for bit.
inline RangeGraph dyadic_graph(std::size_t n, double extra_edge_prob, Seed seed) {
    Rng rng(seed);
    std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
    std::vector<Edge> edges;
    auto weight = [&] { return static_cast<double>(1 + rng.below(640)) / 64.0; };
    // Random spanning tree first, then extra edges.
    for (std::size_t v = 1; v < n; ++v) {
        const std::size_t u = rng.below(v);
        used[u][v] = 1;
        edges.push_back({u, v, weight()});
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!used[i][j] && rng.canonical() < extra_edge_prob) edges.push_back({i, j, weight()});
    return RangeGraph(n, 10.0, std::move(edges));
}

}  // namespace imds::testing
