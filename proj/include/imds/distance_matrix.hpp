#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "imds/ranging.hpp"
#include "imds/topology.hpp"

namespace imds {

/// Symmetric all-pairs distance estimate with a zero diagonal, in units of r.
struct DistanceMatrix {
    Eigen::MatrixXd values;

    std::size_t size() const noexcept { return static_cast<std::size_t>(values.rows()); }
    double operator()(std::size_t i, std::size_t j) const {
        return values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
};

/// Sum-of-hops shortest paths (one Dijkstra pass per source).
DistanceMatrix dijkstra_all_pairs(const RangeGraph& graph);

/// Length of the A-C side when B-C leaves B at the midpoint of the arc of
/// positions that are out of A's radio range:
///   a^2 = d1^2 + d2^2 + 2 d1 d2 sin(acos((d1^2 + d2^2 - R^2) / (2 d1 d2)) / 2)
/// with the acos argument clamped to [-1, 1].
double ha_combine(double d1, double d2, double radio_range);

/// The range graph plus one shortcut edge for every unlinked pair (A, C)
/// with a common neighbour: its length is the smallest ha_combine(|AB|, |BC|, R)
/// over relays B.
RangeGraph two_hop_augmented(const RangeGraph& graph, double radio_range);

/// Heuristic all-pairs estimate: additive shortest paths over
/// two_hop_augmented(graph). Never exceeds dijkstra_all_pairs, and equals
/// ha_combine(d1, d2, R) for a bare three-node chain.
DistanceMatrix ha_all_pairs(const RangeGraph& graph, double radio_range);

/// Mean over pairs i < j of |est - true| / R.
double matrix_error(const DistanceMatrix& est, const NodeSet& nodes, double radio_range);

}  // namespace imds
