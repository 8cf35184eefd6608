#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "imds/random.hpp"
#include "imds/topology.hpp"

namespace imds {

enum class NoiseLaw {
    inflating,  ///< measured = true + U(0, e_r R)
    symmetric,  ///< measured = true + U(-e_r R, +e_r R)
};

/// Additive uniform range error with magnitude at most e_r R.
struct NoiseModel {
    double range_error = 0.0;  ///< e_r, as a fraction of R
    NoiseLaw law = NoiseLaw::inflating;

    void validate() const;
};

struct Edge {
    std::size_t i;
    std::size_t j;
    double measured;
};

struct Neighbor {
    std::size_t node;
    double measured;
};

/// Undirected graph of measured distances between nodes that can hear each other.
class RangeGraph {
public:
    /// Edges are stored with i < j, sorted; duplicates and self-loops are rejected.
    RangeGraph(std::size_t n, double radio_range, std::vector<Edge> edges,
               std::shared_ptr<const NodeSet> true_positions = nullptr);

    std::size_t size() const noexcept { return adjacency_.size(); }
    double radio_range() const noexcept { return radio_range_; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const Neighbor> neighbors(std::size_t node) const { return adjacency_.at(node); }

    /// Ground truth the graph was measured from; null when loaded from an edge list.
    /// Localization never reads this.
    const std::shared_ptr<const NodeSet>& true_positions() const noexcept { return truth_; }

    std::size_t component_count() const;
    bool connected() const { return component_count() <= 1; }

private:
    double radio_range_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::shared_ptr<const NodeSet> truth_;
};

/// Links every pair within R (and in line of sight on mountain terrain) and
/// draws one noisy measurement per link. Throws DisconnectedError when the
/// result has more than one component.
RangeGraph build_graph(std::shared_ptr<const NodeSet> nodes, double radio_range, const NoiseModel& noise,
                       Seed seed);

/// Average number of neighbours, 2|E| / n.
double avg_connectivity(const RangeGraph& graph);

}  // namespace imds
