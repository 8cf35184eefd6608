#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "imds/mds.hpp"
#include "imds/random.hpp"
#include "imds/topology.hpp"

namespace imds {

using PointRows = Eigen::Matrix<double, Eigen::Dynamic, 3>;

/// x -> rotation * x + translation, where rotation is orthogonal with det = +1 or -1.
struct RigidTransform {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();
    double residual = 0.0;    ///< RMS anchor misfit after fitting, in r
    bool degenerate = false;  ///< anchors (nearly) collinear; fit is not unique

    Vec3 apply(const Vec3& x) const { return rotation * x + translation; }
};

/// Nodes whose true positions are known.
struct AnchorSet {
    std::vector<std::size_t> indices;
    PointRows true_positions;  ///< row k belongs to indices[k]

    std::size_t size() const noexcept { return indices.size(); }
};

inline constexpr std::size_t kMinAnchors = 4;

/// Absolute (world-frame) node coordinates, one row per node.
struct AbsoluteMap {
    PointRows coords;

    std::size_t size() const noexcept { return static_cast<std::size_t>(coords.rows()); }
    Vec3 position(std::size_t i) const { return coords.row(static_cast<Eigen::Index>(i)).transpose(); }
};

/// Least-squares orthogonal fit of P onto Q (rows correspond).
///
/// Centres both sets, forms H = P'^T Q', takes H = U S V^T and tries
/// R = V diag(1, 1, s) U^T for s = +1 and s = -1, keeping the smaller
/// residual; then t = q_mean - R p_mean. Reflections are allowed because
/// MDS output has arbitrary handedness.
RigidTransform fit_transform(const PointRows& relative, const PointRows& truth);

AbsoluteMap apply_transform(const RigidTransform& transform, const RelativeMap& map);

/// Draws `count` distinct node ids uniformly without replacement.
AnchorSet select_anchors(const NodeSet& nodes, std::size_t count, Rng& rng);

/// Builds an anchor set from explicit ids.
AnchorSet make_anchors(const NodeSet& nodes, std::vector<std::size_t> indices);

/// Rows of `map` at the anchor ids, in anchor order.
PointRows anchor_rows(const RelativeMap& map, const AnchorSet& anchors);

}  // namespace imds
