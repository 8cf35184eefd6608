#include "imds/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "imds/errors.hpp"

namespace imds {
namespace {

constexpr double kDegenerateRatio = 1e-9;

double sum_squared_misfit(const Eigen::Matrix3d& rot, const PointRows& p_centered, const PointRows& q_centered) {
    return ((p_centered * rot.transpose()) - q_centered).squaredNorm();
}

}  // namespace

RigidTransform fit_transform(const PointRows& relative, const PointRows& truth) {
    const auto count = relative.rows();
    if (truth.rows() != count) throw ParameterError("anchor point sets differ in size");
    if (static_cast<std::size_t>(count) < kMinAnchors)
        throw ParameterError("need at least " + std::to_string(kMinAnchors) + " anchors, got " +
                             std::to_string(count));
    if (!relative.allFinite() || !truth.allFinite()) throw ParameterError("anchor coordinates must be finite");

    const Eigen::RowVector3d p_mean = relative.colwise().mean();
    const Eigen::RowVector3d q_mean = truth.colwise().mean();
    const PointRows p = relative.rowwise() - p_mean;
    const PointRows q = truth.rowwise() - q_mean;

    // Cross-covariance of the centred sets (columns of P' and Q' are points).
    const Eigen::Matrix3d h = p.transpose() * q;
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Matrix3d& u = svd.matrixU();
    const Eigen::Matrix3d& v = svd.matrixV();
    const Eigen::Vector3d sigma = svd.singularValues();

    RigidTransform out;
    double best = std::numeric_limits<double>::infinity();
    for (const double s : {1.0, -1.0}) {
        const Eigen::Matrix3d rot = v * Eigen::Vector3d(1.0, 1.0, s).asDiagonal() * u.transpose();
        const double misfit = sum_squared_misfit(rot, p, q);
        // Ties (planar anchors) prefer a proper rotation.
        const bool proper = rot.determinant() > 0.0;
        if (misfit < best || (misfit == best && proper)) {
            best = misfit;
            out.rotation = rot;
        }
    }
    out.translation = q_mean.transpose() - out.rotation * p_mean.transpose();
    out.residual = std::sqrt(best / static_cast<double>(count));
    out.degenerate = sigma(0) == 0.0 || sigma(1) < kDegenerateRatio * sigma(0);
    return out;
}

AbsoluteMap apply_transform(const RigidTransform& transform, const RelativeMap& map) {
    if (map.dims() != 3) throw ParameterError("alignment needs a 3D relative map, got " + std::to_string(map.dims()) + "D");
    AbsoluteMap out;
    out.coords = (map.coords * transform.rotation.transpose()).rowwise() + transform.translation.transpose();
    return out;
}

AnchorSet select_anchors(const NodeSet& nodes, std::size_t count, Rng& rng) {
    const std::size_t n = nodes.size();
    if (count < kMinAnchors) throw ParameterError("need at least " + std::to_string(kMinAnchors) + " anchors");
    if (count > n) throw ParameterError("more anchors requested than nodes");
    std::vector<std::size_t> ids(n);
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    // Partial Fisher-Yates.
    for (std::size_t k = 0; k < count; ++k) std::swap(ids[k], ids[k + rng.below(n - k)]);
    ids.resize(count);
    return make_anchors(nodes, std::move(ids));
}

AnchorSet make_anchors(const NodeSet& nodes, std::vector<std::size_t> indices) {
    if (indices.size() < kMinAnchors) throw ParameterError("need at least " + std::to_string(kMinAnchors) + " anchors");
    std::unordered_set<std::size_t> seen;
    AnchorSet out;
    out.true_positions.resize(static_cast<Eigen::Index>(indices.size()), 3);
    for (std::size_t k = 0; k < indices.size(); ++k) {
        const auto id = indices[k];
        if (id >= nodes.size()) throw ParameterError("anchor id " + std::to_string(id) + " out of range");
        if (!seen.insert(id).second) throw ParameterError("duplicate anchor id " + std::to_string(id));
        out.true_positions.row(static_cast<Eigen::Index>(k)) = nodes.positions[id].transpose();
    }
    out.indices = std::move(indices);
    return out;
}

PointRows anchor_rows(const RelativeMap& map, const AnchorSet& anchors) {
    if (map.dims() != 3) throw ParameterError("alignment needs a 3D relative map");
    PointRows rows(static_cast<Eigen::Index>(anchors.size()), 3);
    for (std::size_t k = 0; k < anchors.size(); ++k) {
        if (anchors.indices[k] >= map.size()) throw ParameterError("anchor id outside relative map");
        rows.row(static_cast<Eigen::Index>(k)) = map.coords.row(static_cast<Eigen::Index>(anchors.indices[k]));
    }
    return rows;
}

}  // namespace imds
