#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "imds/distance_matrix.hpp"

namespace imds {

/// Double-centred scalar-product matrix B = -1/2 T (D o D) T, T = I - 11'/n.
struct CenteredGram {
    Eigen::MatrixXd b;
};

/// Coordinates recovered by classical MDS, defined up to rigid motion and reflection.
struct RelativeMap {
    Eigen::MatrixXd coords;       ///< n x dims
    Eigen::VectorXd eigenvalues;  ///< retained, descending, negatives clamped to 0
    std::size_t clamped = 0;      ///< retained eigenvalues that were negative and clamped to 0
    std::size_t negative = 0;     ///< negative eigenvalues in the full spectrum

    std::size_t size() const noexcept { return static_cast<std::size_t>(coords.rows()); }
    std::size_t dims() const noexcept { return static_cast<std::size_t>(coords.cols()); }
};

CenteredGram double_center(const DistanceMatrix& d);

/// Top-`dims` eigenpairs of B; column k of the map is q_k * sqrt(max(lambda_k, 0)).
/// Throws NumericalError if the eigensolver does not converge.
RelativeMap embed(const CenteredGram& gram, std::size_t dims = 3);

RelativeMap classical_mds(const DistanceMatrix& d, std::size_t dims = 3);

}  // namespace imds
