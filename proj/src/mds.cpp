#include "imds/mds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "imds/errors.hpp"

namespace imds {

CenteredGram double_center(const DistanceMatrix& d) {
    const auto n = d.values.rows();
    if (n < 2) throw ParameterError("double centering needs at least 2 points");
    if (d.values.cols() != n) throw ParameterError("distance matrix must be square");
    const Eigen::MatrixXd sq = d.values.cwiseProduct(d.values);
    // T S T expanded: subtract row and column means, add back the grand mean.
    const Eigen::VectorXd row_mean = sq.rowwise().mean();
    const Eigen::RowVectorXd col_mean = sq.colwise().mean();
    const double grand = sq.mean();
    Eigen::MatrixXd b = sq;
    b.colwise() -= row_mean;
    b.rowwise() -= col_mean;
    b.array() += grand;
    b *= -0.5;
    return {0.5 * (b + b.transpose())};
}

RelativeMap embed(const CenteredGram& gram, std::size_t dims) {
    const auto n = gram.b.rows();
    if (gram.b.cols() != n) throw ParameterError("gram matrix must be square");
    if (dims == 0 || static_cast<Eigen::Index>(dims) > n)
        throw ParameterError("embedding dimension must be in [1, n], got " + std::to_string(dims));
    if (!gram.b.allFinite()) throw NumericalError("gram matrix contains non-finite entries");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram.b);
    if (solver.info() != Eigen::Success)
        throw NumericalError("symmetric eigensolver did not converge on a " + std::to_string(n) + "x" +
                             std::to_string(n) + " matrix (Eigen status " +
                             std::to_string(static_cast<int>(solver.info())) + ")");

    // Eigen returns eigenvalues in ascending order.
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    RelativeMap map;
    map.coords.resize(n, static_cast<Eigen::Index>(dims));
    map.eigenvalues.resize(static_cast<Eigen::Index>(dims));
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(dims); ++k) {
        const Eigen::Index src = n - 1 - k;
        const double lambda = values(src);
        if (lambda < 0.0) ++map.clamped;
        map.eigenvalues(k) = std::max(lambda, 0.0);
        map.coords.col(k) = vectors.col(src) * std::sqrt(map.eigenvalues(k));
    }
    map.negative = static_cast<std::size_t>((values.array() < 0.0).count());
    return map;
}

RelativeMap classical_mds(const DistanceMatrix& d, std::size_t dims) {
    return embed(double_center(d), dims);
}

}  // namespace imds
