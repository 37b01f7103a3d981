#include "latc/prox.hpp"

#include <Eigen/SVD>

namespace latc {

Matrix svt(const Matrix& z, double tau) { return svt_truncated(z, tau, 0); }

Matrix svt_truncated(const Matrix& z, double tau, int theta) {
    if (!z.allFinite()) throw std::invalid_argument("svt_truncated: input has non-finite entries");
    if (tau < 0.0) throw std::invalid_argument("svt_truncated: tau must be >= 0");
    const Index rmax = std::min(z.rows(), z.cols());
    if (theta < 0 || theta >= rmax)
        throw std::invalid_argument("svt_truncated: theta must satisfy 0 <= theta < min(rows, cols)");

    Eigen::BDCSVD<Matrix> svd(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vector sigma = svd.singularValues();

    const double floor = 1e-12 * sigma(0);
    Index rank = 0;
    for (Index i = 0; i < sigma.size(); ++i) {
        double s = sigma(i) < floor ? 0.0 : sigma(i);
        if (i >= theta) s = std::max(s - tau, 0.0);
        sigma(i) = s;
        if (s > 0.0) rank = i + 1;
    }
    if (rank == 0) return Matrix::Zero(z.rows(), z.cols());

    return svd.matrixU().leftCols(rank) * sigma.head(rank).asDiagonal() *
           svd.matrixV().leftCols(rank).transpose();
}

}  // namespace latc
