#include "halrtc_reference.hpp"

#include <algorithm>

#include "oracles.hpp"

namespace latc_test {

std::vector<Matrix> halrtc_trajectory(const TimeSeriesMatrix& y, Index points_per_season,
                                      const std::array<double, 3>& alpha, double rho0,
                                      double rho_max, int iterations) {
    const Index sensors = y.sensors();
    const Index n = y.time_points();
    const Index seasons = n / points_per_season;

    Matrix z = Matrix::Zero(sensors, n);
    for (Index m = 0; m < sensors; ++m)
        for (Index t = 0; t < n; ++t)
            if (y.mask(m, t)) z(m, t) = y.values(m, t);

    std::array<Tensor3, 3> x;
    std::array<Tensor3, 3> dual;
    for (int k = 0; k < 3; ++k) {
        x[static_cast<std::size_t>(k)] = Tensor3(sensors, points_per_season, seasons);
        dual[static_cast<std::size_t>(k)] = Tensor3(sensors, points_per_season, seasons);
    }

    double rho = rho0;
    std::vector<Matrix> trajectory;
    trajectory.reserve(static_cast<std::size_t>(iterations));

    for (int l = 0; l < iterations; ++l) {
        const Tensor3 qz = naive_stack(z, points_per_season);
        for (int k = 1; k <= 3; ++k) {
            Matrix target = naive_unfold(qz, k);
            const Matrix dual_mat = naive_unfold(dual[static_cast<std::size_t>(k - 1)], k);
            for (Index r = 0; r < target.rows(); ++r)
                for (Index c = 0; c < target.cols(); ++c) target(r, c) -= dual_mat(r, c) / rho;
            x[static_cast<std::size_t>(k - 1)] =
                naive_fold(jacobi_shrink(target, alpha[static_cast<std::size_t>(k - 1)] / rho, 0),
                           k, sensors, points_per_season, seasons);
        }

        Tensor3 weighted(sensors, points_per_season, seasons);
        for (Index a = 0; a < sensors; ++a)
            for (Index b = 0; b < points_per_season; ++b)
                for (Index c = 0; c < seasons; ++c)
                    weighted(a, b, c) = alpha[0] * x[0](a, b, c) + alpha[1] * x[1](a, b, c) +
                                        alpha[2] * x[2](a, b, c);
        trajectory.push_back(naive_unstack(weighted));

        for (Index m = 0; m < sensors; ++m)
            for (Index t = 0; t < n; ++t) {
                const Index i = t % points_per_season;
                const Index j = t / points_per_season;
                double sum = 0.0;
                for (int k = 0; k < 3; ++k)
                    sum += x[static_cast<std::size_t>(k)](m, i, j) +
                           dual[static_cast<std::size_t>(k)](m, i, j) / rho;
                z(m, t) = y.mask(m, t) ? y.values(m, t) : sum / 3.0;
            }

        const Tensor3 qz_new = naive_stack(z, points_per_season);
        for (int k = 0; k < 3; ++k)
            for (Index a = 0; a < sensors; ++a)
                for (Index b = 0; b < points_per_season; ++b)
                    for (Index c = 0; c < seasons; ++c)
                        dual[static_cast<std::size_t>(k)](a, b, c) +=
                            rho * (x[static_cast<std::size_t>(k)](a, b, c) - qz_new(a, b, c));

        rho = std::min(1.05 * rho, rho_max);
    }
    return trajectory;
}

}  // namespace latc_test
