#include "latc/ar.hpp"

#include <algorithm>

#include <Eigen/SVD>

namespace latc {

LagSet::LagSet(std::vector<Index> lags) : lags_(std::move(lags)) {
    if (lags_.empty()) throw ConfigError("LagSet: at least one lag is required");
    for (std::size_t i = 0; i < lags_.size(); ++i) {
        if (lags_[i] < 1) throw ConfigError("LagSet: lags must be positive");
        if (i > 0 && lags_[i] <= lags_[i - 1])
            throw ConfigError("LagSet: lags must be strictly increasing");
    }
}

LagSet LagSet::default_for_season(Index points_per_season) {
    if (points_per_season < 1) throw ConfigError("LagSet: points_per_season must be >= 1");
    std::vector<Index> lags;
    for (Index h = 1; h <= 6; ++h) lags.push_back(h);
    for (Index h = points_per_season - 2; h <= points_per_season + 3; ++h)
        if (h >= 1) lags.push_back(h);
    std::sort(lags.begin(), lags.end());
    lags.erase(std::unique(lags.begin(), lags.end()), lags.end());
    return LagSet(std::move(lags));
}

Matrix build_design(const Vector& series, const LagSet& lags) {
    const Index n = series.size();
    const Index hd = lags.max_lag();
    if (lags.count() == 0) throw ConfigError("build_design: empty lag set");
    if (n <= hd) throw DimensionError("build_design: series no longer than the largest lag");
    Matrix q(n - hd, lags.count());
    for (Index r = 0; r < n - hd; ++r) {
        const Index t = hd + r;
        for (Index i = 0; i < lags.count(); ++i) q(r, i) = series(t - lags[i]);
    }
    return q;
}

Vector fit_coefficients(const Vector& z_tail, const Matrix& design) {
    if (design.rows() == 0) throw DimensionError("fit_coefficients: empty design");
    if (design.rows() != z_tail.size())
        throw DimensionError("fit_coefficients: design rows must match target length");
    Eigen::BDCSVD<Matrix> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    return svd.solve(z_tail);
}

double ar_norm(const Matrix& z, const ARCoefficients& coeffs, const LagSet& lags) {
    if (coeffs.sensors() != z.rows())
        throw DimensionError("ar_norm: coefficient rows must match sensor count");
    if (coeffs.lag_count() != lags.count())
        throw DimensionError("ar_norm: coefficient columns must match lag count");
    const Index hd = lags.max_lag();
    if (z.cols() <= hd) throw DimensionError("ar_norm: series no longer than the largest lag");
    double total = 0.0;
    for (Index m = 0; m < z.rows(); ++m) {
        for (Index t = hd; t < z.cols(); ++t) {
            double pred = 0.0;
            for (Index i = 0; i < lags.count(); ++i) pred += coeffs.values(m, i) * z(m, t - lags[i]);
            const double r = z(m, t) - pred;
            total += r * r;
        }
    }
    return total;
}

}  // namespace latc
