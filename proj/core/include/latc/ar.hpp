#pragma once

#include <vector>

#include "latc/tensor.hpp"

namespace latc {

/// Strictly increasing set of positive time lags.
class LagSet {
   public:
    LagSet() = default;
    explicit LagSet(std::vector<Index> lags);

    /// Default lag structure for a seasonal series: short lags 1..6 plus a
    /// band around one season, points_per_season - 2 .. points_per_season + 3,
    /// deduplicated and clipped to positive values.
    static LagSet default_for_season(Index points_per_season);

    Index count() const { return static_cast<Index>(lags_.size()); }
    Index max_lag() const { return lags_.empty() ? 0 : lags_.back(); }
    const std::vector<Index>& lags() const { return lags_; }
    Index operator[](Index i) const { return lags_[static_cast<std::size_t>(i)]; }

   private:
    std::vector<Index> lags_;
};

/// Per-sensor autoregressive coefficients, one row of length lags.count()
/// per sensor.
struct ARCoefficients {
    Matrix values;  // sensors x lag count

    Index sensors() const { return values.rows(); }
    Index lag_count() const { return values.cols(); }
};

/// Design matrix for one series: row r corresponds to time t = max_lag + r
/// and holds x[t - h] for each lag h in order. Shape is
/// (length - max_lag) x count. Requires length > max_lag.
Matrix build_design(const Vector& series, const LagSet& lags);

/// Minimum-norm least squares solution of design * a = z_tail via SVD
/// pseudo-inverse with relative singular value cutoff 1e-10. The target and
/// the design may come from different series (the solver regresses one
/// iterate's tail on another iterate's lagged history).
Vector fit_coefficients(const Vector& z_tail, const Matrix& design);

/// Sum of squared one-step autoregressive residuals over all sensors:
/// sum_m sum_t (z(m,t) - sum_i a(m,i) z(m,t-h_i))^2 with t running over
/// max_lag .. N-1 only; earlier residuals would reach before the series.
double ar_norm(const Matrix& z, const ARCoefficients& coeffs, const LagSet& lags);

}  // namespace latc
