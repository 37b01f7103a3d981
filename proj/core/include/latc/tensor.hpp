#pragma once

#include <Eigen/Dense>

#include "latc/errors.hpp"

namespace latc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Multivariate series as a sensor x time matrix plus an observation mask
/// (true = observed). Entries with mask false carry no meaning and are
/// treated as zero wherever values are projected onto the observed set.
struct TimeSeriesMatrix {
    Matrix values;
    Mask mask;

    TimeSeriesMatrix() = default;
    TimeSeriesMatrix(Matrix v, Mask m) : values(std::move(v)), mask(std::move(m)) { validate(); }

    /// Wrap a fully observed matrix.
    static TimeSeriesMatrix fully_observed(Matrix v) {
        Mask m = Mask::Constant(v.rows(), v.cols(), true);
        return TimeSeriesMatrix(std::move(v), std::move(m));
    }

    Index sensors() const { return values.rows(); }
    Index time_points() const { return values.cols(); }
    Index observed_count() const { return mask.count(); }

    /// Frobenius norm of the observed entries.
    double observed_norm() const {
        double s = 0.0;
        for (Index t = 0; t < values.cols(); ++t)
            for (Index m = 0; m < values.rows(); ++m)
                if (mask(m, t)) s += values(m, t) * values(m, t);
        return std::sqrt(s);
    }

    void validate() const {
        if (values.rows() != mask.rows() || values.cols() != mask.cols())
            throw DimensionError("TimeSeriesMatrix: values and mask dimensions differ");
    }
};

/// Dense third-order tensor of shape (n1, n2, n3).
///
/// Storage is first-index-fastest: entry (a, b, c) lives at offset
/// a + n1*(b + n2*c). For the sensor x time-of-day x day use the axes are
/// (sensor, point within day, day).
class Tensor3 {
   public:
    Tensor3() = default;
    Tensor3(Index n1, Index n2, Index n3)
        : n1_(n1), n2_(n2), n3_(n3), data_(Vector::Zero(n1 * n2 * n3)) {
        if (n1 < 1 || n2 < 1 || n3 < 1) throw DimensionError("Tensor3: all dimensions must be >= 1");
    }

    /// Size of mode k, k in {1,2,3}.
    Index dim(int k) const {
        switch (k) {
            case 1: return n1_;
            case 2: return n2_;
            case 3: return n3_;
            default: throw std::invalid_argument("Tensor3::dim: mode must be 1, 2 or 3");
        }
    }

    Index size() const { return data_.size(); }

    double operator()(Index a, Index b, Index c) const { return data_[a + n1_ * (b + n2_ * c)]; }
    double& operator()(Index a, Index b, Index c) { return data_[a + n1_ * (b + n2_ * c)]; }

    const Vector& data() const { return data_; }
    Vector& data() { return data_; }

    bool same_dims(const Tensor3& other) const {
        return n1_ == other.n1_ && n2_ == other.n2_ && n3_ == other.n3_;
    }

   private:
    Index n1_ = 0, n2_ = 0, n3_ = 0;
    Vector data_;
};

/// Mode-k matricization. Row index is mode k; the remaining modes index the
/// columns with the lower-numbered mode varying fastest. Shapes are
/// n1 x (n2*n3), n2 x (n1*n3), n3 x (n1*n2) for k = 1, 2, 3.
Matrix unfold(const Tensor3& t, int mode);

/// Inverse of unfold for the same mode and target dimensions.
/// Throws DimensionError when the matrix shape does not match.
Tensor3 fold(const Matrix& m, int mode, Index n1, Index n2, Index n3);

/// Stack a sensor x time matrix into a sensor x point x season tensor:
/// matrix column t = season*points_per_season + point maps to entry
/// (sensor, point, season). Requires the column count to be divisible by
/// points_per_season.
Tensor3 to_tensor(const Matrix& values, Index points_per_season);
Tensor3 to_tensor(const TimeSeriesMatrix& y, Index points_per_season);

/// Inverse of to_tensor; identical to unfold(t, 1).
Matrix to_matrix(const Tensor3& t);

}  // namespace latc
