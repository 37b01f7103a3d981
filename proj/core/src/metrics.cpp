#include "latc/metrics.hpp"

namespace latc {

double mape(const Vector& truth, const Vector& est, Index* excluded) {
    if (truth.size() != est.size()) throw DimensionError("mape: length mismatch");
    if (truth.size() == 0) throw DimensionError("mape: empty input");
    double sum = 0.0;
    Index used = 0, skipped = 0;
    for (Index i = 0; i < truth.size(); ++i) {
        if (truth(i) == 0.0) {
            ++skipped;
            continue;
        }
        sum += std::abs(truth(i) - est(i)) / std::abs(truth(i));
        ++used;
    }
    if (excluded) *excluded = skipped;
    return used == 0 ? 0.0 : sum / static_cast<double>(used) * 100.0;
}

double rmse(const Vector& truth, const Vector& est) {
    if (truth.size() != est.size()) throw DimensionError("rmse: length mismatch");
    if (truth.size() == 0) throw DimensionError("rmse: empty input");
    return std::sqrt((truth - est).squaredNorm() / static_cast<double>(truth.size()));
}

void gather_scored(const Matrix& truth, const Matrix& est, const Mask& scored, Vector& truth_out,
                   Vector& est_out) {
    if (truth.rows() != est.rows() || truth.cols() != est.cols() || truth.rows() != scored.rows() ||
        truth.cols() != scored.cols())
        throw DimensionError("gather_scored: shape mismatch");
    const Index n = scored.count();
    truth_out.resize(n);
    est_out.resize(n);
    Index k = 0;
    for (Index c = 0; c < truth.cols(); ++c)
        for (Index r = 0; r < truth.rows(); ++r)
            if (scored(r, c)) {
                truth_out(k) = truth(r, c);
                est_out(k) = est(r, c);
                ++k;
            }
}

}  // namespace latc
