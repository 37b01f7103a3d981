#pragma once

#include "latc/tensor.hpp"

namespace latc {

/// Parameters of the singular value shrinkage step: threshold tau and the
/// number of leading singular values left unshrunk.
struct ShrinkageSpec {
    double tau = 0.0;
    int theta = 0;
};

/// Singular value thresholding: U diag((sigma - tau)_+) V^T.
/// Equivalent to svt_truncated with theta = 0.
Matrix svt(const Matrix& z, double tau);

/// Truncated singular value thresholding: the theta largest singular values
/// pass through unshrunk, the rest are soft-thresholded by tau.
///
/// Singular values below 1e-12 times the largest are treated as zero before
/// thresholding so that noise-level spectrum tails never survive shrinkage.
/// Requires 0 <= theta < min(rows, cols), tau >= 0 and finite input.
Matrix svt_truncated(const Matrix& z, double tau, int theta);

inline Matrix svt_truncated(const Matrix& z, const ShrinkageSpec& spec) {
    return svt_truncated(z, spec.tau, spec.theta);
}

}  // namespace latc
