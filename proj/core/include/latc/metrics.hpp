#pragma once

#include "latc/tensor.hpp"

namespace latc {

/// Mean absolute percentage error times 100 over entries with nonzero truth.
/// Entries with truth exactly zero are skipped; their count is written to
/// *excluded when given. Returns 0 when every entry is excluded.
double mape(const Vector& truth, const Vector& est, Index* excluded = nullptr);

/// Root mean squared error over all entries. Inputs must be nonempty and of
/// equal length.
double rmse(const Vector& truth, const Vector& est);

/// Collect the entries of truth/est selected by a scoring mask into paired
/// vectors, in column-major order.
void gather_scored(const Matrix& truth, const Matrix& est, const Mask& scored, Vector& truth_out,
                   Vector& est_out);

}  // namespace latc
