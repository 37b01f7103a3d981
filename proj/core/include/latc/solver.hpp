#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>

#include "latc/ar.hpp"
#include "latc/tensor.hpp"

namespace latc {

/// Tuning for the ADMM imputer. theta = 0 selects plain nuclear norm
/// shrinkage; theta > 0 leaves that many leading singular values unshrunk
/// per mode. lambda = c0 * rho throughout; when lambda_tracks_rho is false
/// lambda stays at c0 * rho0 while rho follows the growth schedule.
struct SolverConfig {
    std::array<double, 3> alpha{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    double rho0 = 1e-4;
    double rho_max = -1.0;  // negative: resolve to 1e5 * rho0
    double c0 = 1.0;
    int theta = 0;
    double epsilon = 1e-4;
    int max_iters = 200;
    std::uint64_t seed = 42;
    LagSet lags;  // empty: derived from the season length when solving
    bool lambda_tracks_rho = true;

    double resolved_rho_max() const { return rho_max < 0.0 ? 1e5 * rho0 : rho_max; }
    void validate() const;
};

struct ConvergenceReport {
    int iterations = 0;
    double final_residual = 0.0;
    double final_rho = 0.0;  // after the last iteration's growth step
    double wall_seconds = 0.0;
    bool converged = false;
};

/// Working variables of one solve. x and dual hold the three per-mode
/// auxiliary tensors and their scaled duals; z is the sensor x time working
/// matrix kept equal to the observations on observed entries.
struct SolverState {
    std::array<Tensor3, 3> x;
    std::array<Tensor3, 3> dual;
    Matrix z;
    ARCoefficients coeffs;
    LagSet lags;
    double rho = 0.0;
    double lambda = 0.0;
    int iter = 0;
    double last_residual = std::numeric_limits<double>::infinity();
    Index points_per_season = 0;
    Index seasons = 0;
};

/// Per-iteration view handed to an observer: the residual is infinite on the
/// first iteration (no previous estimate exists), rho is the value used by
/// this iteration's updates (before growth).
struct IterationSnapshot {
    int iteration;
    double residual;
    double rho;
    const Matrix& xhat;
    const Matrix& z;
};
using IterationObserver = std::function<void(const IterationSnapshot&)>;

struct ImputeResult {
    Matrix recovered;
    ConvergenceReport report;
};

/// Build the starting state: z is the observed values with unobserved
/// entries zeroed, tensors are zero, coefficients are seeded uniform draws
/// from [-0.01, 0.01], rho = rho0. Resolves the lag set (deriving the
/// seasonal default when config.lags is empty) and checks theta against
/// every mode's unfolding dimensions.
SolverState make_initial_state(const TimeSeriesMatrix& y, Index points_per_season,
                               const SolverConfig& config);

/// Mode-k shrinkage step: fold_k of the truncated singular value
/// thresholding of unfold_k(Q(z)) - unfold_k(dual_k)/rho at threshold
/// alpha_k/rho. k is 1-based.
Tensor3 update_x(const SolverState& state, int k, const SolverConfig& config);

/// First max_lag columns of the new z: the plain average
/// (1/3) sum_k stack_inverse(x_k + dual_k/rho), head columns only.
Matrix update_z_head(const SolverState& state, const SolverConfig& config);

/// Remaining columns of the new z: per sensor m,
/// (1/(3(rho+lambda))) sum_k stack_inverse(rho*x_k + dual_k) tail
/// + (lambda/(rho+lambda)) * design_m * a_m, where design_m is built from
/// the current weighted estimate sum_k alpha_k x_k.
Matrix update_z_tail(const SolverState& state, const SolverConfig& config);

/// Overwrite observed entries of z with y's values; unobserved entries pass
/// through unchanged.
Matrix enforce_observations(Matrix z, const TimeSeriesMatrix& y);

/// Dual ascent: dual_k + rho * (x_k - Q(z)) for each mode.
std::array<Tensor3, 3> update_duals(const SolverState& state);

/// Run the full ADMM loop until the relative change of the weighted
/// estimate falls below epsilon or max_iters is reached. Returns the
/// weighted estimate (not z) plus a convergence report; non-convergence is
/// reported, not thrown.
ImputeResult impute(const TimeSeriesMatrix& y, Index points_per_season,
                    const SolverConfig& config, const IterationObserver& observer = {});

}  // namespace latc
