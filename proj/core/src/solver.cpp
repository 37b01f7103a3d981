#include "latc/solver.hpp"

#include <chrono>
#include <cmath>

#include "latc/prox.hpp"
#include "latc/rng.hpp"

namespace latc {

void SolverConfig::validate() const {
    double sum = 0.0;
    for (double a : alpha) {
        if (a < 0.0) throw ConfigError("SolverConfig: alpha weights must be nonnegative");
        sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("SolverConfig: alpha weights must sum to 1");
    if (!(rho0 > 0.0)) throw ConfigError("SolverConfig: rho0 must be > 0");
    if (!(resolved_rho_max() > rho0)) throw ConfigError("SolverConfig: rho_max must exceed rho0");
    if (c0 < 0.0) throw ConfigError("SolverConfig: c0 must be >= 0");
    if (theta < 0) throw ConfigError("SolverConfig: theta must be >= 0");
    if (!(epsilon > 0.0)) throw ConfigError("SolverConfig: epsilon must be > 0");
    if (max_iters < 1) throw ConfigError("SolverConfig: max_iters must be >= 1");
}

SolverState make_initial_state(const TimeSeriesMatrix& y, Index points_per_season,
                               const SolverConfig& config) {
    config.validate();
    y.validate();
    const Index sensors = y.sensors();
    const Index n = y.time_points();
    if (points_per_season < 1)
        throw DimensionError("make_initial_state: points_per_season must be >= 1");
    if (n % points_per_season != 0)
        throw DimensionError("make_initial_state: column count not divisible by points_per_season");
    const Index seasons = n / points_per_season;

    const Index dims[3] = {sensors, points_per_season, seasons};
    const Index total = sensors * points_per_season * seasons;
    for (int k = 0; k < 3; ++k) {
        const Index unfold_min = std::min(dims[k], total / dims[k]);
        if (config.theta >= unfold_min)
            throw ConfigError("SolverConfig: theta must be below every mode's smaller unfolding dim");
    }

    SolverState state;
    state.points_per_season = points_per_season;
    state.seasons = seasons;
    state.lags = config.lags.count() > 0 ? config.lags : LagSet::default_for_season(points_per_season);
    if (state.lags.max_lag() >= n)
        throw ConfigError("SolverConfig: largest lag must be below the series length");

    state.z = Matrix::Zero(sensors, n);
    for (Index t = 0; t < n; ++t)
        for (Index m = 0; m < sensors; ++m)
            if (y.mask(m, t)) state.z(m, t) = y.values(m, t);

    for (int k = 0; k < 3; ++k) {
        state.x[k] = Tensor3(sensors, points_per_season, seasons);
        state.dual[k] = Tensor3(sensors, points_per_season, seasons);
    }

    Rng rng(config.seed);
    state.coeffs.values.resize(sensors, state.lags.count());
    for (Index m = 0; m < sensors; ++m)
        for (Index i = 0; i < state.lags.count(); ++i)
            state.coeffs.values(m, i) = rng.uniform(-0.01, 0.01);

    state.rho = config.rho0;
    state.lambda = config.c0 * config.rho0;
    state.iter = 0;
    state.last_residual = std::numeric_limits<double>::infinity();
    return state;
}

Tensor3 update_x(const SolverState& state, int k, const SolverConfig& config) {
    if (k < 1 || k > 3) throw std::invalid_argument("update_x: mode must be 1, 2 or 3");
    const Tensor3 qz = to_tensor(state.z, state.points_per_season);
    Matrix target = unfold(qz, k) - unfold(state.dual[k - 1], k) / state.rho;
    Matrix shrunk = svt_truncated(target, config.alpha[static_cast<std::size_t>(k - 1)] / state.rho,
                                  config.theta);
    return fold(shrunk, k, qz.dim(1), qz.dim(2), qz.dim(3));
}

Matrix update_z_head(const SolverState& state, const SolverConfig&) {
    const Index hd = state.lags.max_lag();
    const Index sensors = state.z.rows();
    Matrix head = Matrix::Zero(sensors, hd);
    for (int k = 0; k < 3; ++k) {
        Tensor3 term = state.x[k];
        term.data() += state.dual[k].data() / state.rho;
        head += to_matrix(term).leftCols(hd);
    }
    return head / 3.0;
}

Matrix update_z_tail(const SolverState& state, const SolverConfig& config) {
    const Index hd = state.lags.max_lag();
    const Index sensors = state.z.rows();
    const Index n = state.z.cols();
    const Index tail_len = n - hd;
    const double rho = state.rho;
    const double lambda = state.lambda;

    Matrix tail = Matrix::Zero(sensors, tail_len);
    for (int k = 0; k < 3; ++k) {
        Tensor3 term = state.x[k];
        term.data() = rho * term.data() + state.dual[k].data();
        tail += to_matrix(term).rightCols(tail_len);
    }
    tail /= 3.0 * (rho + lambda);

    if (lambda > 0.0) {
        Tensor3 weighted(state.x[0].dim(1), state.x[0].dim(2), state.x[0].dim(3));
        for (int k = 0; k < 3; ++k)
            weighted.data() += config.alpha[static_cast<std::size_t>(k)] * state.x[k].data();
        const Matrix xhat = to_matrix(weighted);
        const double gain = lambda / (rho + lambda);
        for (Index m = 0; m < sensors; ++m) {
            Matrix design = build_design(xhat.row(m).transpose(), state.lags);
            tail.row(m) += gain * (design * state.coeffs.values.row(m).transpose()).transpose();
        }
    }
    return tail;
}

Matrix enforce_observations(Matrix z, const TimeSeriesMatrix& y) {
    if (z.rows() != y.values.rows() || z.cols() != y.values.cols())
        throw DimensionError("enforce_observations: shape mismatch");
    for (Index t = 0; t < z.cols(); ++t)
        for (Index m = 0; m < z.rows(); ++m)
            if (y.mask(m, t)) z(m, t) = y.values(m, t);
    return z;
}

std::array<Tensor3, 3> update_duals(const SolverState& state) {
    const Tensor3 qz = to_tensor(state.z, state.points_per_season);
    std::array<Tensor3, 3> duals;
    for (int k = 0; k < 3; ++k) {
        duals[k] = state.dual[k];
        duals[k].data() += state.rho * (state.x[k].data() - qz.data());
    }
    return duals;
}

ImputeResult impute(const TimeSeriesMatrix& y, Index points_per_season,
                    const SolverConfig& config, const IterationObserver& observer) {
    const auto start = std::chrono::steady_clock::now();
    const double y_norm = y.observed_norm();
    if (y_norm == 0.0) throw std::invalid_argument("impute: no observed entries");

    SolverState state = make_initial_state(y, points_per_season, config);
    const Index sensors = y.sensors();
    const Index n = y.time_points();
    const Index hd = state.lags.max_lag();
    const double rho_cap = config.resolved_rho_max();

    Matrix xhat = Matrix::Zero(sensors, n);
    Matrix xhat_prev;
    ConvergenceReport report;

    for (int l = 1; l <= config.max_iters; ++l) {
        for (int k = 1; k <= 3; ++k) state.x[k - 1] = update_x(state, k, config);

        Tensor3 weighted(sensors, state.points_per_season, state.seasons);
        for (int k = 0; k < 3; ++k)
            weighted.data() += config.alpha[static_cast<std::size_t>(k)] * state.x[k].data();
        xhat = to_matrix(weighted);

        state.z.leftCols(hd) = update_z_head(state, config);
        state.z.rightCols(n - hd) = update_z_tail(state, config);
        state.z = enforce_observations(std::move(state.z), y);

        for (Index m = 0; m < sensors; ++m) {
            Matrix design = build_design(xhat.row(m).transpose(), state.lags);
            state.coeffs.values.row(m) =
                fit_coefficients(state.z.row(m).tail(n - hd).transpose(), design).transpose();
        }

        state.dual = update_duals(state);

        const double residual = l == 1 ? std::numeric_limits<double>::infinity()
                                       : (xhat - xhat_prev).norm() / y_norm;
        state.iter = l;
        state.last_residual = residual;
        if (observer) observer(IterationSnapshot{l, residual, state.rho, xhat, state.z});
        xhat_prev = xhat;

        state.rho = std::min(1.05 * state.rho, rho_cap);
        state.lambda = config.lambda_tracks_rho ? config.c0 * state.rho : config.c0 * config.rho0;

        report.iterations = l;
        report.final_residual = residual;
        if (residual < config.epsilon) {
            report.converged = true;
            break;
        }
    }

    report.final_rho = state.rho;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return ImputeResult{std::move(xhat), report};
}

}  // namespace latc
