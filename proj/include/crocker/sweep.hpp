#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "crocker/betti.hpp"
#include "crocker/lyapunov.hpp"
#include "crocker/systems.hpp"

namespace crocker {

struct SweepConfig {
    std::string system = "rossler";
    /// Non-swept parameter overrides, applied in order before the sweep.
    std::vector<std::pair<std::string, double>> fixed_params;
    /// Control parameter name; empty means the system's default.
    std::string control_param;
    double param_low = 0.0;
    double param_high = 1.0;
    std::size_t param_count = 2;
    /// Overrides the (low, high, count) grid when non-empty. Used by tests
    /// that exercise grid-order invariance.
    std::vector<double> explicit_param_values;

    /// initial_state empty and step_size 0 pick up the system defaults.
    IntegrationConfig integration{.initial_state = {}, .step_size = 0.0};
    std::size_t subsample_count = 200;
    std::size_t epsilon_count = 100;
    std::vector<int> dimensions = {0, 1};
    bool compute_lyapunov = true;
    LyapunovConfig lyapunov;
    std::size_t bifurcation_coordinate = 0;
    std::size_t h1_vertex_cap = 600;
    int jobs = 0; // 0 = machine parallelism

    void validate() const;
};

/// Wall-clock milliseconds per pipeline stage for one parameter value.
struct StageTiming {
    double integrate_ms = 0.0;
    double subsample_ms = 0.0;
    double distance_ms = 0.0;
    double h0_ms = 0.0;
    double h1_ms = 0.0;
    double lyapunov_ms = 0.0;
};

/// Everything computed by one sweep. All per-parameter vectors are order
/// aligned with param_values; diverged parameter values carry an error text
/// in failures and NaN gaps in the numeric curves.
struct SweepResult {
    SweepConfig config;
    std::string control_param;
    std::vector<double> param_values;
    std::vector<std::string> failures;

    std::map<int, CrockerMatrix> crocker;
    std::map<int, std::vector<double>> l1;
    std::map<int, double> d_max;

    std::vector<double> lambda;                 // empty when lyapunov disabled
    std::vector<std::uint8_t> lambda_converged; // aligned with lambda
    std::map<int, double> pearson_lambda_l1;    // NaN when not computable

    std::vector<std::vector<double>> bifurcation;
    std::vector<StageTiming> timings;

    bool ok(std::size_t j) const { return failures[j].empty(); }
    std::size_t ok_count() const;
};

/// Runs the full pipeline for every control-parameter value: integrate,
/// subsample, distance matrix, barcodes; then a shared partition from the
/// global max finite death per dimension, CROCKER matrices, L1 curves and
/// (optionally) the Lyapunov curve with Pearson correlations against L1.
/// Parameter values run OpenMP-parallel; the gather is index based, so the
/// result is deterministic regardless of scheduling.
SweepResult run_sweep(const SweepConfig& cfg);

/// Strict local maxima of one coordinate along a trajectory.
std::vector<double> bifurcation_samples(const Trajectory& traj, std::size_t coordinate = 0);

/// Sample Pearson correlation. NaN entries are dropped pairwise; throws
/// ZeroVarianceError when fewer than 2 pairs survive or either side has zero
/// variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// L1 distance between consecutive CROCKER columns; first entry is 0, pairs
/// touching a gap column are NaN.
std::vector<double> changepoint_score(const CrockerMatrix& cm);

/// Equally spaced values from low to high inclusive.
std::vector<double> linspace(double low, double high, std::size_t count);

} // namespace crocker
