#include "crocker/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>

#include "crocker/errors.hpp"
#include "crocker/parallel.hpp"
#include "crocker/persistence.hpp"
#include "crocker/pointcloud.hpp"

namespace crocker {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

} // namespace

std::vector<double> linspace(double low, double high, std::size_t count) {
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i)
        values[i] = low + (high - low) * static_cast<double>(i) / static_cast<double>(count - 1);
    if (count >= 2) {
        values.front() = low;
        values.back() = high;
    }
    return values;
}

void SweepConfig::validate() const {
    if (explicit_param_values.empty()) {
        if (!(param_low < param_high)) throw Error("param range requires low < high");
        if (param_count < 2) throw Error("param_count must be at least 2");
    }
    if (dimensions.empty()) throw Error("at least one homology dimension is required");
    for (int d : dimensions)
        if (d != 0 && d != 1) throw Error("homology dimensions are limited to 0 and 1");
    if (subsample_count == 0) throw Error("subsample_count must be positive");
    if (epsilon_count < 2) throw Error("epsilon_count must be at least 2");
}

std::size_t SweepResult::ok_count() const {
    std::size_t count = 0;
    for (const auto& f : failures)
        if (f.empty()) ++count;
    return count;
}

std::vector<double> bifurcation_samples(const Trajectory& traj, std::size_t coordinate) {
    if (coordinate >= traj.dimension) throw Error("bifurcation coordinate out of range");
    std::vector<double> maxima;
    const std::size_t n = traj.size();
    if (n < 3) return maxima;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double prev = traj.state(i - 1)[coordinate];
        const double here = traj.state(i)[coordinate];
        const double next = traj.state(i + 1)[coordinate];
        if (prev < here && here > next) maxima.push_back(here);
    }
    return maxima;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw LengthMismatchError("pearson requires equal-length sequences");

    std::vector<double> x, y;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::isnan(xs[i]) || std::isnan(ys[i])) continue;
        x.push_back(xs[i]);
        y.push_back(ys[i]);
    }
    if (x.size() < 2) throw ZeroVarianceError("fewer than 2 surviving pairs");

    const double n = static_cast<double>(x.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= n;
    mean_y /= n;

    double cov = 0.0, var_x = 0.0, var_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x, dy = y[i] - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if (var_x == 0.0 || var_y == 0.0) throw ZeroVarianceError("zero variance in pearson input");
    return std::clamp(cov / std::sqrt(var_x * var_y), -1.0, 1.0);
}

std::vector<double> changepoint_score(const CrockerMatrix& cm) {
    const std::size_t cols = cm.columns.size();
    if (cols < 2) throw Error("changepoint_score needs at least 2 columns");

    std::vector<double> scores(cols, 0.0);
    for (std::size_t j = 1; j < cols; ++j) {
        const auto& a = cm.columns[j - 1];
        const auto& b = cm.columns[j];
        if (!a || !b) {
            scores[j] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        double sum = 0.0;
        for (std::size_t i = 0; i < a->size(); ++i)
            sum += std::abs(static_cast<double>((*a)[i]) - static_cast<double>((*b)[i]));
        scores[j] = sum;
    }
    return scores;
}

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();

    auto spec = find_system(cfg.system);
    if (!spec) throw Error("unknown system '" + cfg.system + "'");
    for (const auto& [name, value] : cfg.fixed_params) spec = spec->with_param(name, value);

    const std::string control =
        cfg.control_param.empty() ? spec->control_param : cfg.control_param;
    if (!spec->params.has(control))
        throw Error("system '" + spec->name + "' has no parameter '" + control + "'");

    IntegrationConfig icfg = cfg.integration;
    if (icfg.initial_state.empty()) icfg.initial_state = spec->default_initial_state;
    if (!(icfg.step_size > 0.0)) icfg.step_size = spec->default_step_size;
    icfg.validate(spec->dimension);

    if (cfg.subsample_count > icfg.total_steps - icfg.transient_steps)
        throw Error("subsample_count exceeds the number of post-transient states");

    SweepResult res;
    res.config = cfg;
    res.control_param = control;
    res.param_values = cfg.explicit_param_values.empty()
                           ? linspace(cfg.param_low, cfg.param_high, cfg.param_count)
                           : cfg.explicit_param_values;

    const std::size_t n_params = res.param_values.size();
    res.failures.assign(n_params, "");
    res.bifurcation.assign(n_params, {});
    res.timings.assign(n_params, {});
    if (cfg.compute_lyapunov) {
        res.lambda.assign(n_params, std::numeric_limits<double>::quiet_NaN());
        res.lambda_converged.assign(n_params, 0);
    }

    const bool want_h0 = std::count(cfg.dimensions.begin(), cfg.dimensions.end(), 0) > 0;
    const bool want_h1 = std::count(cfg.dimensions.begin(), cfg.dimensions.end(), 1) > 0;
    std::vector<std::optional<Barcode>> barcodes_h0(n_params), barcodes_h1(n_params);

    std::exception_ptr first_error = nullptr;
    const int workers = effective_jobs(cfg.jobs);
    (void)workers;
    const std::int64_t nn = static_cast<std::int64_t>(n_params);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (std::int64_t j = 0; j < nn; ++j) {
        try {
            const SystemSpec local = spec->with_param(control, res.param_values[j]);
            StageTiming& timing = res.timings[j];

            auto t = Clock::now();
            const Trajectory traj = integrate(local, icfg);
            timing.integrate_ms = ms_since(t);

            res.bifurcation[j] = bifurcation_samples(traj, cfg.bifurcation_coordinate);

            t = Clock::now();
            const PointCloud cloud = PointCloud::from_trajectory(traj);
            const PointCloud sub = greedy_subsample(cloud, cfg.subsample_count, 0);
            timing.subsample_ms = ms_since(t);

            t = Clock::now();
            const DistanceMatrix dm = distance_matrix(sub);
            const RipsFiltration filt = build_filtration(dm);
            timing.distance_ms = ms_since(t);

            if (want_h0) {
                t = Clock::now();
                barcodes_h0[j] = persistence_h0(filt);
                timing.h0_ms = ms_since(t);
            }
            if (want_h1) {
                t = Clock::now();
                barcodes_h1[j] = persistence_h1(filt, cfg.h1_vertex_cap);
                timing.h1_ms = ms_since(t);
            }

            if (cfg.compute_lyapunov) {
                t = Clock::now();
                const LyapunovEstimate est = max_lyapunov(local, icfg, cfg.lyapunov);
                res.lambda[j] = est.lambda;
                res.lambda_converged[j] = est.converged ? 1 : 0;
                timing.lyapunov_ms = ms_since(t);
            }
        } catch (const DivergenceError& e) {
            res.failures[j] = e.what();
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);

    if (res.ok_count() == 0) throw AllFailedError("every parameter value diverged");

    // Shared partition per dimension from the sweep-global max finite death.
    for (int dim : cfg.dimensions) {
        const auto& barcodes = dim == 0 ? barcodes_h0 : barcodes_h1;
        double d_max = 0.0;
        for (std::size_t j = 0; j < n_params; ++j)
            if (barcodes[j]) d_max = std::max(d_max, max_finite_death(*barcodes[j]));
        res.d_max[dim] = d_max;

        const Partition part = make_partition(d_max, cfg.epsilon_count);

        CrockerMatrix cm;
        cm.dimension = dim;
        cm.partition = part;
        cm.param_values = res.param_values;
        cm.columns.resize(n_params);

        auto& l1 = res.l1[dim];
        l1.assign(n_params, std::numeric_limits<double>::quiet_NaN());
        for (std::size_t j = 0; j < n_params; ++j) {
            if (!barcodes[j]) continue;
            BettiVector bv = betti_vector(*barcodes[j], part);
            l1[j] = static_cast<double>(l1_norm(bv));
            cm.columns[j] = std::move(bv.counts);
        }
        res.crocker.emplace(dim, std::move(cm));
    }

    if (cfg.compute_lyapunov) {
        for (int dim : cfg.dimensions) {
            try {
                res.pearson_lambda_l1[dim] = pearson(res.lambda, res.l1[dim]);
            } catch (const ZeroVarianceError&) {
                res.pearson_lambda_l1[dim] = std::numeric_limits<double>::quiet_NaN();
            }
        }
    }
    return res;
}

} // namespace crocker
