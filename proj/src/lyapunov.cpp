#include "crocker/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <string>

#include "crocker/errors.hpp"
#include "crocker/parallel.hpp"
#include "crocker/pointcloud.hpp"

namespace crocker {

namespace {

void check_state(std::span<const double> state, double bound, std::size_t step) {
    for (double v : state) {
        if (!std::isfinite(v) || std::abs(v) > bound)
            throw DivergenceError("trajectory diverged at step " + std::to_string(step), step);
    }
}

bool series_converged(const std::vector<double>& series) {
    const std::size_t q = std::max<std::size_t>(1, series.size() / 4);
    const auto tail = std::span(series).last(q);
    const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
    double mean = 0.0;
    for (double v : tail) mean += v;
    mean /= static_cast<double>(q);
    const double spread = *hi - *lo;
    return spread <= 0.2 * std::max(std::abs(mean), 1e-12);
}

} // namespace

LyapunovEstimate max_lyapunov(const SystemSpec& spec, const IntegrationConfig& cfg,
                              const LyapunovConfig& lcfg) {
    spec.validate();
    cfg.validate(spec.dimension);
    if (!(lcfg.renorm_interval > 0.0)) throw Error("renorm_interval must be positive");
    if (!(lcfg.total_time >= lcfg.renorm_interval))
        throw Error("total_time must be at least renorm_interval");
    if (!(lcfg.initial_separation > 0.0)) throw Error("initial_separation must be positive");

    const double h = cfg.step_size;
    const std::size_t steps_per_interval =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(lcfg.renorm_interval / h)));
    const std::size_t n_intervals = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(lcfg.total_time / lcfg.renorm_interval)));
    const double interval_time = static_cast<double>(steps_per_interval) * h;
    const double sep0 = lcfg.initial_separation;

    std::vector<double> fiducial = cfg.initial_state;
    Rk4Stepper stepper(spec, h);

    std::size_t step = 0;
    for (std::size_t s = 0; s < cfg.transient_steps; ++s) {
        stepper.step(fiducial);
        check_state(fiducial, cfg.divergence_bound, ++step);
    }

    std::vector<double> companion = fiducial;
    companion[0] += sep0;

    LyapunovEstimate est;
    est.renorm_interval = interval_time;
    est.total_time = static_cast<double>(n_intervals) * interval_time;
    est.convergence_series.reserve(n_intervals);

    double log_sum = 0.0;
    for (std::size_t k = 1; k <= n_intervals; ++k) {
        for (std::size_t s = 0; s < steps_per_interval; ++s) {
            stepper.step(fiducial);
            stepper.step(companion);
            ++step;
            check_state(fiducial, cfg.divergence_bound, step);
            check_state(companion, cfg.divergence_bound, step);
        }
        double sep = euclidean(fiducial, companion);
        if (sep <= 0.0) sep = std::numeric_limits<double>::min();
        log_sum += std::log(sep / sep0);

        const double scale = sep0 / sep;
        for (std::size_t i = 0; i < companion.size(); ++i)
            companion[i] = fiducial[i] + (companion[i] - fiducial[i]) * scale;

        est.convergence_series.push_back(log_sum / (static_cast<double>(k) * interval_time));
    }

    est.lambda = est.convergence_series.back();
    est.converged = series_converged(est.convergence_series);
    return est;
}

std::vector<std::optional<LyapunovEstimate>> lyapunov_curve(const SystemSpec& spec,
                                                            const IntegrationConfig& cfg,
                                                            std::span<const double> param_values,
                                                            const LyapunovConfig& lcfg, int jobs) {
    if (param_values.empty()) throw Error("param_values must be non-empty");
    for (double v : param_values)
        if (!std::isfinite(v)) throw Error("param_values must be finite");

    std::vector<std::optional<LyapunovEstimate>> out(param_values.size());
    std::exception_ptr first_error = nullptr;

    const std::int64_t n = static_cast<std::int64_t>(param_values.size());
    const int workers = effective_jobs(jobs);
    (void)workers;
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (std::int64_t j = 0; j < n; ++j) {
        try {
            out[j] = max_lyapunov(spec.with_control_value(param_values[j]), cfg, lcfg);
        } catch (const DivergenceError&) {
            out[j] = std::nullopt; // gap
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

} // namespace crocker
