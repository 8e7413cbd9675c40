#pragma once

#include <optional>
#include <span>
#include <vector>

#include "crocker/systems.hpp"

namespace crocker {

struct LyapunovEstimate {
    double lambda = 0.0;
    double renorm_interval = 0.0;
    double total_time = 0.0;
    /// Running estimate after each renormalization; the final entry is lambda.
    std::vector<double> convergence_series;
    /// False flags slow convergence (relative spread of the last quarter of
    /// the series above 0.2). A warning, not a failure: near-bifurcation
    /// parameters legitimately converge slowly.
    bool converged = true;
};

struct LyapunovConfig {
    double renorm_interval = 1.0;
    double total_time = 1000.0;
    double initial_separation = 1e-8;
};

/// Benettin two-trajectory estimate of the maximal Lyapunov exponent: evolve
/// a fiducial trajectory and a companion offset by initial_separation along
/// the first coordinate axis; every renorm_interval record ln(sep/sep0) and
/// rescale the companion back to sep0 along the current separation direction.
/// lambda is the accumulated log ratio divided by elapsed time.
/// cfg supplies the initial state, step size and transient; cfg.total_steps
/// is ignored (the horizon comes from lcfg.total_time).
LyapunovEstimate max_lyapunov(const SystemSpec& spec, const IntegrationConfig& cfg,
                              const LyapunovConfig& lcfg = {});

/// One estimate per control-parameter value, order aligned with the input.
/// A diverged parameter value yields an empty optional instead of aborting.
std::vector<std::optional<LyapunovEstimate>> lyapunov_curve(const SystemSpec& spec,
                                                            const IntegrationConfig& cfg,
                                                            std::span<const double> param_values,
                                                            const LyapunovConfig& lcfg = {},
                                                            int jobs = 0);

} // namespace crocker
