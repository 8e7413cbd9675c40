#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crocker {

/// Named real-valued system parameters, insertion ordered.
class Params {
public:
    Params() = default;
    Params(std::initializer_list<std::pair<std::string, double>> init);

    double get(std::string_view name) const;
    void set(std::string_view name, double value);
    bool has(std::string_view name) const noexcept;
    const std::vector<std::pair<std::string, double>>& entries() const noexcept {
        return entries_;
    }

private:
    std::vector<std::pair<std::string, double>> entries_;
};

/// Evaluates the derivative at `state` into `out`. Must be deterministic:
/// identical (state, params) inputs yield identical outputs.
using VectorField =
    std::function<void(std::span<const double> state, const Params& params, std::span<double> out)>;

struct SystemSpec {
    std::string name;
    std::size_t dimension = 3;
    VectorField vector_field;
    Params params;
    std::string control_param;
    std::vector<double> default_initial_state;
    double default_step_size = 0.01;

    /// Copy of this spec with one parameter overwritten.
    SystemSpec with_param(std::string_view name, double value) const;
    SystemSpec with_control_value(double value) const;
    void validate() const;
};

struct IntegrationConfig {
    std::vector<double> initial_state;
    double step_size = 0.01;
    std::size_t total_steps = 30000;
    std::size_t transient_steps = 10000;
    double divergence_bound = 1e6;

    void validate(std::size_t dimension) const;
};

/// Post-transient states, row major. state(i) is the state after
/// transient_steps + i + 1 integration steps from the initial condition.
struct Trajectory {
    std::size_t dimension = 0;
    double step_size = 0.0;
    double start_time = 0.0;
    std::vector<double> data;

    std::size_t size() const noexcept { return dimension == 0 ? 0 : data.size() / dimension; }
    std::span<const double> state(std::size_t i) const {
        return {data.data() + i * dimension, dimension};
    }
};

void rossler_field(std::span<const double> state, double a, double b, double c,
                   std::span<double> out);
void lorenz_field(std::span<const double> state, double sigma, double rho, double beta,
                  std::span<double> out);

SystemSpec make_rossler();
SystemSpec make_lorenz();

/// Registry of named systems. "rossler" and "lorenz" are pre-registered;
/// register_system replaces an existing entry with the same name.
void register_system(SystemSpec spec);
std::optional<SystemSpec> find_system(std::string_view name);
std::vector<std::string> system_names();

/// Classical fixed-step fourth-order Runge-Kutta, reusable scratch buffers.
class Rk4Stepper {
public:
    Rk4Stepper(const SystemSpec& spec, double step_size);
    void step(std::span<double> state);
    double step_size() const noexcept { return h_; }

private:
    const SystemSpec* spec_;
    double h_;
    std::vector<double> k1_, k2_, k3_, k4_, mid_;
};

/// Integrates spec from cfg.initial_state and returns the post-transient
/// states. Throws DivergenceError as soon as a state component exceeds
/// cfg.divergence_bound in magnitude or becomes non-finite.
Trajectory integrate(const SystemSpec& spec, const IntegrationConfig& cfg);

} // namespace crocker
