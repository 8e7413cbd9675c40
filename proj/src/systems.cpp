#include "crocker/systems.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "crocker/errors.hpp"

namespace crocker {

namespace {

bool finite_state(std::span<const double> state) {
    return std::all_of(state.begin(), state.end(), [](double v) { return std::isfinite(v); });
}

} // namespace

Params::Params(std::initializer_list<std::pair<std::string, double>> init) {
    for (const auto& [name, value] : init) set(name, value);
}

double Params::get(std::string_view name) const {
    for (const auto& [key, value] : entries_)
        if (key == name) return value;
    throw Error("unknown parameter '" + std::string(name) + "'");
}

void Params::set(std::string_view name, double value) {
    for (auto& [key, stored] : entries_) {
        if (key == name) {
            stored = value;
            return;
        }
    }
    entries_.emplace_back(std::string(name), value);
}

bool Params::has(std::string_view name) const noexcept {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const auto& kv) { return kv.first == name; });
}

SystemSpec SystemSpec::with_param(std::string_view param, double value) const {
    SystemSpec copy = *this;
    if (!copy.params.has(param))
        throw Error("system '" + name + "' has no parameter '" + std::string(param) + "'");
    copy.params.set(param, value);
    return copy;
}

SystemSpec SystemSpec::with_control_value(double value) const {
    return with_param(control_param, value);
}

void SystemSpec::validate() const {
    if (name.empty()) throw Error("system name must be non-empty");
    if (dimension == 0) throw Error("system dimension must be positive");
    if (!vector_field) throw Error("system '" + name + "' has no vector field");
    if (!params.has(control_param))
        throw Error("control parameter '" + control_param + "' is not a parameter of '" + name +
                    "'");
}

void IntegrationConfig::validate(std::size_t dimension) const {
    if (initial_state.size() != dimension)
        throw Error("initial state has dimension " + std::to_string(initial_state.size()) +
                    ", system expects " + std::to_string(dimension));
    if (!finite_state(initial_state)) throw Error("initial state must be finite");
    if (!(step_size > 0.0)) throw Error("step_size must be positive");
    if (total_steps == 0) throw Error("total_steps must be positive");
    if (transient_steps >= total_steps)
        throw Error("transient_steps must be smaller than total_steps");
    if (!(divergence_bound > 0.0)) throw Error("divergence_bound must be positive");
}

void rossler_field(std::span<const double> s, double a, double b, double c,
                   std::span<double> out) {
    out[0] = -s[1] - s[2];
    out[1] = s[0] + a * s[1];
    out[2] = b + s[2] * (s[0] - c);
}

void lorenz_field(std::span<const double> s, double sigma, double rho, double beta,
                  std::span<double> out) {
    out[0] = sigma * (s[1] - s[0]);
    out[1] = s[0] * (rho - s[2]) - s[1];
    out[2] = s[0] * s[1] - beta * s[2];
}

SystemSpec make_rossler() {
    SystemSpec spec;
    spec.name = "rossler";
    spec.dimension = 3;
    spec.params = {{"a", 0.41}, {"b", 2.0}, {"c", 4.0}};
    spec.control_param = "a";
    spec.default_initial_state = {-0.4, 0.6, 1.0};
    spec.default_step_size = 0.01;
    spec.vector_field = [](std::span<const double> s, const Params& p, std::span<double> out) {
        rossler_field(s, p.get("a"), p.get("b"), p.get("c"), out);
    };
    return spec;
}

SystemSpec make_lorenz() {
    SystemSpec spec;
    spec.name = "lorenz";
    spec.dimension = 3;
    spec.params = {{"sigma", 10.0}, {"rho", 28.0}, {"beta", 8.0 / 3.0}};
    spec.control_param = "rho";
    spec.default_initial_state = {1e-10, 0.0, 1.0};
    spec.default_step_size = 0.005;
    spec.vector_field = [](std::span<const double> s, const Params& p, std::span<double> out) {
        lorenz_field(s, p.get("sigma"), p.get("rho"), p.get("beta"), out);
    };
    return spec;
}

namespace {

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::vector<SystemSpec>& registry() {
    static std::vector<SystemSpec> systems = [] {
        std::vector<SystemSpec> v;
        v.push_back(make_rossler());
        v.push_back(make_lorenz());
        return v;
    }();
    return systems;
}

} // namespace

void register_system(SystemSpec spec) {
    spec.validate();
    std::lock_guard lock(registry_mutex());
    for (auto& existing : registry()) {
        if (existing.name == spec.name) {
            existing = std::move(spec);
            return;
        }
    }
    registry().push_back(std::move(spec));
}

std::optional<SystemSpec> find_system(std::string_view name) {
    std::lock_guard lock(registry_mutex());
    for (const auto& spec : registry())
        if (spec.name == name) return spec;
    return std::nullopt;
}

std::vector<std::string> system_names() {
    std::lock_guard lock(registry_mutex());
    std::vector<std::string> names;
    names.reserve(registry().size());
    for (const auto& spec : registry()) names.push_back(spec.name);
    return names;
}

Rk4Stepper::Rk4Stepper(const SystemSpec& spec, double step_size)
    : spec_(&spec),
      h_(step_size),
      k1_(spec.dimension),
      k2_(spec.dimension),
      k3_(spec.dimension),
      k4_(spec.dimension),
      mid_(spec.dimension) {}

void Rk4Stepper::step(std::span<double> state) {
    const auto& f = spec_->vector_field;
    const Params& p = spec_->params;
    const std::size_t n = state.size();

    f(state, p, k1_);
    for (std::size_t i = 0; i < n; ++i) mid_[i] = state[i] + 0.5 * h_ * k1_[i];
    f(mid_, p, k2_);
    for (std::size_t i = 0; i < n; ++i) mid_[i] = state[i] + 0.5 * h_ * k2_[i];
    f(mid_, p, k3_);
    for (std::size_t i = 0; i < n; ++i) mid_[i] = state[i] + h_ * k3_[i];
    f(mid_, p, k4_);
    for (std::size_t i = 0; i < n; ++i)
        state[i] += h_ / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
}

Trajectory integrate(const SystemSpec& spec, const IntegrationConfig& cfg) {
    spec.validate();
    cfg.validate(spec.dimension);

    Trajectory out;
    out.dimension = spec.dimension;
    out.step_size = cfg.step_size;
    out.start_time = static_cast<double>(cfg.transient_steps + 1) * cfg.step_size;
    out.data.reserve((cfg.total_steps - cfg.transient_steps) * spec.dimension);

    std::vector<double> state = cfg.initial_state;
    Rk4Stepper stepper(spec, cfg.step_size);

    for (std::size_t step = 1; step <= cfg.total_steps; ++step) {
        stepper.step(state);
        for (double v : state) {
            if (!std::isfinite(v) || std::abs(v) > cfg.divergence_bound)
                throw DivergenceError("trajectory diverged at step " + std::to_string(step), step);
        }
        if (step > cfg.transient_steps)
            out.data.insert(out.data.end(), state.begin(), state.end());
    }
    return out;
}

} // namespace crocker
