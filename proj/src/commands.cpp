#include "crocker/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crocker/betti.hpp"
#include "crocker/errors.hpp"
#include "crocker/export.hpp"
#include "crocker/lyapunov.hpp"
#include "crocker/persistence.hpp"
#include "crocker/pointcloud.hpp"
#include "crocker/selftest.hpp"
#include "crocker/sweep.hpp"
#include "crocker/systems.hpp"

namespace crocker {

namespace {

using Clock = std::chrono::steady_clock;

struct RawOptions {
    std::optional<std::string> system, param, range, out_dir, ic, dims, config;
    std::optional<double> step, value, lyap_renorm, lyap_time, lyap_sep;
    std::optional<long long> steps, transient, subsample, eps_count, jobs, repeat, h1_cap;
    std::optional<bool> no_lyapunov;
    std::vector<std::string> fixes;
};

double parse_num(const std::string& text, const std::string& what) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(v))
        throw ConfigError("invalid " + what + " '" + text + "'");
    return v;
}

long long parse_int(const std::string& text, const std::string& what) {
    long long v = 0;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ConfigError("invalid " + what + " '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

struct Range {
    double low = 0.0, high = 0.0;
    std::size_t count = 0;
};

Range parse_range(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("--range expects low:high:count, got '" + text + "'");
    Range r;
    r.low = parse_num(parts[0], "range low");
    r.high = parse_num(parts[1], "range high");
    const long long n = parse_int(parts[2], "range count");
    if (n < 2) throw ConfigError("range count must be at least 2");
    if (!(r.low < r.high)) throw ConfigError("range requires low < high");
    r.count = static_cast<std::size_t>(n);
    return r;
}

std::vector<double> parse_ic(const std::string& text, std::size_t dimension) {
    const auto parts = split(text, ',');
    if (parts.size() != dimension)
        throw ConfigError("--ic expects " + std::to_string(dimension) + " components");
    std::vector<double> ic;
    for (const auto& p : parts) ic.push_back(parse_num(p, "initial state component"));
    return ic;
}

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    for (const auto& p : split(text, ',')) {
        const long long d = parse_int(p, "homology dimension");
        if (d != 0 && d != 1) throw ConfigError("--dims entries must be 0 or 1");
        if (std::find(dims.begin(), dims.end(), static_cast<int>(d)) == dims.end())
            dims.push_back(static_cast<int>(d));
    }
    if (dims.empty()) throw ConfigError("--dims must name at least one dimension");
    std::sort(dims.begin(), dims.end());
    return dims;
}

std::pair<std::string, double> parse_fix(const std::string& text) {
    const auto pos = text.find('=');
    if (pos == std::string::npos || pos == 0)
        throw ConfigError("--fix expects name=value, got '" + text + "'");
    return {text.substr(0, pos), parse_num(text.substr(pos + 1), "fixed parameter value")};
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

/// key = value lines, '#' comments; flags on the command line win.
void apply_config_file(const std::string& path, RawOptions& raw) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");

    const auto set_str = [](std::optional<std::string>& slot, const std::string& v) {
        if (!slot) slot = v;
    };
    const auto set_num = [](std::optional<double>& slot, const std::string& v,
                            const std::string& key) {
        if (!slot) slot = parse_num(v, key);
    };
    const auto set_int = [](std::optional<long long>& slot, const std::string& v,
                            const std::string& key) {
        if (!slot) slot = parse_int(v, key);
    };

    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> file_fixes;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "system") set_str(raw.system, value);
        else if (key == "param") set_str(raw.param, value);
        else if (key == "range") set_str(raw.range, value);
        else if (key == "out") set_str(raw.out_dir, value);
        else if (key == "ic") set_str(raw.ic, value);
        else if (key == "dims") set_str(raw.dims, value);
        else if (key == "step") set_num(raw.step, value, key);
        else if (key == "value") set_num(raw.value, value, key);
        else if (key == "steps") set_int(raw.steps, value, key);
        else if (key == "transient") set_int(raw.transient, value, key);
        else if (key == "subsample") set_int(raw.subsample, value, key);
        else if (key == "eps-count" || key == "eps_count") set_int(raw.eps_count, value, key);
        else if (key == "jobs") set_int(raw.jobs, value, key);
        else if (key == "repeat") set_int(raw.repeat, value, key);
        else if (key == "h1-cap" || key == "h1_cap") set_int(raw.h1_cap, value, key);
        else if (key == "lyap-renorm") set_num(raw.lyap_renorm, value, key);
        else if (key == "lyap-time") set_num(raw.lyap_time, value, key);
        else if (key == "lyap-sep") set_num(raw.lyap_sep, value, key);
        else if (key == "fix") file_fixes.push_back(value);
        else if (key == "no-lyapunov" || key == "no_lyapunov") {
            if (!raw.no_lyapunov) raw.no_lyapunov = (value == "1" || value == "true");
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    // command-line fixes are applied after (and therefore override) file fixes
    raw.fixes.insert(raw.fixes.begin(), file_fixes.begin(), file_fixes.end());
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

SystemSpec resolve_system(const RawOptions& raw) {
    const std::string name = raw.system.value_or("rossler");
    auto spec = find_system(name);
    if (!spec)
        throw ConfigError("unknown system '" + name + "'; available: " +
                          join(system_names(), ", "));
    for (const auto& fix : raw.fixes) {
        const auto [param, value] = parse_fix(fix);
        if (!spec->params.has(param))
            throw ConfigError("system '" + name + "' has no parameter '" + param + "'");
        spec->params.set(param, value);
    }
    return *spec;
}

long long positive(const std::optional<long long>& slot, long long fallback,
                   const std::string& what) {
    const long long v = slot.value_or(fallback);
    if (v <= 0) throw ConfigError(what + " must be positive");
    return v;
}

SweepConfig build_sweep_config(const RawOptions& raw, const SystemSpec& spec) {
    SweepConfig cfg;
    cfg.system = spec.name;
    for (const auto& fix : raw.fixes) cfg.fixed_params.push_back(parse_fix(fix));

    if (raw.param) {
        if (!spec.params.has(*raw.param))
            throw ConfigError("system '" + spec.name + "' has no parameter '" + *raw.param + "'");
        cfg.control_param = *raw.param;
    }

    if (!raw.range) throw ConfigError("--range low:high:count is required");
    const Range range = parse_range(*raw.range);
    cfg.param_low = range.low;
    cfg.param_high = range.high;
    cfg.param_count = range.count;

    cfg.integration.initial_state =
        raw.ic ? parse_ic(*raw.ic, spec.dimension) : spec.default_initial_state;
    cfg.integration.step_size = raw.step.value_or(spec.default_step_size);
    cfg.integration.total_steps = static_cast<std::size_t>(positive(raw.steps, 30000, "--steps"));
    const long long transient = raw.transient.value_or(10000);
    if (transient < 0) throw ConfigError("--transient must be non-negative");
    cfg.integration.transient_steps = static_cast<std::size_t>(transient);

    cfg.subsample_count = static_cast<std::size_t>(positive(raw.subsample, 200, "--subsample"));
    cfg.epsilon_count = static_cast<std::size_t>(positive(raw.eps_count, 100, "--eps-count"));
    cfg.dimensions = raw.dims ? parse_dims(*raw.dims) : std::vector<int>{0, 1};
    cfg.compute_lyapunov = !raw.no_lyapunov.value_or(false);
    cfg.lyapunov.renorm_interval = raw.lyap_renorm.value_or(1.0);
    cfg.lyapunov.total_time = raw.lyap_time.value_or(1000.0);
    cfg.lyapunov.initial_separation = raw.lyap_sep.value_or(1e-8);
    cfg.h1_vertex_cap = static_cast<std::size_t>(positive(raw.h1_cap, 600, "--h1-cap"));
    const long long jobs = raw.jobs.value_or(0);
    if (jobs < 0) throw ConfigError("--jobs must be non-negative");
    cfg.jobs = static_cast<int>(jobs);

    try {
        cfg.validate();
        cfg.integration.validate(spec.dimension);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

nlohmann::json config_json(const SweepConfig& cfg) {
    nlohmann::json j;
    j["system"] = cfg.system;
    j["control_param"] = cfg.control_param;
    j["param_low"] = cfg.param_low;
    j["param_high"] = cfg.param_high;
    j["param_count"] = cfg.param_count;
    nlohmann::json fixed = nlohmann::json::object();
    for (const auto& [name, value] : cfg.fixed_params) fixed[name] = value;
    j["fixed_params"] = fixed;
    j["initial_state"] = cfg.integration.initial_state;
    j["step_size"] = cfg.integration.step_size;
    j["total_steps"] = cfg.integration.total_steps;
    j["transient_steps"] = cfg.integration.transient_steps;
    j["divergence_bound"] = cfg.integration.divergence_bound;
    j["subsample_count"] = cfg.subsample_count;
    j["epsilon_count"] = cfg.epsilon_count;
    j["dimensions"] = cfg.dimensions;
    j["compute_lyapunov"] = cfg.compute_lyapunov;
    j["lyapunov_renorm_interval"] = cfg.lyapunov.renorm_interval;
    j["lyapunov_total_time"] = cfg.lyapunov.total_time;
    j["lyapunov_initial_separation"] = cfg.lyapunov.initial_separation;
    j["h1_vertex_cap"] = cfg.h1_vertex_cap;
    j["jobs"] = cfg.jobs;
    return j;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_manifest(const std::filesystem::path& dir, const SweepConfig& cfg,
                    const SweepResult& res, const std::vector<std::filesystem::path>& files,
                    double wall_ms) {
    nlohmann::json manifest;
    manifest["tool"] = "crocker";
    manifest["version"] = kToolVersion;
    manifest["command"] = "sweep";
    manifest["config"] = config_json(cfg);

    StageTiming totals;
    for (const StageTiming& t : res.timings) {
        totals.integrate_ms += t.integrate_ms;
        totals.subsample_ms += t.subsample_ms;
        totals.distance_ms += t.distance_ms;
        totals.h0_ms += t.h0_ms;
        totals.h1_ms += t.h1_ms;
        totals.lyapunov_ms += t.lyapunov_ms;
    }
    manifest["stage_totals_ms"] = {
        {"integrate", totals.integrate_ms}, {"subsample", totals.subsample_ms},
        {"distance", totals.distance_ms},   {"persistence_h0", totals.h0_ms},
        {"persistence_h1", totals.h1_ms},   {"lyapunov", totals.lyapunov_ms},
        {"wall", wall_ms},
    };

    nlohmann::json inventory = nlohmann::json::array();
    for (const auto& rel : files) {
        const auto path = dir / rel;
        nlohmann::json entry;
        entry["name"] = rel.string();
        entry["bytes"] = std::filesystem::file_size(path);
        entry["fnv1a64"] = hex64(fnv1a64_file(path));
        inventory.push_back(entry);
    }
    manifest["files"] = inventory;

    write_file(dir / "manifest.json", manifest.dump(2) + "\n");

    // the inventory must match what is on disk at write time
    for (const auto& entry : inventory) {
        const auto path = dir / entry["name"].get<std::string>();
        if (!std::filesystem::exists(path) ||
            hex64(fnv1a64_file(path)) != entry["fnv1a64"].get<std::string>())
            throw IoError("manifest digest mismatch for '" + path.string() + "'");
    }
}

int cmd_sweep(const RawOptions& raw, std::ostream& out) {
    if (!raw.out_dir) throw ConfigError("--out DIR is required");
    const SystemSpec spec = resolve_system(raw);
    const SweepConfig cfg = build_sweep_config(raw, spec);

    const auto start = Clock::now();
    const SweepResult res = run_sweep(cfg);
    const auto files = write_sweep_outputs(*raw.out_dir, res);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    write_manifest(*raw.out_dir, cfg, res, files, wall_ms);

    out << "sweep finished: " << res.ok_count() << "/" << res.param_values.size()
        << " parameter values ok\n";
    for (const auto& [dim, r] : res.pearson_lambda_l1)
        out << "pearson(lambda, l1_dim" << dim << ") = " << format_double(r) << "\n";
    out << "wrote " << files.size() + 1 << " files to " << *raw.out_dir << "\n";
    return 0;
}

struct StageStats {
    std::vector<double> samples;
    void add(double v) { samples.push_back(v); }
    double mean() const {
        double m = 0.0;
        for (double v : samples) m += v;
        return samples.empty() ? 0.0 : m / static_cast<double>(samples.size());
    }
    double sd() const {
        if (samples.size() < 2) return 0.0;
        const double m = mean();
        double acc = 0.0;
        for (double v : samples) acc += (v - m) * (v - m);
        return std::sqrt(acc / static_cast<double>(samples.size() - 1));
    }
};

int cmd_single(const RawOptions& raw, std::ostream& out) {
    SystemSpec spec = resolve_system(raw);
    const std::string control = raw.param.value_or(spec.control_param);
    if (!spec.params.has(control))
        throw ConfigError("system '" + spec.name + "' has no parameter '" + control + "'");
    if (raw.value) spec.params.set(control, *raw.value);

    IntegrationConfig icfg;
    icfg.initial_state = raw.ic ? parse_ic(*raw.ic, spec.dimension) : spec.default_initial_state;
    icfg.step_size = raw.step.value_or(spec.default_step_size);
    icfg.total_steps = static_cast<std::size_t>(positive(raw.steps, 30000, "--steps"));
    const long long transient = raw.transient.value_or(10000);
    if (transient < 0) throw ConfigError("--transient must be non-negative");
    icfg.transient_steps = static_cast<std::size_t>(transient);

    const auto subsample = static_cast<std::size_t>(positive(raw.subsample, 200, "--subsample"));
    const auto eps_count = static_cast<std::size_t>(positive(raw.eps_count, 100, "--eps-count"));
    const auto h1_cap = static_cast<std::size_t>(positive(raw.h1_cap, 600, "--h1-cap"));
    const std::vector<int> dims = raw.dims ? parse_dims(*raw.dims) : std::vector<int>{0, 1};
    const bool with_lyapunov = !raw.no_lyapunov.value_or(false);
    LyapunovConfig lcfg;
    lcfg.renorm_interval = raw.lyap_renorm.value_or(1.0);
    lcfg.total_time = raw.lyap_time.value_or(1000.0);
    lcfg.initial_separation = raw.lyap_sep.value_or(1e-8);
    const long long repeat = positive(raw.repeat, 1, "--repeat");
    try {
        icfg.validate(spec.dimension);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (subsample > icfg.total_steps - icfg.transient_steps)
        throw ConfigError("--subsample exceeds the number of post-transient states");

    std::map<std::string, StageStats> stats;
    std::map<int, Barcode> barcodes;
    std::map<int, std::uint64_t> l1_values;
    std::map<int, double> d_max_values;
    std::optional<LyapunovEstimate> lambda;
    PointCloud sub;

    for (long long run = 0; run < repeat; ++run) {
        auto t = Clock::now();
        const Trajectory traj = integrate(spec, icfg);
        const double integrate_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - t).count();
        stats["integrate"].add(integrate_ms);

        t = Clock::now();
        sub = greedy_subsample(PointCloud::from_trajectory(traj), subsample, 0);
        const double subsample_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - t).count();
        stats["subsample"].add(subsample_ms);

        t = Clock::now();
        const DistanceMatrix dm = distance_matrix(sub);
        const RipsFiltration filt = build_filtration(dm);
        const double distance_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - t).count();
        stats["distance"].add(distance_ms);

        for (int dim : dims) {
            t = Clock::now();
            Barcode bc = dim == 0 ? persistence_h0(filt) : persistence_h1(filt, h1_cap);
            const double persistence_ms =
                std::chrono::duration<double, std::milli>(Clock::now() - t).count();
            stats["persistence_h" + std::to_string(dim)].add(persistence_ms);

            t = Clock::now();
            const double d_max = max_finite_death(bc);
            const Partition part = make_partition(d_max, eps_count);
            const std::uint64_t l1 = l1_norm(betti_vector(bc, part));
            const double betti_ms =
                std::chrono::duration<double, std::milli>(Clock::now() - t).count();
            stats["betti_l1_dim" + std::to_string(dim)].add(betti_ms);

            stats["l1_path_dim" + std::to_string(dim)].add(integrate_ms + subsample_ms +
                                                           distance_ms + persistence_ms +
                                                           betti_ms);
            d_max_values[dim] = d_max;
            l1_values[dim] = l1;
            barcodes[dim] = std::move(bc);
        }

        if (with_lyapunov) {
            t = Clock::now();
            lambda = max_lyapunov(spec, icfg, lcfg);
            stats["lyapunov_path"].add(
                std::chrono::duration<double, std::milli>(Clock::now() - t).count());
        }
    }

    out << "system " << spec.name << ", " << control << " = "
        << format_double(spec.params.get(control)) << "\n";
    for (const auto& [dim, bc] : barcodes) {
        out << "dim " << dim << ": " << bc.intervals.size() << " intervals, d_max = "
            << format_double(d_max_values[dim]) << ", betti vector L1 = " << l1_values[dim]
            << "\n";
    }
    if (lambda) {
        out << "lambda = " << format_double(lambda->lambda)
            << (lambda->converged ? "" : " (slow convergence)") << "\n";
    }

    out << "timings over " << repeat << " run" << (repeat == 1 ? "" : "s") << " (ms):\n";
    for (const auto& [name, s] : stats) {
        char line[128];
        std::snprintf(line, sizeof(line), "  %-18s %9.1f \xC2\xB1 %.1f ms", name.c_str(),
                      s.mean(), s.sd());
        out << line << "\n";
    }

    if (raw.out_dir) {
        std::filesystem::path dir(*raw.out_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");
        std::vector<Barcode> all;
        for (const auto& [dim, bc] : barcodes) all.push_back(bc);
        write_file(dir / "barcodes.csv", barcode_csv(all));
        write_file(dir / "subsample.csv", pointcloud_csv(sub));
        out << "wrote barcodes.csv and subsample.csv to " << *raw.out_dir << "\n";
    }
    return 0;
}

void add_pipeline_options(CLI::App* cmd, RawOptions& raw) {
    cmd->add_option("--system", raw.system, "system name (rossler, lorenz, or registered)");
    cmd->add_option("--param", raw.param, "control parameter name (default: system's own)");
    cmd->add_option("--fix", raw.fixes, "fix a non-swept parameter, name=value (repeatable)");
    cmd->add_option("--ic", raw.ic, "initial condition, comma separated");
    cmd->add_option("--step", raw.step, "integration step size");
    cmd->add_option("--steps", raw.steps, "total integration steps (default 30000)");
    cmd->add_option("--transient", raw.transient, "discarded transient steps (default 10000)");
    cmd->add_option("--subsample", raw.subsample, "greedy subsample size (default 200)");
    cmd->add_option("--eps-count", raw.eps_count, "epsilon grid size (default 100)");
    cmd->add_option("--dims", raw.dims, "homology dimensions, e.g. 0,1");
    cmd->add_flag_callback("--no-lyapunov", [&raw] { raw.no_lyapunov = true; },
                           "skip the Lyapunov estimate");
    cmd->add_option("--jobs", raw.jobs, "worker count (default: machine parallelism)");
    cmd->add_option("--h1-cap", raw.h1_cap, "vertex cap for H1 computation (default 600)");
    cmd->add_option("--lyap-renorm", raw.lyap_renorm, "Lyapunov renormalization interval");
    cmd->add_option("--lyap-time", raw.lyap_time, "Lyapunov total time (default 1000)");
    cmd->add_option("--lyap-sep", raw.lyap_sep, "Lyapunov initial separation (default 1e-8)");
    cmd->add_option("--config", raw.config, "key = value config file; flags override it");
}

} // namespace

int run_cli(std::span<const char* const> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bifurcation and chaos detection via CROCKER matrices of sampled attractors"};
    app.set_version_flag("--version", std::string("crocker ") + kToolVersion);

    RawOptions sweep_raw, single_raw;
    SelftestOptions selftest_opt;

    CLI::App* sweep = app.add_subcommand(
        "sweep", "sweep the control parameter and export CROCKER matrices and curves");
    add_pipeline_options(sweep, sweep_raw);
    sweep->add_option("--range", sweep_raw.range, "control parameter grid, low:high:count");
    sweep->add_option("--out", sweep_raw.out_dir, "output directory (required)");

    CLI::App* single = app.add_subcommand(
        "single", "run the pipeline once at one parameter value and report timings");
    add_pipeline_options(single, single_raw);
    single->add_option("--value", single_raw.value, "control parameter value");
    single->add_option("--repeat", single_raw.repeat, "timing repetitions (default 1)");
    single->add_option("--out", single_raw.out_dir, "directory for barcode/cloud CSV export");

    CLI::App* selftest =
        app.add_subcommand("selftest", "run the embedded oracle and invariant checks");
    selftest->add_option("--filter", selftest_opt.filter, "run only checks whose group matches");
    selftest->add_flag("--inject-fault", selftest_opt.inject_fault, "test hook: force a failure")
        ->group(""); // hidden

    app.require_subcommand(1);

    try {
        app.parse(static_cast<int>(args.size()), args.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (sweep->parsed()) {
            if (sweep_raw.config) apply_config_file(*sweep_raw.config, sweep_raw);
            return cmd_sweep(sweep_raw, out);
        }
        if (single->parsed()) {
            if (single_raw.config) apply_config_file(*single_raw.config, single_raw);
            return cmd_single(single_raw, out);
        }
        if (selftest->parsed()) return selftest_main(selftest_opt, out) == 0 ? 0 : 3;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace crocker
