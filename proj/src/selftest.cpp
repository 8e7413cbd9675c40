#include "crocker/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "crocker/betti.hpp"
#include "crocker/errors.hpp"
#include "crocker/export.hpp"
#include "crocker/lyapunov.hpp"
#include "crocker/persistence.hpp"
#include "crocker/pointcloud.hpp"
#include "crocker/reference.hpp"
#include "crocker/sweep.hpp"
#include "crocker/systems.hpp"

namespace crocker {

namespace {

PointCloud random_cloud(std::mt19937& rng, std::size_t n, std::size_t dim = 3) {
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    PointCloud cloud;
    cloud.dimension = dim;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> p(dim);
        for (auto& v : p) v = coord(rng);
        cloud.push_back(p, i);
    }
    return cloud;
}

SystemSpec linear_decay_system() {
    SystemSpec spec;
    spec.name = "linear_decay";
    spec.dimension = 1;
    spec.params = {{"rate", 1.0}};
    spec.control_param = "rate";
    spec.default_initial_state = {1.0};
    spec.vector_field = [](std::span<const double> s, const Params& p, std::span<double> out) {
        out[0] = -p.get("rate") * s[0];
    };
    return spec;
}

std::string check_rk4_order() {
    const SystemSpec spec = linear_decay_system();
    const auto final_error = [&](double h) {
        IntegrationConfig cfg;
        cfg.initial_state = {1.0};
        cfg.step_size = h;
        cfg.total_steps = static_cast<std::size_t>(std::llround(1.0 / h));
        cfg.transient_steps = 0;
        const Trajectory traj = integrate(spec, cfg);
        return std::abs(traj.state(traj.size() - 1)[0] - std::exp(-1.0));
    };
    for (double h : {1e-1, 2e-2, 4e-3}) {
        const double ratio = final_error(h) / final_error(h / 2.0);
        if (!(ratio >= 12.0)) {
            std::ostringstream msg;
            msg << "halving h=" << h << " improved error only " << ratio << "x";
            return msg.str();
        }
    }
    return "";
}

std::string check_transient_suffix() {
    const SystemSpec spec = make_lorenz();
    IntegrationConfig full;
    full.initial_state = spec.default_initial_state;
    full.step_size = 0.005;
    full.total_steps = 600;
    full.transient_steps = 0;
    IntegrationConfig cut = full;
    cut.transient_steps = 150;

    const Trajectory whole = integrate(spec, full);
    const Trajectory suffix = integrate(spec, cut);
    for (std::size_t i = 0; i < suffix.size(); ++i) {
        const auto a = whole.state(i + cut.transient_steps);
        const auto b = suffix.state(i);
        for (std::size_t c = 0; c < 3; ++c)
            if (a[c] != b[c]) return "suffix state differs at index " + std::to_string(i);
    }
    return "";
}

std::string check_integrate_determinism() {
    const SystemSpec spec = make_rossler();
    IntegrationConfig cfg;
    cfg.initial_state = spec.default_initial_state;
    cfg.step_size = 0.01;
    cfg.total_steps = 2000;
    cfg.transient_steps = 100;
    const Trajectory a = integrate(spec, cfg);
    const Trajectory b = integrate(spec, cfg);
    return a.data == b.data ? "" : "repeat integration differs bitwise";
}

std::string check_greedy_prefix() {
    std::mt19937 rng(7101);
    for (int round = 0; round < 8; ++round) {
        const PointCloud cloud = random_cloud(rng, 60);
        const PointCloud big = greedy_subsample(cloud, 30, 0);
        const PointCloud small = greedy_subsample(cloud, 12, 0);
        for (std::size_t i = 0; i < small.size(); ++i)
            if (big.source_indices[i] != small.source_indices[i])
                return "greedy selection is not prefix-consistent";
        // selecting from the selection gives the same prefix
        const PointCloud nested = greedy_subsample(big, 12, 0);
        if (nested.source_indices != small.source_indices)
            return "subsample of subsample differs from direct subsample";
        // parallel and serial kernels agree
        const PointCloud serial = reference::greedy_subsample_serial(cloud, 30, 0);
        if (serial.source_indices != big.source_indices)
            return "parallel greedy differs from serial reference";
    }
    return "";
}

std::string check_distance_matrix() {
    std::mt19937 rng(7102);
    const PointCloud cloud = random_cloud(rng, 40);
    const DistanceMatrix dm = distance_matrix(cloud);
    const DistanceMatrix ref = reference::distance_matrix_serial(cloud);
    std::uniform_int_distribution<std::size_t> pick(0, cloud.size() - 1);
    for (int t = 0; t < 200; ++t) {
        const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
        if (dm(i, j) != ref(i, j)) return "parallel distance matrix differs from serial";
        if (dm(i, j) != dm(j, i)) return "distance matrix is not symmetric";
        if (dm(i, j) > dm(i, k) + dm(k, j) + 1e-9) return "triangle inequality violated";
    }
    for (std::size_t i = 0; i < cloud.size(); ++i)
        if (dm(i, i) != 0.0) return "nonzero diagonal";
    return "";
}

std::string check_persistence_oracle() {
    std::mt19937 rng(7103);
    std::uniform_int_distribution<std::size_t> size(3, 8);
    for (int round = 0; round < 50; ++round) {
        PointCloud cloud = random_cloud(rng, size(rng));
        if (round % 7 == 0) {
            // duplicate a point: zero-distance edges must stay consistent
            std::vector<double> p(cloud.point(0).begin(), cloud.point(0).end());
            cloud.push_back(p, cloud.size());
        }
        const DistanceMatrix dm = distance_matrix(cloud);
        const RipsFiltration filt = build_filtration(dm);
        const Barcode h0 = persistence_h0(filt);
        const Barcode h1 = persistence_h1(filt);
        const auto [ref0, ref1] = reference::naive_persistence(dm);
        if (h0.intervals != ref0.intervals)
            return "H0 differs from the naive oracle (round " + std::to_string(round) + ")";
        if (h1.intervals != ref1.intervals)
            return "H1 differs from the naive oracle (round " + std::to_string(round) + ")";
    }
    return "";
}

std::string check_h0_count_law() {
    std::mt19937 rng(7104);
    for (std::size_t n : {2u, 3u, 7u, 19u, 40u}) {
        const PointCloud cloud = random_cloud(rng, n);
        const Barcode h0 = persistence_h0(build_filtration(distance_matrix(cloud)));
        if (h0.intervals.size() != n)
            return "H0 of a " + std::to_string(n) + "-point cloud has " +
                   std::to_string(h0.intervals.size()) + " intervals";
        std::size_t infinite = 0;
        for (const Interval& iv : h0.intervals)
            if (!iv.finite()) ++infinite;
        if (infinite != 1) return "H0 must contain exactly one infinite interval";
    }
    return "";
}

std::string check_scaling_covariance() {
    std::mt19937 rng(7105);
    const PointCloud cloud = random_cloud(rng, 12);
    PointCloud scaled = cloud;
    for (double& v : scaled.data) v *= 2.0; // power of two keeps scaling exact

    for (int dim = 0; dim <= 1; ++dim) {
        const auto barcode = [&](const PointCloud& c) {
            const RipsFiltration filt = build_filtration(distance_matrix(c));
            return dim == 0 ? persistence_h0(filt) : persistence_h1(filt);
        };
        const Barcode base = barcode(cloud);
        const Barcode big = barcode(scaled);
        if (base.intervals.size() != big.intervals.size())
            return "scaled cloud changed the interval count";
        for (std::size_t i = 0; i < base.intervals.size(); ++i) {
            if (big.intervals[i].birth != 2.0 * base.intervals[i].birth)
                return "birth did not scale with the metric";
            if (base.intervals[i].finite() &&
                big.intervals[i].death != 2.0 * base.intervals[i].death)
                return "death did not scale with the metric";
        }
    }
    return "";
}

std::string check_bv0_monotone() {
    std::mt19937 rng(7106);
    for (int round = 0; round < 6; ++round) {
        const PointCloud cloud = random_cloud(rng, 15);
        const Barcode h0 = persistence_h0(build_filtration(distance_matrix(cloud)));
        const Partition part = make_partition(std::max(max_finite_death(h0), 1e-9), 40);
        const BettiVector bv = betti_vector(h0, part);
        if (bv.counts.front() != cloud.size()) return "Bv_0 at epsilon 0 is not the point count";
        for (std::size_t i = 1; i < bv.counts.size(); ++i)
            if (bv.counts[i] > bv.counts[i - 1]) return "Bv_0 is not non-increasing";
        for (std::uint32_t c : bv.counts)
            if (c < 1) return "Bv_0 has an entry below 1";
    }
    return "";
}

std::string check_betti_recount() {
    std::mt19937 rng(7107);
    for (int round = 0; round < 12; ++round) {
        const PointCloud cloud = random_cloud(rng, 8);
        const DistanceMatrix dm = distance_matrix(cloud);
        const RipsFiltration filt = build_filtration(dm);
        const Barcode h0 = persistence_h0(filt);
        const Barcode h1 = persistence_h1(filt);
        const double top = std::max(max_finite_death(h0), max_finite_death(h1));
        const Partition part = make_partition(top > 0 ? 1.3 * top : 1.0, 17);
        const BettiVector bv0 = betti_vector(h0, part);
        const BettiVector bv1 = betti_vector(h1, part);
        for (std::size_t i = 0; i < part.size(); ++i) {
            if (bv0.counts[i] != reference::betti0_at(dm, part.values[i]))
                return "Bv_0 disagrees with the direct per-epsilon recount";
            if (bv1.counts[i] != reference::betti1_at(dm, part.values[i]))
                return "Bv_1 disagrees with the direct per-epsilon recount";
        }
    }
    return "";
}

std::string check_partition_refinement() {
    std::mt19937 rng(7108);
    const PointCloud cloud = random_cloud(rng, 14);
    const RipsFiltration filt = build_filtration(distance_matrix(cloud));
    for (const Barcode& bc : {persistence_h0(filt), persistence_h1(filt)}) {
        const Partition coarse = make_partition(1.5, 9);
        Partition fine;
        for (std::size_t i = 0; i < coarse.size(); ++i) {
            fine.values.push_back(coarse.values[i]);
            if (i + 1 < coarse.size())
                fine.values.push_back(0.5 * (coarse.values[i] + coarse.values[i + 1]));
        }
        const BettiVector a = betti_vector(bc, coarse);
        const BettiVector b = betti_vector(bc, fine);
        for (std::size_t i = 0; i < coarse.size(); ++i)
            if (a.counts[i] != b.counts[2 * i])
                return "refining the partition changed counts at existing values";
    }
    return "";
}

SweepConfig tiny_sweep_config() {
    SweepConfig cfg;
    cfg.system = "rossler";
    cfg.param_low = 0.38;
    cfg.param_high = 0.40;
    cfg.param_count = 4;
    cfg.integration.total_steps = 3000;
    cfg.integration.transient_steps = 600;
    cfg.subsample_count = 48;
    cfg.epsilon_count = 24;
    cfg.compute_lyapunov = true;
    cfg.lyapunov.total_time = 40.0;
    return cfg;
}

std::string check_l1_column_sum() {
    const SweepResult res = run_sweep(tiny_sweep_config());
    for (const auto& [dim, cm] : res.crocker) {
        for (std::size_t j = 0; j < cm.columns.size(); ++j) {
            if (!cm.columns[j]) continue;
            const double sum = static_cast<double>(l1_norm(*cm.columns[j]));
            if (sum != res.l1.at(dim)[j]) return "L1 curve is not the column sum";
        }
    }
    return "";
}

std::string check_sweep_determinism() {
    const SweepConfig cfg = tiny_sweep_config();
    const SweepResult a = run_sweep(cfg);
    const SweepResult b = run_sweep(cfg);
    for (const auto& [dim, cm] : a.crocker)
        if (crocker_csv(cm) != crocker_csv(b.crocker.at(dim)))
            return "repeat sweeps produced different CROCKER bytes";
    if (l1_csv(a) != l1_csv(b)) return "repeat sweeps produced different L1 bytes";
    if (lyapunov_csv(a) != lyapunov_csv(b)) return "repeat sweeps produced different lambda bytes";
    if (bifurcation_csv(a) != bifurcation_csv(b))
        return "repeat sweeps produced different bifurcation bytes";
    return "";
}

std::string check_lyapunov_linear() {
    IntegrationConfig cfg;
    cfg.initial_state = {1.0};
    cfg.step_size = 0.01;
    cfg.transient_steps = 0;
    LyapunovConfig lcfg;
    lcfg.total_time = 50.0;
    const LyapunovEstimate est = max_lyapunov(linear_decay_system(), cfg, lcfg);
    if (!(est.lambda >= -1.05 && est.lambda <= -0.95)) {
        std::ostringstream msg;
        msg << "lambda of dx/dt=-x is " << est.lambda << ", expected close to -1";
        return msg.str();
    }
    if (est.convergence_series.empty() || est.convergence_series.back() != est.lambda)
        return "convergence series must end at lambda";
    return "";
}

} // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& opt) {
    struct Check {
        const char* group;
        const char* name;
        std::function<std::string()> fn;
    };
    const std::vector<Check> checks = {
        {"systems", "rk4_convergence_order", check_rk4_order},
        {"systems", "transient_suffix", check_transient_suffix},
        {"systems", "repeat_determinism", check_integrate_determinism},
        {"pointcloud", "greedy_prefix", check_greedy_prefix},
        {"pointcloud", "distance_matrix", check_distance_matrix},
        {"persistence", "oracle_equivalence", check_persistence_oracle},
        {"persistence", "h0_count_law", check_h0_count_law},
        {"persistence", "scaling_covariance", check_scaling_covariance},
        {"crocker", "bv0_monotone", check_bv0_monotone},
        {"crocker", "betti_recount", check_betti_recount},
        {"crocker", "partition_refinement", check_partition_refinement},
        {"sweep", "l1_column_sum", check_l1_column_sum},
        {"sweep", "byte_identical_repeats", check_sweep_determinism},
        {"lyapunov", "linear_contraction", check_lyapunov_linear},
    };

    std::vector<CheckResult> results;
    for (const Check& check : checks) {
        if (!opt.filter.empty() &&
            std::string_view(check.group).find(opt.filter) == std::string_view::npos)
            continue;
        CheckResult r;
        r.group = check.group;
        r.name = check.name;
        try {
            r.detail = check.fn();
            r.passed = r.detail.empty();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        results.push_back(std::move(r));
    }
    if (opt.inject_fault)
        results.push_back({"selftest", "injected_fault", false, "fault injection requested"});
    return results;
}

int selftest_main(const SelftestOptions& opt, std::ostream& out) {
    const std::vector<CheckResult> results = run_selftest(opt);
    std::size_t passed = 0;
    for (const CheckResult& r : results) {
        out << (r.passed ? "PASS" : "FAIL") << "  " << r.group << "." << r.name;
        if (!r.passed) out << "  (" << r.detail << ")";
        out << "\n";
        if (r.passed) ++passed;
    }
    out << passed << "/" << results.size() << " checks passed\n";
    if (results.empty()) {
        out << "no checks matched filter '" << opt.filter << "'\n";
        return 1;
    }
    return passed == results.size() ? 0 : 1;
}

} // namespace crocker
