// Compares the OpenMP kernels against their serial reference twins and a
// jobs=1 sweep against the machine-parallel one.

#include <chrono>
#include <cstdio>
#include <string>

#include "crocker/parallel.hpp"
#include "crocker/pointcloud.hpp"
#include "crocker/reference.hpp"
#include "crocker/sweep.hpp"
#include "crocker/systems.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
double time_ms(Fn&& fn, int repeats = 3) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = Clock::now();
        fn();
        const double ms =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        if (ms < best) best = ms;
    }
    return best;
}

void report(const std::string& name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n", name.c_str(),
                serial_ms, parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main() {
    using namespace crocker;

    std::printf("workers available: %d\n\n", effective_jobs(0));

    const SystemSpec spec = make_rossler();
    IntegrationConfig cfg;
    cfg.initial_state = spec.default_initial_state;
    cfg.step_size = 0.01;
    cfg.total_steps = 14000;
    cfg.transient_steps = 2000;
    const Trajectory traj = integrate(spec, cfg);
    const PointCloud cloud = PointCloud::from_trajectory(traj);

    {
        const double serial =
            time_ms([&] { (void)reference::greedy_subsample_serial(cloud, 400, 0); });
        const double parallel = time_ms([&] { (void)greedy_subsample(cloud, 400, 0); });
        report("greedy_subsample 12k->400", serial, parallel);
    }

    const PointCloud sub = greedy_subsample(cloud, 2000, 0);
    {
        const double serial = time_ms([&] { (void)reference::distance_matrix_serial(sub); });
        const double parallel = time_ms([&] { (void)distance_matrix(sub); });
        report("distance_matrix 2000pts", serial, parallel);
    }

    {
        SweepConfig sweep;
        sweep.system = "rossler";
        sweep.param_low = 0.37;
        sweep.param_high = 0.43;
        sweep.param_count = 8;
        sweep.subsample_count = 120;
        sweep.epsilon_count = 50;
        sweep.compute_lyapunov = true;
        sweep.lyapunov.total_time = 100.0;

        SweepConfig one = sweep;
        one.jobs = 1;
        const double serial = time_ms([&] { (void)run_sweep(one); }, 1);
        const double parallel = time_ms([&] { (void)run_sweep(sweep); }, 1);
        report("run_sweep 8 params", serial, parallel);
    }
    return 0;
}
