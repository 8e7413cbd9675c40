#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "crocker/errors.hpp"
#include "crocker/sweep.hpp"
#include "crocker/systems.hpp"

using namespace crocker;

namespace {

Trajectory trajectory_from(const std::vector<double>& xs) {
    Trajectory t;
    t.dimension = 1;
    t.step_size = 1.0;
    t.data = xs;
    return t;
}

std::size_t cluster_count(std::vector<double> values, double tolerance) {
    std::sort(values.begin(), values.end());
    std::size_t clusters = values.empty() ? 0 : 1;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] - values[i - 1] > tolerance) ++clusters;
    return clusters;
}

void register_pitchfork() {
    SystemSpec spec;
    spec.name = "pitchfork_test";
    spec.dimension = 1;
    spec.params = {{"p", 0.0}};
    spec.control_param = "p";
    spec.default_initial_state = {0.0};
    spec.default_step_size = 0.01;
    spec.vector_field = [](std::span<const double> s, const Params& p, std::span<double> out) {
        out[0] = p.get("p") + s[0] * s[0];
    };
    register_system(spec);
}

SweepConfig tiny_rossler() {
    SweepConfig cfg;
    cfg.system = "rossler";
    cfg.param_low = 0.38;
    cfg.param_high = 0.41;
    cfg.param_count = 4;
    cfg.integration.total_steps = 4000;
    cfg.integration.transient_steps = 800;
    cfg.subsample_count = 60;
    cfg.epsilon_count = 30;
    cfg.compute_lyapunov = true;
    cfg.lyapunov.total_time = 60.0;
    return cfg;
}

} // namespace

TEST_CASE("bifurcation samples of a monotone sequence are empty") {
    const Trajectory t = trajectory_from({0, 1, 2, 3, 4, 5});
    CHECK(bifurcation_samples(t, 0).empty());
}

TEST_CASE("bifurcation samples of a sine wave find its crests") {
    Trajectory t;
    t.dimension = 1;
    t.step_size = 0.01;
    for (int i = 0; i < 600; ++i) t.data.push_back(2.5 * std::sin(2.0 * M_PI * i / 200.0));
    const std::vector<double> maxima = bifurcation_samples(t, 0);
    REQUIRE(maxima.size() == 3);
    for (double v : maxima) CHECK(std::abs(v - 2.5) < 1e-3);
}

TEST_CASE("bifurcation samples reject a bad coordinate") {
    const Trajectory t = trajectory_from({0, 1, 0});
    CHECK_THROWS_AS(bifurcation_samples(t, 3), Error);
}

TEST_CASE("periodic rossler collapses to few local-maximum clusters") {
    const SystemSpec spec = make_rossler().with_param("a", 0.37);
    IntegrationConfig cfg;
    cfg.initial_state = spec.default_initial_state;
    cfg.step_size = 0.01;
    cfg.total_steps = 12000;
    cfg.transient_steps = 6000;
    const std::vector<double> maxima = bifurcation_samples(integrate(spec, cfg), 0);
    REQUIRE(!maxima.empty());
    CHECK(cluster_count(maxima, 0.05) <= 2);
}

TEST_CASE("pearson on exact linear relations") {
    const std::vector<double> xs = {1, 2, 3, 4, 5};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(2.0 * x + 3.0);
    CHECK(pearson(xs, ys) == doctest::Approx(1.0));

    ys.clear();
    for (double x : xs) ys.push_back(-x);
    CHECK(pearson(xs, ys) == doctest::Approx(-1.0));
}

TEST_CASE("pearson hand example") {
    const std::vector<double> xs = {1, 2, 3};
    const std::vector<double> ys = {1, 3, 2};
    CHECK(pearson(xs, ys) == doctest::Approx(0.5));
}

TEST_CASE("pearson drops nan pairs and rejects degenerate input") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const std::vector<double> xs = {1, 2, nan, 3, 4};
    const std::vector<double> ys = {2, 4, 100, nan, 8};
    CHECK(pearson(xs, ys) == doctest::Approx(1.0)); // surviving pairs are exactly linear

    const std::vector<double> flat = {1, 1, 1};
    const std::vector<double> rising = {1, 2, 3};
    CHECK_THROWS_AS(pearson(flat, rising), ZeroVarianceError);
    const std::vector<double> one = {1};
    CHECK_THROWS_AS(pearson(one, one), ZeroVarianceError);
    const std::vector<double> two = {1, 2};
    CHECK_THROWS_AS(pearson(two, rising), LengthMismatchError);
}

TEST_CASE("changepoint scores") {
    CrockerMatrix cm;
    cm.dimension = 0;
    cm.partition.values = {0.0, 1.0};

    SUBCASE("constant columns score zero") {
        cm.param_values = {1, 2, 3};
        cm.columns = {std::vector<std::uint32_t>{2, 2}, std::vector<std::uint32_t>{2, 2},
                      std::vector<std::uint32_t>{2, 2}};
        CHECK(changepoint_score(cm) == std::vector<double>{0, 0, 0});
    }
    SUBCASE("a single abrupt change scores once") {
        cm.param_values = {1, 2, 3, 4};
        cm.columns = {std::vector<std::uint32_t>{1, 1}, std::vector<std::uint32_t>{1, 1},
                      std::vector<std::uint32_t>{5, 1}, std::vector<std::uint32_t>{5, 1}};
        CHECK(changepoint_score(cm) == std::vector<double>{0, 0, 4, 0});
    }
    SUBCASE("hand-built columns") {
        cm.param_values = {1, 2, 3};
        cm.columns = {std::vector<std::uint32_t>{1, 1}, std::vector<std::uint32_t>{1, 2},
                      std::vector<std::uint32_t>{4, 4}};
        CHECK(changepoint_score(cm) == std::vector<double>{0, 1, 5});
    }
    SUBCASE("gap columns poison their neighbours only") {
        cm.param_values = {1, 2, 3};
        cm.columns = {std::vector<std::uint32_t>{1, 1}, std::nullopt,
                      std::vector<std::uint32_t>{1, 1}};
        const std::vector<double> scores = changepoint_score(cm);
        CHECK(scores[0] == 0.0);
        CHECK(std::isnan(scores[1]));
        CHECK(std::isnan(scores[2]));
    }
}

TEST_CASE("single-value sweep yields single-column matrices") {
    SweepConfig cfg = tiny_rossler();
    cfg.explicit_param_values = {0.39};
    cfg.compute_lyapunov = false;

    const SweepResult res = run_sweep(cfg);
    REQUIRE(res.param_values.size() == 1);
    for (const auto& [dim, cm] : res.crocker) {
        REQUIRE(cm.columns.size() == 1);
        CHECK(cm.columns[0].has_value());
        CHECK(res.l1.at(dim).size() == 1);
    }
}

TEST_CASE("rossler smoke sweep is consistent") {
    const SweepResult res = run_sweep(tiny_rossler());
    REQUIRE(res.param_values.size() == 4);
    CHECK(res.ok_count() == 4);

    for (int dim : {0, 1}) {
        const CrockerMatrix& cm = res.crocker.at(dim);
        REQUIRE(cm.partition.size() == 30);
        CHECK(res.d_max.at(dim) > 0.0);
        CHECK(cm.partition.values.back() == res.d_max.at(dim));

        // L1 curve equals the column sums
        for (std::size_t j = 0; j < 4; ++j) {
            REQUIRE(cm.columns[j].has_value());
            double sum = 0;
            for (std::uint32_t c : *cm.columns[j]) sum += c;
            CHECK(res.l1.at(dim)[j] == sum);
        }
    }

    // dim-0 columns: start at subsample size, non-increasing
    const CrockerMatrix& cm0 = res.crocker.at(0);
    for (const auto& column : cm0.columns) {
        CHECK(column->front() == 60);
        for (std::size_t i = 1; i < column->size(); ++i)
            CHECK((*column)[i] <= (*column)[i - 1]);
    }

    REQUIRE(res.lambda.size() == 4);
    for (double l : res.lambda) CHECK(std::isfinite(l));
    CHECK(res.pearson_lambda_l1.count(0) == 1);
    CHECK(res.pearson_lambda_l1.count(1) == 1);

    for (const auto& samples : res.bifurcation) CHECK(!samples.empty());
}

TEST_CASE("sweep order invariance under grid permutation") {
    SweepConfig cfg = tiny_rossler();
    cfg.compute_lyapunov = false;
    cfg.explicit_param_values = {0.38, 0.39, 0.40, 0.41};

    SweepConfig permuted = cfg;
    permuted.explicit_param_values = {0.40, 0.38, 0.41, 0.39};
    const std::vector<std::size_t> back = {1, 3, 0, 2}; // position of cfg value i in permuted

    const SweepResult a = run_sweep(cfg);
    const SweepResult b = run_sweep(permuted);

    for (int dim : {0, 1}) {
        const auto& ca = a.crocker.at(dim);
        const auto& cb = b.crocker.at(dim);
        CHECK(ca.partition.values == cb.partition.values);
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(*ca.columns[j] == *cb.columns[back[j]]);
            CHECK(a.l1.at(dim)[j] == b.l1.at(dim)[back[j]]);
        }
    }
    for (std::size_t j = 0; j < 4; ++j) CHECK(a.bifurcation[j] == b.bifurcation[back[j]]);
}

TEST_CASE("diverged parameter values propagate as gaps everywhere") {
    register_pitchfork();

    SweepConfig cfg;
    cfg.system = "pitchfork_test";
    cfg.explicit_param_values = {-1.0, -0.5, 1.0}; // x' = p + x^2 escapes for p > 0
    cfg.integration.total_steps = 2000;
    cfg.integration.transient_steps = 200;
    cfg.integration.divergence_bound = 1e4;
    cfg.subsample_count = 30;
    cfg.epsilon_count = 10;
    cfg.dimensions = {0};
    cfg.compute_lyapunov = true;
    cfg.lyapunov.total_time = 10.0;

    const SweepResult res = run_sweep(cfg);
    CHECK(res.ok(0));
    CHECK(res.ok(1));
    CHECK_FALSE(res.ok(2));
    CHECK(res.ok_count() == 2);

    const CrockerMatrix& cm = res.crocker.at(0);
    CHECK(cm.columns[0].has_value());
    CHECK(cm.columns[1].has_value());
    CHECK_FALSE(cm.columns[2].has_value());

    CHECK(std::isfinite(res.l1.at(0)[0]));
    CHECK(std::isfinite(res.l1.at(0)[1]));
    CHECK(std::isnan(res.l1.at(0)[2]));

    CHECK(std::isfinite(res.lambda[0]));
    CHECK(std::isnan(res.lambda[2]));
    CHECK(res.bifurcation[2].empty());
}

TEST_CASE("a sweep where every value diverges fails loudly") {
    register_pitchfork();

    SweepConfig cfg;
    cfg.system = "pitchfork_test";
    cfg.explicit_param_values = {0.5, 1.0};
    cfg.integration.total_steps = 2000;
    cfg.integration.transient_steps = 200;
    cfg.integration.divergence_bound = 1e4;
    cfg.subsample_count = 30;
    cfg.epsilon_count = 10;
    cfg.dimensions = {0};
    cfg.compute_lyapunov = false;

    CHECK_THROWS_AS(run_sweep(cfg), AllFailedError);
}

TEST_CASE("sweep config validation") {
    SweepConfig cfg;
    cfg.param_low = 1.0;
    cfg.param_high = 0.5;
    CHECK_THROWS_AS(cfg.validate(), Error);

    cfg = SweepConfig{};
    cfg.dimensions = {};
    CHECK_THROWS_AS(cfg.validate(), Error);

    cfg = SweepConfig{};
    cfg.dimensions = {2};
    CHECK_THROWS_AS(cfg.validate(), Error);

    cfg = SweepConfig{};
    cfg.system = "no_such_system";
    CHECK_THROWS_AS(run_sweep(cfg), Error);

    cfg = SweepConfig{};
    cfg.subsample_count = 1000000;
    CHECK_THROWS_AS(run_sweep(cfg), Error);
}

TEST_CASE("linspace hits both endpoints exactly") {
    const std::vector<double> v = linspace(0.37, 0.43, 60);
    REQUIRE(v.size() == 60);
    CHECK(v.front() == 0.37);
    CHECK(v.back() == 0.43);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
}
