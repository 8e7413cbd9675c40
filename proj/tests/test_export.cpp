#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "crocker/export.hpp"
#include "crocker/sweep.hpp"

using namespace crocker;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        fields.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return fields;
}

double parse(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

SweepConfig small_config() {
    SweepConfig cfg;
    cfg.system = "rossler";
    cfg.param_low = 0.38;
    cfg.param_high = 0.40;
    cfg.param_count = 3;
    cfg.integration.total_steps = 3000;
    cfg.integration.transient_steps = 500;
    cfg.subsample_count = 40;
    cfg.epsilon_count = 12;
    cfg.compute_lyapunov = true;
    cfg.lyapunov.total_time = 30.0;
    return cfg;
}

const SweepResult& small_result() {
    static const SweepResult res = run_sweep(small_config());
    return res;
}

} // namespace

TEST_CASE("format_double round-trips and uses the expected literals") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        const double v = dist(rng);
        const std::string s = format_double(v);
        double back = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(res.ec == std::errc{});
        CHECK(back == v);
        CHECK(s.find(',') == std::string::npos);
    }
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_double(51.0) == "51");
    CHECK(format_double(0.37) == "0.37");
}

TEST_CASE("crocker csv layout") {
    CrockerMatrix cm;
    cm.dimension = 0;
    cm.partition.values = {0.0, 0.5, 1.0};
    cm.param_values = {0.1, 0.2};
    cm.columns = {std::vector<std::uint32_t>{3, 2, 1}, std::nullopt};

    const auto lines = lines_of(crocker_csv(cm));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "epsilon,0.1,0.2");
    CHECK(lines[1] == "0,3,nan");
    CHECK(lines[2] == "0.5,2,nan");
    CHECK(lines[3] == "1,1,nan");
}

TEST_CASE("barcode csv serializes infinity as the literal inf") {
    Barcode bc;
    bc.dimension = 0;
    bc.intervals = {{0.0, 1.5}, {0.0, kInfiniteDeath}};
    const auto lines = lines_of(barcode_csv(bc));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "dimension,birth,death");
    CHECK(lines[1] == "0,0,1.5");
    CHECK(lines[2] == "0,0,inf");
}

TEST_CASE("sweep outputs parse back consistently") {
    const SweepResult& res = small_result();

    SUBCASE("l1 csv matches the result") {
        const auto lines = lines_of(l1_csv(res));
        REQUIRE(lines.size() == 4);
        CHECK(lines[0] == "param,l1_dim0,l1_dim1");
        for (std::size_t j = 0; j < 3; ++j) {
            const auto fields = fields_of(lines[j + 1]);
            REQUIRE(fields.size() == 3);
            CHECK(parse(fields[0]) == res.param_values[j]);
            CHECK(parse(fields[1]) == res.l1.at(0)[j]);
            CHECK(parse(fields[2]) == res.l1.at(1)[j]);
        }
    }
    SUBCASE("lyapunov csv has the converged flag") {
        const auto lines = lines_of(lyapunov_csv(res));
        REQUIRE(lines.size() == 4);
        CHECK(lines[0] == "param,lambda,converged");
        for (std::size_t j = 0; j < 3; ++j) {
            const auto fields = fields_of(lines[j + 1]);
            REQUIRE(fields.size() == 3);
            CHECK(parse(fields[1]) == res.lambda[j]);
            CHECK((fields[2] == "0" || fields[2] == "1"));
        }
    }
    SUBCASE("crocker csv reproduces every count") {
        for (int dim : {0, 1}) {
            const CrockerMatrix& cm = res.crocker.at(dim);
            const auto lines = lines_of(crocker_csv(cm));
            REQUIRE(lines.size() == cm.partition.size() + 1);
            for (std::size_t i = 0; i < cm.partition.size(); ++i) {
                const auto fields = fields_of(lines[i + 1]);
                REQUIRE(fields.size() == 4);
                CHECK(parse(fields[0]) == cm.partition.values[i]);
                for (std::size_t j = 0; j < 3; ++j)
                    CHECK(parse(fields[j + 1]) == static_cast<double>((*cm.columns[j])[i]));
            }
        }
    }
    SUBCASE("bifurcation csv lists one row per local maximum") {
        std::size_t rows = 0;
        for (const auto& samples : res.bifurcation) rows += samples.size();
        CHECK(lines_of(bifurcation_csv(res)).size() == rows + 1);
    }
    SUBCASE("summary names the pearson coefficients") {
        const std::string summary = summary_text(res);
        CHECK(summary.find("pearson_lambda_l1_dim0") != std::string::npos);
        CHECK(summary.find("pearson_lambda_l1_dim1") != std::string::npos);
        CHECK(summary.find("diverged_count: 0") != std::string::npos);
    }
}

TEST_CASE("pgm heatmap has a valid header and full payload") {
    const SweepResult& res = small_result();
    const PgmImage img = crocker_pgm(res.crocker.at(0));

    std::istringstream in(img.pgm);
    std::string magic;
    std::size_t width = 0, height = 0;
    int maxval = 0;
    in >> magic >> width >> height >> maxval;
    CHECK(magic == "P5");
    CHECK(width == 3);
    CHECK(height == 12);
    CHECK(maxval == 255);
    in.get(); // single whitespace before the raster
    std::string raster((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(raster.size() == width * height);

    CHECK(img.sidecar.find("gray scale") != std::string::npos);
}

TEST_CASE("svg heatmap carries axes and cells") {
    const SweepResult& res = small_result();
    const std::string svg = crocker_svg(res.crocker.at(1), "a");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<rect") != std::string::npos);
    CHECK(svg.find(">epsilon</text>") != std::string::npos);
    CHECK(svg.find(">a</text>") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}

TEST_CASE("repeat sweep exports are byte identical") {
    const SweepResult a = run_sweep(small_config());
    const SweepResult b = run_sweep(small_config());
    CHECK(l1_csv(a) == l1_csv(b));
    CHECK(lyapunov_csv(a) == lyapunov_csv(b));
    CHECK(bifurcation_csv(a) == bifurcation_csv(b));
    for (int dim : {0, 1}) {
        CHECK(crocker_csv(a.crocker.at(dim)) == crocker_csv(b.crocker.at(dim)));
        CHECK(crocker_pgm(a.crocker.at(dim)).pgm == crocker_pgm(b.crocker.at(dim)).pgm);
        CHECK(crocker_svg(a.crocker.at(dim), "a") == crocker_svg(b.crocker.at(dim), "a"));
    }
}

TEST_CASE("write_sweep_outputs creates the documented inventory") {
    const SweepResult& res = small_result();
    const auto dir = std::filesystem::temp_directory_path() / "crocker_export_test";
    std::filesystem::remove_all(dir);
    const auto files = write_sweep_outputs(dir, res);

    const std::vector<std::string> expected = {
        "crocker_dim0.csv", "crocker_dim0.pgm", "crocker_dim0.pgm.txt", "crocker_dim0.svg",
        "crocker_dim1.csv", "crocker_dim1.pgm", "crocker_dim1.pgm.txt", "crocker_dim1.svg",
        "l1_curves.csv",    "lyapunov.csv",     "bifurcation.csv",      "timings.csv",
        "summary.txt"};
    REQUIRE(files.size() == expected.size());
    for (std::size_t i = 0; i < files.size(); ++i) {
        CHECK(files[i].string() == expected[i]);
        CHECK(std::filesystem::exists(dir / files[i]));
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("fnv1a64 digest is stable and content sensitive") {
    const std::string a = "crocker";
    const std::string b = "crockes";
    CHECK(fnv1a64(a) == fnv1a64(a));
    CHECK(fnv1a64(a) != fnv1a64(b));

    const auto path = std::filesystem::temp_directory_path() / "crocker_digest_test.txt";
    write_file(path, a);
    CHECK(fnv1a64_file(path) == fnv1a64(a));
    std::filesystem::remove(path);
}
