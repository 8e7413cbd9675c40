#include "crocker/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "crocker/errors.hpp"

namespace crocker {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string cell(const std::optional<std::vector<std::uint32_t>>& column, std::size_t row) {
    return column ? std::to_string((*column)[row]) : "nan";
}

std::string fixed1(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

} // namespace

std::string crocker_csv(const CrockerMatrix& cm) {
    std::string out = "epsilon";
    for (double p : cm.param_values) out += "," + format_double(p);
    out += "\n";
    for (std::size_t i = 0; i < cm.partition.size(); ++i) {
        out += format_double(cm.partition.values[i]);
        for (const auto& column : cm.columns) out += "," + cell(column, i);
        out += "\n";
    }
    return out;
}

std::string l1_csv(const SweepResult& res) {
    std::string out = "param";
    for (const auto& [dim, curve] : res.l1) out += ",l1_dim" + std::to_string(dim);
    out += "\n";
    for (std::size_t j = 0; j < res.param_values.size(); ++j) {
        out += format_double(res.param_values[j]);
        for (const auto& [dim, curve] : res.l1) out += "," + format_double(curve[j]);
        out += "\n";
    }
    return out;
}

std::string lyapunov_csv(const SweepResult& res) {
    std::string out = "param,lambda,converged\n";
    for (std::size_t j = 0; j < res.param_values.size(); ++j) {
        const bool has = !std::isnan(res.lambda[j]);
        out += format_double(res.param_values[j]) + "," + format_double(res.lambda[j]) + "," +
               (has && res.lambda_converged[j] ? "1" : "0") + "\n";
    }
    return out;
}

std::string bifurcation_csv(const SweepResult& res) {
    std::string out = "param,value\n";
    for (std::size_t j = 0; j < res.param_values.size(); ++j)
        for (double v : res.bifurcation[j])
            out += format_double(res.param_values[j]) + "," + format_double(v) + "\n";
    return out;
}

std::string timings_csv(const SweepResult& res) {
    std::string out = "param,integrate_ms,subsample_ms,distance_ms,h0_ms,h1_ms,lyapunov_ms\n";
    for (std::size_t j = 0; j < res.param_values.size(); ++j) {
        const StageTiming& t = res.timings[j];
        out += format_double(res.param_values[j]) + "," + fixed3(t.integrate_ms) + "," +
               fixed3(t.subsample_ms) + "," + fixed3(t.distance_ms) + "," + fixed3(t.h0_ms) +
               "," + fixed3(t.h1_ms) + "," + fixed3(t.lyapunov_ms) + "\n";
    }
    return out;
}

std::string summary_text(const SweepResult& res) {
    std::ostringstream out;
    out << "system: " << res.config.system << "\n";
    out << "control_param: " << res.control_param << "\n";
    out << "param_values: " << res.param_values.size() << " from "
        << format_double(res.param_values.front()) << " to "
        << format_double(res.param_values.back()) << "\n";
    out << "subsample_count: " << res.config.subsample_count << "\n";
    out << "epsilon_count: " << res.config.epsilon_count << "\n";
    out << "dimensions:";
    for (int d : res.config.dimensions) out << " " << d;
    out << "\n";
    for (const auto& [dim, d_max] : res.d_max)
        out << "d_max_dim" << dim << ": " << format_double(d_max) << "\n";
    for (const auto& [dim, r] : res.pearson_lambda_l1)
        out << "pearson_lambda_l1_dim" << dim << ": " << format_double(r) << "\n";

    const std::size_t gaps = res.param_values.size() - res.ok_count();
    out << "diverged_count: " << gaps << "\n";
    if (gaps > 0) {
        out << "diverged_params:";
        for (std::size_t j = 0; j < res.param_values.size(); ++j)
            if (!res.ok(j)) out << " " << format_double(res.param_values[j]);
        out << "\n";
    }
    return out.str();
}

std::string barcode_csv(const Barcode& bc) {
    return barcode_csv(std::span<const Barcode>(&bc, 1));
}

std::string barcode_csv(std::span<const Barcode> barcodes) {
    std::string out = "dimension,birth,death\n";
    for (const Barcode& bc : barcodes)
        for (const Interval& iv : bc.intervals)
            out += std::to_string(bc.dimension) + "," + format_double(iv.birth) + "," +
                   format_double(iv.death) + "\n";
    return out;
}

std::string pointcloud_csv(const PointCloud& cloud) {
    std::string out;
    for (std::size_t c = 0; c < cloud.dimension; ++c) out += "c" + std::to_string(c) + ",";
    out += "source_index\n";
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        for (double v : p) out += format_double(v) + ",";
        out += std::to_string(cloud.source_indices[i]) + "\n";
    }
    return out;
}

PgmImage crocker_pgm(const CrockerMatrix& cm) {
    const std::size_t width = cm.columns.size();
    const std::size_t height = cm.partition.size();

    std::uint32_t max_count = 1;
    for (const auto& column : cm.columns)
        if (column)
            for (std::uint32_t c : *column) max_count = std::max(max_count, c);

    PgmImage img;
    img.pgm = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    img.pgm.reserve(img.pgm.size() + width * height);
    for (std::size_t row = 0; row < height; ++row) {
        const std::size_t eps_index = height - 1 - row; // largest epsilon on top
        for (std::size_t col = 0; col < width; ++col) {
            std::uint32_t count = 0;
            if (cm.columns[col]) count = (*cm.columns[col])[eps_index];
            const auto pixel = static_cast<unsigned char>(
                std::lround(255.0 * static_cast<double>(count) / static_cast<double>(max_count)));
            img.pgm.push_back(static_cast<char>(pixel));
        }
    }

    std::ostringstream side;
    side << "crocker heatmap, homology dimension " << cm.dimension << "\n";
    side << "columns: " << width << " parameter values from "
         << format_double(cm.param_values.front()) << " to "
         << format_double(cm.param_values.back()) << ", left to right\n";
    side << "rows: " << height << " epsilon values from "
         << format_double(cm.partition.values.back()) << " (top) down to "
         << format_double(cm.partition.values.front()) << "\n";
    side << "gray scale: pixel = round(255 * count / " << max_count << ")\n";
    side << "gap columns (diverged runs) are written as 0\n";
    img.sidecar = side.str();
    return img;
}

std::string crocker_svg(const CrockerMatrix& cm, const std::string& param_name) {
    const std::size_t cols = cm.columns.size();
    const std::size_t rows = cm.partition.size();

    const double margin_left = 70, margin_right = 25, margin_top = 30, margin_bottom = 50;
    const double plot_w = 720, plot_h = 420;
    const double width = margin_left + plot_w + margin_right;
    const double height = margin_top + plot_h + margin_bottom;
    const double cell_w = plot_w / static_cast<double>(cols);
    const double cell_h = plot_h / static_cast<double>(rows);

    std::uint32_t max_count = 1;
    for (const auto& column : cm.columns)
        if (column)
            for (std::uint32_t c : *column) max_count = std::max(max_count, c);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << margin_left << "\" y=\"20\" font-family=\"sans-serif\" "
           "font-size=\"14\">CROCKER, dimension "
        << cm.dimension << " (max count " << max_count << ")</text>\n";

    for (std::size_t j = 0; j < cols; ++j) {
        if (!cm.columns[j]) continue;
        const auto& column = *cm.columns[j];
        for (std::size_t i = 0; i < rows; ++i) {
            const int shade =
                255 - static_cast<int>(std::lround(255.0 * static_cast<double>(column[i]) /
                                                   static_cast<double>(max_count)));
            const double x = margin_left + cell_w * static_cast<double>(j);
            const double y = margin_top + plot_h - cell_h * static_cast<double>(i + 1);
            svg << "<rect x=\"" << fixed1(x) << "\" y=\"" << fixed1(y) << "\" width=\""
                << fixed1(cell_w + 0.5) << "\" height=\"" << fixed1(cell_h + 0.5)
                << "\" fill=\"rgb(" << shade << "," << shade << "," << shade << ")\"/>\n";
        }
    }

    // axes
    svg << "<line x1=\"" << margin_left << "\" y1=\"" << margin_top << "\" x2=\"" << margin_left
        << "\" y2=\"" << margin_top + plot_h << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << margin_left << "\" y1=\"" << margin_top + plot_h << "\" x2=\""
        << margin_left + plot_w << "\" y2=\"" << margin_top + plot_h
        << "\" stroke=\"black\"/>\n";

    const int n_ticks = 5;
    for (int t = 0; t <= n_ticks; ++t) {
        const double frac = static_cast<double>(t) / n_ticks;
        const double px = cm.param_values.front() +
                          frac * (cm.param_values.back() - cm.param_values.front());
        const double x = margin_left + frac * plot_w;
        svg << "<line x1=\"" << fixed1(x) << "\" y1=\"" << margin_top + plot_h << "\" x2=\""
            << fixed1(x) << "\" y2=\"" << margin_top + plot_h + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fixed1(x) << "\" y=\"" << margin_top + plot_h + 20
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << fixed3(px) << "</text>\n";

        const double ey = cm.partition.values.front() +
                          frac * (cm.partition.values.back() - cm.partition.values.front());
        const double y = margin_top + plot_h - frac * plot_h;
        svg << "<line x1=\"" << margin_left - 5 << "\" y1=\"" << fixed1(y) << "\" x2=\""
            << margin_left << "\" y2=\"" << fixed1(y) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << margin_left - 8 << "\" y=\"" << fixed1(y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << fixed3(ey)
            << "</text>\n";
    }
    svg << "<text x=\"" << margin_left + plot_w / 2 << "\" y=\"" << height - 10
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" << param_name
        << "</text>\n";
    svg << "<text x=\"18\" y=\"" << margin_top + plot_h / 2
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 "
        << margin_top + plot_h / 2 << ")\">epsilon</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::uint64_t fnv1a64(std::span<const char> bytes) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a64(content);
}

std::vector<std::filesystem::path> write_sweep_outputs(const std::filesystem::path& dir,
                                                       const SweepResult& res) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");

    std::vector<std::filesystem::path> files;
    const auto emit = [&](const std::string& name, const std::string& content) {
        write_file(dir / name, content);
        files.emplace_back(name);
    };

    for (const auto& [dim, cm] : res.crocker) {
        const std::string stem = "crocker_dim" + std::to_string(dim);
        emit(stem + ".csv", crocker_csv(cm));
        const PgmImage img = crocker_pgm(cm);
        emit(stem + ".pgm", img.pgm);
        emit(stem + ".pgm.txt", img.sidecar);
        emit(stem + ".svg", crocker_svg(cm, res.control_param));
    }
    emit("l1_curves.csv", l1_csv(res));
    if (!res.lambda.empty()) emit("lyapunov.csv", lyapunov_csv(res));
    emit("bifurcation.csv", bifurcation_csv(res));
    emit("timings.csv", timings_csv(res));
    emit("summary.txt", summary_text(res));
    return files;
}

} // namespace crocker
