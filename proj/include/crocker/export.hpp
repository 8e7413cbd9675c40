#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "crocker/betti.hpp"
#include "crocker/persistence.hpp"
#include "crocker/pointcloud.hpp"
#include "crocker/sweep.hpp"

namespace crocker {

/// Shortest round-trip decimal form; "inf"/"-inf"/"nan" literals, '.' decimal
/// separator, no locale dependence.
std::string format_double(double v);

// In-memory builders so determinism tests can compare bytes directly.
std::string crocker_csv(const CrockerMatrix& cm);
std::string l1_csv(const SweepResult& res);
std::string lyapunov_csv(const SweepResult& res);
std::string bifurcation_csv(const SweepResult& res);
std::string timings_csv(const SweepResult& res);
std::string summary_text(const SweepResult& res);
std::string barcode_csv(const Barcode& bc);
std::string barcode_csv(std::span<const Barcode> barcodes);
std::string pointcloud_csv(const PointCloud& cloud);

/// 8-bit binary PGM of a CROCKER matrix: one column per parameter value, one
/// row per partition value with the largest epsilon on top, counts linearly
/// rescaled so the max maps to 255. The returned sidecar text records the
/// scale and orientation.
struct PgmImage {
    std::string pgm;
    std::string sidecar;
};
PgmImage crocker_pgm(const CrockerMatrix& cm);

std::string crocker_svg(const CrockerMatrix& cm, const std::string& param_name);

void write_file(const std::filesystem::path& path, std::string_view content);

std::uint64_t fnv1a64(std::span<const char> bytes);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

/// Writes the whole sweep output directory (CSV curves, summary, heatmaps)
/// and returns the files written, relative to dir.
std::vector<std::filesystem::path> write_sweep_outputs(const std::filesystem::path& dir,
                                                       const SweepResult& res);

} // namespace crocker
