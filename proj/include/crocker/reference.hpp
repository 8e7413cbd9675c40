#pragma once

#include <cstdint>
#include <utility>

#include "crocker/lyapunov.hpp"
#include "crocker/persistence.hpp"
#include "crocker/pointcloud.hpp"

namespace crocker::reference {

/// Serial twins of the OpenMP kernels. Same contracts, no pragmas; tests and
/// the benchmark compare them against the parallel versions.
DistanceMatrix distance_matrix_serial(const PointCloud& cloud);
PointCloud greedy_subsample_serial(const PointCloud& cloud, std::size_t target_count,
                                   std::size_t seed_index = 0);

/// Naive persistence for dimensions 0 and 1: enumerates every simplex of the
/// 2-skeleton, assembles the full boundary matrix in one (value, dim, lex)
/// order and reduces it column by column. Deliberately shares no code with
/// persistence_h0/persistence_h1. Returns (H0 barcode, H1 barcode).
std::pair<Barcode, Barcode> naive_persistence(const DistanceMatrix& dm);

/// Betti numbers recomputed directly at a single threshold: components via
/// union-find over the edges at or below eps, loops from
/// E - V + C - rank(triangle boundary) over F2.
std::uint32_t betti0_at(const DistanceMatrix& dm, double eps);
std::uint32_t betti1_at(const DistanceMatrix& dm, double eps);

/// Direct finite-separation Lyapunov estimate: the attractor is split into
/// segments; at each segment start a companion is offset by sep0 along the
/// first axis, both trajectories run free for segment_time, and the log
/// separation growth rate is averaged over segments. No renormalization along
/// the evolved direction, so the estimate is independent of max_lyapunov.
LyapunovEstimate lyapunov_direct(const SystemSpec& spec, const IntegrationConfig& cfg,
                                 double segment_time, double total_time, double sep0);

} // namespace crocker::reference
