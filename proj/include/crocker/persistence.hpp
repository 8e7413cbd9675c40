#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "crocker/pointcloud.hpp"

namespace crocker {

inline constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct RipsEdge {
    std::uint32_t i = 0;
    std::uint32_t j = 0; // i < j
    double value = 0.0;
};

/// Vietoris-Rips filtration of a finite metric space. Edges are sorted
/// ascending by (value, i, j); triangle filtration values are implicit, the
/// max of the three edge values.
struct RipsFiltration {
    std::uint32_t n_vertices = 0;
    std::vector<RipsEdge> edges;
};

RipsFiltration build_filtration(const DistanceMatrix& dm);

struct Interval {
    double birth = 0.0;
    double death = kInfiniteDeath;

    bool finite() const noexcept { return death != kInfiniteDeath; }
    bool operator==(const Interval&) const = default;
};

/// Multiset of (birth, death) intervals in one homology dimension, stored
/// sorted by (birth, death) so equal barcodes compare equal.
struct Barcode {
    int dimension = 0;
    std::vector<Interval> intervals;
};

/// Connected-component persistence via union-find over the edges in
/// filtration order. Every vertex is born at 0; when two components merge the
/// one with the larger root index dies. Yields n-1 finite intervals plus one
/// (0, inf).
Barcode persistence_h0(const RipsFiltration& filt);

/// Loop persistence from boundary-matrix reduction over F2 on the 2-skeleton.
/// Triangles are enumerated implicitly and processed in (value, i, j, k)
/// order; zero-length intervals are discarded. Throws ComplexTooLargeError
/// when n_vertices exceeds vertex_cap (triangle count grows as n^3).
Barcode persistence_h1(const RipsFiltration& filt, std::size_t vertex_cap = 600);

/// Maximum finite death value; 0 when no finite interval exists.
double max_finite_death(const Barcode& bc);

} // namespace crocker
