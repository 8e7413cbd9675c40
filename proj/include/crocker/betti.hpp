#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crocker/persistence.hpp"

namespace crocker {

/// Strictly increasing proximity values, starting at or above 0.
struct Partition {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    void validate() const;
};

/// count equally spaced values from 0 to d_max inclusive.
/// Throws DegenerateRangeError when d_max <= 0.
Partition make_partition(double d_max, std::size_t count);

/// Betti numbers read off a barcode along a partition: counts[i] is the
/// number of intervals with birth <= eps_i < death (infinite deaths count at
/// every eps_i).
struct BettiVector {
    int dimension = 0;
    Partition partition;
    std::vector<std::uint32_t> counts;
};

BettiVector betti_vector(const Barcode& bc, const Partition& part);

/// Betti vectors of a parameter-indexed family of barcodes over one shared
/// partition, one column per parameter value. A disengaged column marks a
/// parameter value with no data (diverged run).
struct CrockerMatrix {
    int dimension = 0;
    Partition partition;
    std::vector<double> param_values;
    std::vector<std::optional<std::vector<std::uint32_t>>> columns;
};

CrockerMatrix crocker_matrix(const std::vector<Barcode>& barcodes, const Partition& part,
                             std::vector<double> param_values);

std::uint64_t l1_norm(std::span<const std::uint32_t> counts);
std::uint64_t l1_norm(const BettiVector& bv);

} // namespace crocker
