#include "crocker/betti.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "crocker/errors.hpp"

namespace crocker {

void Partition::validate() const {
    if (values.empty()) throw Error("partition must be non-empty");
    if (values.front() < 0.0) throw Error("partition values must be non-negative");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1])) throw Error("partition must be strictly increasing");
}

Partition make_partition(double d_max, std::size_t count) {
    if (!(d_max > 0.0))
        throw DegenerateRangeError("d_max must be positive, got " + std::to_string(d_max));
    if (count < 2) throw Error("partition needs at least 2 values");

    Partition part;
    part.values.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        part.values[i] = d_max * static_cast<double>(i) / static_cast<double>(count - 1);
    part.values.front() = 0.0;
    part.values.back() = d_max;
    return part;
}

BettiVector betti_vector(const Barcode& bc, const Partition& part) {
    part.validate();

    BettiVector bv;
    bv.dimension = bc.dimension;
    bv.partition = part;
    bv.counts.assign(part.size(), 0);
    for (const Interval& iv : bc.intervals) {
        for (std::size_t i = 0; i < part.size(); ++i) {
            const double eps = part.values[i];
            if (iv.birth <= eps && eps < iv.death) ++bv.counts[i];
        }
    }
    return bv;
}

CrockerMatrix crocker_matrix(const std::vector<Barcode>& barcodes, const Partition& part,
                             std::vector<double> param_values) {
    if (barcodes.size() != param_values.size())
        throw LengthMismatchError("got " + std::to_string(barcodes.size()) + " barcodes for " +
                                  std::to_string(param_values.size()) + " parameter values");
    part.validate();

    CrockerMatrix cm;
    cm.dimension = barcodes.empty() ? 0 : barcodes.front().dimension;
    cm.partition = part;
    cm.param_values = std::move(param_values);
    cm.columns.reserve(barcodes.size());
    for (const Barcode& bc : barcodes) {
        if (bc.dimension != cm.dimension)
            throw LengthMismatchError("barcodes mix homology dimensions");
        cm.columns.emplace_back(betti_vector(bc, part).counts);
    }
    return cm;
}

std::uint64_t l1_norm(std::span<const std::uint32_t> counts) {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t l1_norm(const BettiVector& bv) { return l1_norm(bv.counts); }

} // namespace crocker
