#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crocker/systems.hpp"

namespace crocker {

/// Points in R^dim, row major, with the trajectory indices they came from.
struct PointCloud {
    std::size_t dimension = 0;
    std::vector<double> data;
    std::vector<std::size_t> source_indices;

    std::size_t size() const noexcept { return dimension == 0 ? 0 : data.size() / dimension; }
    std::span<const double> point(std::size_t i) const {
        return {data.data() + i * dimension, dimension};
    }
    void push_back(std::span<const double> p, std::size_t source_index);

    static PointCloud from_trajectory(const Trajectory& traj);
};

double euclidean(std::span<const double> a, std::span<const double> b);

/// Symmetric pairwise distances with zero diagonal, stored as a full square.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double d) {
        entries_[i * n_ + j] = d;
        entries_[j * n_ + i] = d;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

/// Farthest-point (greedy permutation) selection. Output order is selection
/// order, starting at seed_index; ties go to the smallest source index.
/// Distance updates run OpenMP-parallel; see reference::greedy_subsample_serial
/// for the serial twin used in tests.
PointCloud greedy_subsample(const PointCloud& cloud, std::size_t target_count,
                            std::size_t seed_index = 0);

/// All-pairs Euclidean distances, OpenMP-parallel over rows.
DistanceMatrix distance_matrix(const PointCloud& cloud);

/// Max over cloud points of the distance to the nearest subset point.
double covering_radius(const PointCloud& cloud, const PointCloud& subset);

} // namespace crocker
