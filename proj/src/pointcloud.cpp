#include "crocker/pointcloud.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "crocker/errors.hpp"
#include "crocker/parallel.hpp"

namespace crocker {

int effective_jobs(int requested) {
    if (requested > 0) return requested;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void PointCloud::push_back(std::span<const double> p, std::size_t source_index) {
    // p may alias our own storage (appending an existing point)
    const std::vector<double> copy(p.begin(), p.end());
    data.insert(data.end(), copy.begin(), copy.end());
    source_indices.push_back(source_index);
}

PointCloud PointCloud::from_trajectory(const Trajectory& traj) {
    PointCloud cloud;
    cloud.dimension = traj.dimension;
    cloud.data = traj.data;
    cloud.source_indices.resize(traj.size());
    std::iota(cloud.source_indices.begin(), cloud.source_indices.end(), std::size_t{0});
    return cloud;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

PointCloud greedy_subsample(const PointCloud& cloud, std::size_t target_count,
                            std::size_t seed_index) {
    const std::size_t n = cloud.size();
    if (target_count == 0) throw Error("target_count must be positive");
    if (target_count > n)
        throw TargetTooLargeError("target_count " + std::to_string(target_count) +
                                  " exceeds cloud size " + std::to_string(n));
    if (seed_index >= n) throw Error("seed_index out of range");

    // min_dist[i] = distance from point i to the selected set so far.
    std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
    std::vector<char> selected(n, 0);

    PointCloud out;
    out.dimension = cloud.dimension;
    out.data.reserve(target_count * cloud.dimension);
    out.source_indices.reserve(target_count);

    std::size_t current = seed_index;
    for (std::size_t round = 0; round < target_count; ++round) {
        selected[current] = 1;
        out.push_back(cloud.point(current), cloud.source_indices[current]);
        if (round + 1 == target_count) break;

        const auto current_point = cloud.point(current);
        const std::int64_t nn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < nn; ++i) {
            if (selected[i]) continue;
            const double d = euclidean(cloud.point(static_cast<std::size_t>(i)), current_point);
            if (d < min_dist[i]) min_dist[i] = d;
        }

        // Farthest point next; ties break to the smallest source index.
        std::size_t best = n;
        double best_dist = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (selected[i]) continue;
            if (min_dist[i] > best_dist ||
                (min_dist[i] == best_dist && cloud.source_indices[i] < cloud.source_indices[best]))
                best = i, best_dist = min_dist[i];
        }
        current = best;
    }
    return out;
}

DistanceMatrix distance_matrix(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    if (n == 0) throw Error("distance_matrix requires a non-empty cloud");

    DistanceMatrix dm(n);
    const std::int64_t nn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < nn; ++i) {
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j)
            dm.set(static_cast<std::size_t>(i), j,
                   euclidean(cloud.point(static_cast<std::size_t>(i)), cloud.point(j)));
    }
    return dm;
}

double covering_radius(const PointCloud& cloud, const PointCloud& subset) {
    double radius = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < subset.size(); ++j)
            nearest = std::min(nearest, euclidean(cloud.point(i), subset.point(j)));
        radius = std::max(radius, nearest);
    }
    return radius;
}

} // namespace crocker
