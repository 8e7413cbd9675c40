#include "crocker/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "crocker/errors.hpp"

namespace crocker::reference {

DistanceMatrix distance_matrix_serial(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    if (n == 0) throw Error("distance_matrix requires a non-empty cloud");
    DistanceMatrix dm(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) dm.set(i, j, euclidean(cloud.point(i), cloud.point(j)));
    return dm;
}

PointCloud greedy_subsample_serial(const PointCloud& cloud, std::size_t target_count,
                                   std::size_t seed_index) {
    const std::size_t n = cloud.size();
    if (target_count == 0) throw Error("target_count must be positive");
    if (target_count > n)
        throw TargetTooLargeError("target_count " + std::to_string(target_count) +
                                  " exceeds cloud size " + std::to_string(n));
    if (seed_index >= n) throw Error("seed_index out of range");

    std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
    std::vector<char> selected(n, 0);

    PointCloud out;
    out.dimension = cloud.dimension;

    std::size_t current = seed_index;
    for (std::size_t round = 0; round < target_count; ++round) {
        selected[current] = 1;
        out.push_back(cloud.point(current), cloud.source_indices[current]);
        if (round + 1 == target_count) break;

        std::size_t best = n;
        double best_dist = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (selected[i]) continue;
            min_dist[i] = std::min(min_dist[i], euclidean(cloud.point(i), cloud.point(current)));
            if (min_dist[i] > best_dist ||
                (min_dist[i] == best_dist && cloud.source_indices[i] < cloud.source_indices[best]))
                best = i, best_dist = min_dist[i];
        }
        current = best;
    }
    return out;
}

namespace {

struct Simplex {
    int dim;                        // 0, 1 or 2
    double value;                   // filtration value
    std::array<std::uint32_t, 3> v; // sorted vertices, unused slots = UINT32_MAX
};

constexpr std::uint32_t kUnused = std::numeric_limits<std::uint32_t>::max();

bool simplex_order(const Simplex& a, const Simplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.v < b.v;
}

} // namespace

std::pair<Barcode, Barcode> naive_persistence(const DistanceMatrix& dm) {
    const std::uint32_t n = static_cast<std::uint32_t>(dm.size());
    if (n == 0) throw Error("naive_persistence requires a non-empty distance matrix");

    std::vector<Simplex> simplices;
    for (std::uint32_t i = 0; i < n; ++i) simplices.push_back({0, 0.0, {i, kUnused, kUnused}});
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            simplices.push_back({1, dm(i, j), {i, j, kUnused}});
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            for (std::uint32_t k = j + 1; k < n; ++k) {
                const double v = std::max(dm(i, j), std::max(dm(i, k), dm(j, k)));
                simplices.push_back({2, v, {i, j, k}});
            }
    std::sort(simplices.begin(), simplices.end(), simplex_order);

    const std::size_t total = simplices.size();
    const auto find_position = [&](int dim, std::array<std::uint32_t, 3> verts) {
        for (std::size_t c = 0; c < total; ++c)
            if (simplices[c].dim == dim && simplices[c].v == verts) return c;
        throw Error("face lookup failed");
    };

    // Full boundary matrix: one column per simplex, rows are column indices
    // of its faces.
    std::vector<std::vector<std::size_t>> columns(total);
    for (std::size_t c = 0; c < total; ++c) {
        const Simplex& s = simplices[c];
        if (s.dim == 1) {
            columns[c] = {find_position(0, {s.v[0], kUnused, kUnused}),
                          find_position(0, {s.v[1], kUnused, kUnused})};
        } else if (s.dim == 2) {
            columns[c] = {find_position(1, {s.v[0], s.v[1], kUnused}),
                          find_position(1, {s.v[0], s.v[2], kUnused}),
                          find_position(1, {s.v[1], s.v[2], kUnused})};
        }
        std::sort(columns[c].begin(), columns[c].end());
    }

    std::vector<std::int64_t> pivot_of(total, -1); // row -> column with that low
    std::vector<std::size_t> scratch;
    for (std::size_t c = 0; c < total; ++c) {
        while (!columns[c].empty() && pivot_of[columns[c].back()] >= 0) {
            const auto& other = columns[static_cast<std::size_t>(pivot_of[columns[c].back()])];
            scratch.clear();
            std::set_symmetric_difference(columns[c].begin(), columns[c].end(), other.begin(),
                                          other.end(), std::back_inserter(scratch));
            columns[c].swap(scratch);
        }
        if (!columns[c].empty()) pivot_of[columns[c].back()] = static_cast<std::int64_t>(c);
    }

    Barcode h0, h1;
    h0.dimension = 0;
    h1.dimension = 1;
    std::vector<char> is_pivot_row(total, 0);
    for (std::size_t c = 0; c < total; ++c)
        if (!columns[c].empty()) is_pivot_row[columns[c].back()] = 1;

    for (std::size_t c = 0; c < total; ++c) {
        if (!columns[c].empty()) {
            const std::size_t born = columns[c].back();
            const Simplex& b = simplices[born];
            const Simplex& d = simplices[c];
            if (b.dim == 0) h0.intervals.push_back({b.value, d.value});
            if (b.dim == 1 && b.value < d.value) h1.intervals.push_back({b.value, d.value});
        } else if (!is_pivot_row[c]) {
            // essential class
            if (simplices[c].dim == 0) h0.intervals.push_back({simplices[c].value, kInfiniteDeath});
            if (simplices[c].dim == 1) h1.intervals.push_back({simplices[c].value, kInfiniteDeath});
        }
    }

    const auto canonical = [](Barcode& bc) {
        std::sort(bc.intervals.begin(), bc.intervals.end(),
                  [](const Interval& a, const Interval& b) {
                      return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
                  });
    };
    canonical(h0);
    canonical(h1);
    return {std::move(h0), std::move(h1)};
}

std::uint32_t betti0_at(const DistanceMatrix& dm, double eps) {
    const std::size_t n = dm.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (dm(i, j) <= eps) parent[find(i)] = find(j);

    std::uint32_t components = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (find(i) == i) ++components;
    return components;
}

std::uint32_t betti1_at(const DistanceMatrix& dm, double eps) {
    const std::uint32_t n = static_cast<std::uint32_t>(dm.size());

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::int64_t> edge_index(static_cast<std::size_t>(n) * n, -1);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            if (dm(i, j) <= eps) {
                edge_index[static_cast<std::size_t>(i) * n + j] =
                    static_cast<std::int64_t>(edges.size());
                edges.emplace_back(i, j);
            }

    // rank of the triangle boundary over F2, Gaussian elimination
    std::vector<std::vector<std::int64_t>> rows_of;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            for (std::uint32_t k = j + 1; k < n; ++k) {
                const double v = std::max(dm(i, j), std::max(dm(i, k), dm(j, k)));
                if (v > eps) continue;
                std::vector<std::int64_t> col = {edge_index[static_cast<std::size_t>(i) * n + j],
                                                 edge_index[static_cast<std::size_t>(i) * n + k],
                                                 edge_index[static_cast<std::size_t>(j) * n + k]};
                std::sort(col.begin(), col.end());
                rows_of.push_back(std::move(col));
            }

    std::uint32_t rank = 0;
    std::vector<std::int64_t> pivot_col(edges.size(), -1);
    std::vector<std::int64_t> scratch;
    for (std::size_t c = 0; c < rows_of.size(); ++c) {
        auto& col = rows_of[c];
        while (!col.empty() && pivot_col[static_cast<std::size_t>(col.back())] >= 0) {
            const auto& other =
                rows_of[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(col.back())])];
            scratch.clear();
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                          std::back_inserter(scratch));
            col.swap(scratch);
        }
        if (!col.empty()) {
            pivot_col[static_cast<std::size_t>(col.back())] = static_cast<std::int64_t>(c);
            ++rank;
        }
    }

    const std::int64_t euler_cycles = static_cast<std::int64_t>(edges.size()) -
                                      static_cast<std::int64_t>(n) +
                                      static_cast<std::int64_t>(betti0_at(dm, eps));
    return static_cast<std::uint32_t>(euler_cycles - static_cast<std::int64_t>(rank));
}

LyapunovEstimate lyapunov_direct(const SystemSpec& spec, const IntegrationConfig& cfg,
                                 double segment_time, double total_time, double sep0) {
    spec.validate();
    cfg.validate(spec.dimension);
    if (!(segment_time > 0.0) || !(total_time >= segment_time) || !(sep0 > 0.0))
        throw Error("invalid direct-method settings");

    const double h = cfg.step_size;
    const std::size_t steps_per_segment =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(segment_time / h)));
    const std::size_t n_segments = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(total_time / segment_time)));
    const double seg_time = static_cast<double>(steps_per_segment) * h;

    std::vector<double> fiducial = cfg.initial_state;
    Rk4Stepper stepper(spec, h);
    std::size_t step = 0;
    for (std::size_t s = 0; s < cfg.transient_steps; ++s) {
        stepper.step(fiducial);
        ++step;
        for (double v : fiducial)
            if (!std::isfinite(v) || std::abs(v) > cfg.divergence_bound)
                throw DivergenceError("trajectory diverged at step " + std::to_string(step), step);
    }

    LyapunovEstimate est;
    est.renorm_interval = seg_time;
    est.total_time = static_cast<double>(n_segments) * seg_time;
    est.convergence_series.reserve(n_segments);

    std::vector<double> companion(spec.dimension);
    double slope_sum = 0.0;
    for (std::size_t seg = 1; seg <= n_segments; ++seg) {
        companion = fiducial;
        companion[0] += sep0;
        for (std::size_t s = 0; s < steps_per_segment; ++s) {
            stepper.step(fiducial);
            stepper.step(companion);
            ++step;
            for (double v : fiducial)
                if (!std::isfinite(v) || std::abs(v) > cfg.divergence_bound)
                    throw DivergenceError("trajectory diverged at step " + std::to_string(step),
                                          step);
        }
        double sep = euclidean(fiducial, companion);
        if (sep <= 0.0) sep = std::numeric_limits<double>::min();
        slope_sum += std::log(sep / sep0) / seg_time;
        est.convergence_series.push_back(slope_sum / static_cast<double>(seg));
    }

    est.lambda = est.convergence_series.back();
    est.converged = true;
    return est;
}

} // namespace crocker::reference
