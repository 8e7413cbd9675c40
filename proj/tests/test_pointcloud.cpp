#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "crocker/errors.hpp"
#include "crocker/pointcloud.hpp"
#include "crocker/reference.hpp"

using namespace crocker;

namespace {

PointCloud line_cloud(std::initializer_list<double> xs) {
    PointCloud cloud;
    cloud.dimension = 1;
    std::size_t i = 0;
    for (double x : xs) {
        const double p[1] = {x};
        cloud.push_back(p, i++);
    }
    return cloud;
}

PointCloud random_cloud(std::mt19937& rng, std::size_t n, std::size_t dim = 2) {
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    PointCloud cloud;
    cloud.dimension = dim;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> p(dim);
        for (auto& v : p) v = coord(rng);
        cloud.push_back(p, i);
    }
    return cloud;
}

} // namespace

TEST_CASE("greedy picks the farthest point on a line") {
    const PointCloud cloud = line_cloud({0.0, 1.0, 10.0});
    const PointCloud sub = greedy_subsample(cloud, 2, 0);
    REQUIRE(sub.size() == 2);
    CHECK(sub.source_indices == std::vector<std::size_t>{0, 2});
}

TEST_CASE("greedy with target n returns everything, seed first") {
    std::mt19937 rng(42);
    const PointCloud cloud = random_cloud(rng, 9);
    const PointCloud sub = greedy_subsample(cloud, 9, 3);
    REQUIRE(sub.size() == 9);
    CHECK(sub.source_indices[0] == 3);
    std::vector<std::size_t> sorted = sub.source_indices;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < 9; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("greedy covering radius matches brute force and beats random subsets") {
    std::mt19937 rng(1234);
    const PointCloud cloud = random_cloud(rng, 100, 2);

    const PointCloud greedy = greedy_subsample(cloud, 20, 0);
    const PointCloud brute = reference::greedy_subsample_serial(cloud, 20, 0);
    CHECK(greedy.source_indices == brute.source_indices);

    const double greedy_radius = covering_radius(cloud, greedy);
    CHECK(greedy_radius == doctest::Approx(covering_radius(cloud, brute)));

    std::mt19937 subset_rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::size_t> order(cloud.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), subset_rng);
        PointCloud random_subset;
        random_subset.dimension = cloud.dimension;
        for (std::size_t i = 0; i < 20; ++i)
            random_subset.push_back(cloud.point(order[i]), order[i]);
        CHECK(greedy_radius <= covering_radius(cloud, random_subset) + 1e-12);
    }
}

TEST_CASE("greedy prefix property") {
    std::mt19937 rng(7);
    for (int round = 0; round < 5; ++round) {
        const PointCloud cloud = random_cloud(rng, 50, 3);
        const PointCloud to_k = greedy_subsample(cloud, 25, 0);
        const PointCloud to_m = greedy_subsample(cloud, 10, 0);
        for (std::size_t i = 0; i < to_m.size(); ++i)
            CHECK(to_k.source_indices[i] == to_m.source_indices[i]);
    }
}

TEST_CASE("covering radius is non-increasing in target count") {
    std::mt19937 rng(8);
    const PointCloud cloud = random_cloud(rng, 80, 2);
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t target : {5u, 10u, 20u, 40u, 80u}) {
        const double r = covering_radius(cloud, greedy_subsample(cloud, target, 0));
        CHECK(r <= previous + 1e-12);
        previous = r;
    }
}

TEST_CASE("greedy rejects oversized targets") {
    const PointCloud cloud = line_cloud({0.0, 1.0});
    CHECK_THROWS_AS(greedy_subsample(cloud, 3, 0), TargetTooLargeError);
    CHECK_THROWS_AS(greedy_subsample(cloud, 0, 0), Error);
    CHECK_THROWS_AS(greedy_subsample(cloud, 1, 5), Error);
}

TEST_CASE("distance matrix basics") {
    PointCloud single;
    single.dimension = 3;
    const double origin[3] = {0.0, 0.0, 0.0};
    single.push_back(origin, 0);
    const DistanceMatrix one = distance_matrix(single);
    CHECK(one.size() == 1);
    CHECK(one(0, 0) == 0.0);

    PointCloud two = single;
    const double p[3] = {3.0, 4.0, 0.0};
    two.push_back(p, 1);
    const DistanceMatrix dm = distance_matrix(two);
    CHECK(dm(0, 1) == doctest::Approx(5.0));
    CHECK(dm(1, 0) == doctest::Approx(5.0));
}

TEST_CASE("unit square distances") {
    PointCloud square;
    square.dimension = 2;
    const double corners[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (std::size_t i = 0; i < 4; ++i) square.push_back(corners[i], i);
    const DistanceMatrix dm = distance_matrix(square);

    int sides = 0, diagonals = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (dm(i, j) == doctest::Approx(1.0)) ++sides;
            if (dm(i, j) == doctest::Approx(std::sqrt(2.0))) ++diagonals;
        }
    CHECK(sides == 4);
    CHECK(diagonals == 2);
}

TEST_CASE("distance matrix of a permuted cloud is the permuted matrix") {
    std::mt19937 rng(21);
    const PointCloud cloud = random_cloud(rng, 30, 3);
    const DistanceMatrix dm = distance_matrix(cloud);

    std::vector<std::size_t> perm(cloud.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);

    PointCloud shuffled;
    shuffled.dimension = cloud.dimension;
    for (std::size_t i : perm) shuffled.push_back(cloud.point(i), i);
    const DistanceMatrix dm2 = distance_matrix(shuffled);

    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = 0; j < perm.size(); ++j)
            CHECK(dm2(i, j) == dm(perm[i], perm[j]));
}

TEST_CASE("parallel kernels agree with serial references") {
    std::mt19937 rng(33);
    const PointCloud cloud = random_cloud(rng, 120, 3);

    const DistanceMatrix a = distance_matrix(cloud);
    const DistanceMatrix b = reference::distance_matrix_serial(cloud);
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (std::size_t j = 0; j < cloud.size(); ++j) CHECK(a(i, j) == b(i, j));

    const PointCloud ga = greedy_subsample(cloud, 40, 5);
    const PointCloud gb = reference::greedy_subsample_serial(cloud, 40, 5);
    CHECK(ga.source_indices == gb.source_indices);
    CHECK(ga.data == gb.data);
}

TEST_CASE("triangle inequality on random triples") {
    std::mt19937 rng(55);
    const PointCloud cloud = random_cloud(rng, 60, 3);
    const DistanceMatrix dm = distance_matrix(cloud);
    std::uniform_int_distribution<std::size_t> pick(0, cloud.size() - 1);
    for (int t = 0; t < 500; ++t) {
        const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
        CHECK(dm(i, j) <= dm(i, k) + dm(k, j) + 1e-9);
    }
}
