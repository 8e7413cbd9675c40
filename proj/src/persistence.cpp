#include "crocker/persistence.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>

#include "crocker/errors.hpp"

namespace crocker {

namespace {

void sort_canonical(Barcode& bc) {
    std::sort(bc.intervals.begin(), bc.intervals.end(), [](const Interval& a, const Interval& b) {
        return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
    });
}

/// Union-find where the representative is always the smallest member index.
class MinUnionFind {
public:
    explicit MinUnionFind(std::uint32_t n) : parent_(n) {
        for (std::uint32_t i = 0; i < n; ++i) parent_[i] = i;
    }

    std::uint32_t find(std::uint32_t x) {
        std::uint32_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            const std::uint32_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    // Returns the root that died (the larger one), or -1 if already joined.
    std::int64_t unite(std::uint32_t a, std::uint32_t b) {
        const std::uint32_t ra = find(a), rb = find(b);
        if (ra == rb) return -1;
        const std::uint32_t keep = std::min(ra, rb), drop = std::max(ra, rb);
        parent_[drop] = keep;
        return drop;
    }

private:
    std::vector<std::uint32_t> parent_;
};

} // namespace

RipsFiltration build_filtration(const DistanceMatrix& dm) {
    const std::size_t n = dm.size();
    if (n == 0) throw Error("build_filtration requires a non-empty distance matrix");

    RipsFiltration filt;
    filt.n_vertices = static_cast<std::uint32_t>(n);
    filt.edges.reserve(n * (n - 1) / 2);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) filt.edges.push_back({i, j, dm(i, j)});

    std::sort(filt.edges.begin(), filt.edges.end(), [](const RipsEdge& a, const RipsEdge& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    return filt;
}

Barcode persistence_h0(const RipsFiltration& filt) {
    Barcode bc;
    bc.dimension = 0;
    bc.intervals.reserve(filt.n_vertices);

    MinUnionFind uf(filt.n_vertices);
    for (const RipsEdge& e : filt.edges) {
        if (uf.unite(e.i, e.j) >= 0) bc.intervals.push_back({0.0, e.value});
    }
    bc.intervals.push_back({0.0, kInfiniteDeath});
    sort_canonical(bc);
    return bc;
}

namespace {

/// Triangle of the 2-skeleton in (filtration value, lexicographic) order.
/// code = (i*n + j)*n + k with i < j < k, so equal-value ties sort by code.
struct Cofacet {
    double value;
    std::uint64_t code;

    bool operator<(const Cofacet& o) const {
        return value != o.value ? value < o.value : code < o.code;
    }
    bool operator>(const Cofacet& o) const { return o < *this; }
};

// min-heap on (value, code)
struct CofacetAfter {
    bool operator()(const Cofacet& a, const Cofacet& b) const { return a > b; }
};

} // namespace

/// Dimension-1 pairs from the anti-transposed (coboundary) reduction, the
/// orientation that keeps reduction chains short on Rips filtrations. The
/// edges paired by union-find (the spanning forest) are cleared; each
/// remaining cycle-creating edge, processed youngest first, is paired with a
/// triangle cofacet. A column is stored explicitly only when its starting
/// pivot was contested; uncontested columns are re-enumerated on demand.
/// The resulting pairs equal those of the textbook boundary reduction with
/// the same (value, dimension, lexicographic) simplex order, which is what
/// the naive-oracle tests pin down.
Barcode persistence_h1(const RipsFiltration& filt, std::size_t vertex_cap) {
    const std::uint32_t n = filt.n_vertices;
    if (n > vertex_cap)
        throw ComplexTooLargeError("complex has " + std::to_string(n) +
                                   " vertices, above the cap of " + std::to_string(vertex_cap));

    Barcode bc;
    bc.dimension = 1;
    if (n < 3) return bc;

    const std::size_t m = filt.edges.size();

    std::vector<std::uint32_t> edge_id(static_cast<std::size_t>(n) * n, 0);
    std::vector<double> edge_value(m, 0.0);
    for (std::uint32_t e = 0; e < m; ++e) {
        const RipsEdge& edge = filt.edges[e];
        edge_id[static_cast<std::size_t>(edge.i) * n + edge.j] = e;
        edge_id[static_cast<std::size_t>(edge.j) * n + edge.i] = e;
        edge_value[e] = edge.value;
    }
    const auto distance = [&](std::uint32_t i, std::uint32_t j) {
        return edge_value[edge_id[static_cast<std::size_t>(i) * n + j]];
    };
    const auto cofacet_of = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k) {
        std::uint32_t a = i, b = j, c = k;
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        const double v = std::max(distance(a, b), std::max(distance(a, c), distance(b, c)));
        return Cofacet{v, (static_cast<std::uint64_t>(a) * n + b) * n + c};
    };

    // clearing: edges that merge components are paired with vertices already
    MinUnionFind uf(n);
    std::vector<char> negative(m, 0);
    for (std::uint32_t e = 0; e < m; ++e)
        if (uf.unite(filt.edges[e].i, filt.edges[e].j) >= 0) negative[e] = 1;

    std::unordered_map<std::uint64_t, std::uint32_t> pivot_owner; // cofacet code -> edge id
    pivot_owner.reserve(m);
    // owner columns: empty vector = just the owner edge's own coboundary
    std::vector<std::vector<Cofacet>> stored(m);

    std::vector<Cofacet> scan;
    scan.reserve(n);
    using Heap = std::priority_queue<Cofacet, std::vector<Cofacet>, CofacetAfter>;

    const auto push_coboundary = [&](Heap& heap, std::uint32_t e) {
        const RipsEdge& edge = filt.edges[e];
        for (std::uint32_t k = 0; k < n; ++k) {
            if (k == edge.i || k == edge.j) continue;
            heap.push(cofacet_of(edge.i, edge.j, k));
        }
    };
    const auto pop_pivot = [](Heap& heap) -> std::optional<Cofacet> {
        while (!heap.empty()) {
            const Cofacet top = heap.top();
            heap.pop();
            if (!heap.empty() && heap.top().code == top.code) {
                heap.pop(); // F2 cancellation
                continue;
            }
            return top;
        }
        return std::nullopt;
    };

    for (std::uint32_t idx = 0; idx < m; ++idx) {
        const std::uint32_t e = static_cast<std::uint32_t>(m - 1 - idx); // youngest first
        if (negative[e]) continue;

        const RipsEdge& edge = filt.edges[e];
        scan.clear();
        for (std::uint32_t k = 0; k < n; ++k) {
            if (k == edge.i || k == edge.j) continue;
            scan.push_back(cofacet_of(edge.i, edge.j, k));
        }
        const Cofacet first = *std::min_element(scan.begin(), scan.end());

        if (!pivot_owner.count(first.code)) {
            // uncontested pivot; keep the column implicit
            pivot_owner.emplace(first.code, e);
            if (edge_value[e] < first.value) bc.intervals.push_back({edge_value[e], first.value});
            continue;
        }

        Heap heap(CofacetAfter{}, scan);
        std::optional<Cofacet> pivot;
        while ((pivot = pop_pivot(heap))) {
            const auto owner = pivot_owner.find(pivot->code);
            if (owner == pivot_owner.end()) break;
            // add the owner's column: implicit columns re-enumerate their
            // coboundary, contested ones replay their stored tail
            heap.push(*pivot);
            const std::uint32_t other = owner->second;
            if (stored[other].empty()) {
                push_coboundary(heap, other);
            } else {
                for (const Cofacet& c : stored[other]) heap.push(c);
            }
        }
        if (!pivot) continue; // column vanished, no pair

        pivot_owner.emplace(pivot->code, e);
        if (edge_value[e] < pivot->value) bc.intervals.push_back({edge_value[e], pivot->value});

        auto& column = stored[e];
        column.push_back(*pivot);
        while (auto rest = pop_pivot(heap)) column.push_back(*rest);
    }

    sort_canonical(bc);
    return bc;
}

double max_finite_death(const Barcode& bc) {
    double d_max = 0.0;
    for (const Interval& iv : bc.intervals)
        if (iv.finite()) d_max = std::max(d_max, iv.death);
    return d_max;
}

} // namespace crocker
