#pragma once

// Deterministic random-instance generators shared by the unit and acceptance
// suites. Everything is seeded through SplitMix64 so failures replay exactly.

#include <algorithm>
#include <cmath>
#include <vector>

#include "boxstab/cover.hpp"
#include "boxstab/distribution.hpp"
#include "boxstab/generators.hpp"
#include "boxstab/point_set.hpp"
#include "boxstab/rng.hpp"

namespace boxstab::corpus {

inline PointSet l_shape() {
    return PointSet(2, {{0, 0}, {0, 1}, {1, 0}});
}

// [a]^d as a point set, coordinates 1..a.
inline PointSet full_box(int d, Coord a) {
    return LatticeBox::from_intervals(std::vector<std::pair<Coord, Coord>>(d, {1, a}))
        .to_point_set();
}

// Random nonempty subset of a small window, about `target` points. With
// span = 0 the window is sized so the set fills roughly half of it (dense
// instances keep the cover tightness below 1/2); span = -1 draws a random
// window of side 2..8 (sparse instances).
inline PointSet random_set(SplitMix64& rng, int d, std::int64_t target, Coord span = 0) {
    if (span == -1) {
        span = 2 + static_cast<Coord>(rng.below(7));
    } else if (span == 0) {
        span = std::max<Coord>(
            2, static_cast<Coord>(std::pow(0.67 * static_cast<double>(target), 1.0 / d)));
    }
    std::vector<Point> pts;
    const auto tries = static_cast<std::size_t>(target);
    for (std::size_t t = 0; t < tries; ++t) {
        Point p(d);
        for (int i = 0; i < d; ++i) p[i] = rng.range(0, span - 1);
        pts.push_back(std::move(p));
    }
    if (pts.empty()) pts.push_back(Point(d, 0));
    return PointSet(d, std::move(pts));
}

// Random cover with every coordinate covered at least once (m >= 1). A third
// of the draws append the singletons and another third the (d-1)-subsets,
// which guarantees sigma >= 1 for those; the rest may have sigma = 0.
inline CoverFamily random_cover(SplitMix64& rng, int d) {
    const int count = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * d)));
    std::vector<std::vector<int>> sets;
    std::vector<bool> covered(d, false);
    for (int k = 0; k < count; ++k) {
        std::vector<int> g;
        for (int i = 0; i < d; ++i)
            if (rng.below(2) == 0) g.push_back(i);
        if (g.empty()) g.push_back(static_cast<int>(rng.below(d)));
        for (int i : g) covered[i] = true;
        sets.push_back(std::move(g));
    }
    const std::uint64_t kind = rng.below(3);
    if (kind == 1) {
        for (int i = 0; i < d; ++i) sets.push_back({i});
    } else if (kind == 2) {
        const CoverFamily lw = CoverFamily::loomis_whitney(d);
        for (const auto& g : lw.sets()) sets.push_back(g);
    } else {
        for (int i = 0; i < d; ++i)
            if (!covered[i]) sets.push_back({i});
    }
    return CoverFamily(d, std::move(sets));
}

// Union of m random partitions of the coordinates: every coordinate is
// covered exactly m times.
inline CoverFamily random_uniform_cover(SplitMix64& rng, int d);

inline PartitionSpec random_partition(SplitMix64& rng, int d) {
    const int r = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d - 1)));
    std::vector<std::vector<int>> blocks(r);
    for (int i = 0; i < d; ++i) blocks[rng.below(static_cast<std::uint64_t>(r))].push_back(i);
    std::vector<std::vector<int>> nonempty;
    for (auto& b : blocks)
        if (!b.empty()) nonempty.push_back(std::move(b));
    if (nonempty.size() < 2) {
        nonempty.clear();
        nonempty.push_back({0});
        std::vector<int> rest;
        for (int i = 1; i < d; ++i) rest.push_back(i);
        nonempty.push_back(std::move(rest));
    }
    return PartitionSpec(d, std::move(nonempty));
}

inline CoverFamily random_uniform_cover(SplitMix64& rng, int d) {
    const int m = 1 + static_cast<int>(rng.below(3));
    std::vector<std::vector<int>> sets;
    for (int k = 0; k < m; ++k) {
        const PartitionSpec part = random_partition(rng, d);
        for (const auto& b : part.blocks) sets.push_back(b);
    }
    return CoverFamily(d, std::move(sets));
}

// [a]^d (side depends on d) with up to two points removed; keeps every
// projection full, so the uniform-cover tightness k/a^d stays below the
// non-vacuous threshold ((4d^2+64d) rho)^{-1} of the stability theorem.
inline PointSet near_box(SplitMix64& rng, int d) {
    Coord a = 0;
    switch (d) {
        case 2: a = static_cast<Coord>(rng.range(20, 40)); break;
        case 3: a = static_cast<Coord>(rng.range(10, 13)); break;
        default: a = static_cast<Coord>(rng.range(7, 8)); break;
    }
    std::vector<Point> pts = full_box(d, a).points();
    const auto removals = static_cast<int>(rng.below(3));
    for (int k = 0; k < removals && pts.size() > 1; ++k)
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(rng.below(pts.size())));
    return PointSet(d, std::move(pts));
}

// [a]^d with up to `max_corner_cuts` corner points removed; the boundary size
// is unchanged, so the isoperimetric deficit is ~k/(2a^d) and provably inside
// the non-vacuous regime for the sides chosen by the caller.
inline PointSet near_cube(int d, Coord a, int corner_cuts) {
    std::vector<Point> pts = full_box(d, a).points();
    std::vector<Point> corners;
    Point lo(d, 1), hi(d, a);
    for (int mask = 0; mask < (1 << d) && static_cast<int>(corners.size()) < corner_cuts; ++mask) {
        Point c(d);
        for (int i = 0; i < d; ++i) c[i] = (mask & (1 << i)) ? hi[i] : lo[i];
        corners.push_back(std::move(c));
    }
    for (const Point& c : corners)
        pts.erase(std::remove(pts.begin(), pts.end(), c), pts.end());
    return PointSet(d, std::move(pts));
}

}  // namespace boxstab::corpus
