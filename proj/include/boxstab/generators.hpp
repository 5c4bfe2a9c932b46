#pragma once

#include <cstdint>

#include "boxstab/point_set.hpp"

namespace boxstab {

// [a]^d \ [a_inner]^d with [a] = {1,...,a}. Requires a > a_inner >= 0.
PointSet make_annulus(int d, Coord a, Coord a_inner);

// [a]^{d-1} x [b]. Requires b >= a >= 1.
PointSet make_cuboid(int d, Coord a, Coord b);

// Starts from `base` and toggles membership of `flip_count` points drawn
// without replacement from the bounding region of `base` inflated to twice
// its width in every coordinate. Deterministic for a given seed.
// Requires flip_count <= |base|.
PointSet make_perturbed_box(const LatticeBox& base, std::int64_t flip_count, std::uint64_t seed);

}  // namespace boxstab
