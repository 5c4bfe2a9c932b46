#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "boxstab/rational.hpp"

namespace boxstab {

using Coord = std::int64_t;
using Point = std::vector<Coord>;

struct PointHash {
    std::size_t operator()(const Point& p) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over coordinate bytes
        for (Coord c : p) {
            auto u = static_cast<std::uint64_t>(c);
            for (int k = 0; k < 8; ++k) {
                h ^= (u >> (8 * k)) & 0xff;
                h *= 0x100000001b3ULL;
            }
        }
        return static_cast<std::size_t>(h);
    }
};

// Finite subset of Z^d. Immutable after construction: points are dedupulated,
// kept in lexicographic order for deterministic iteration, and indexed in a
// hash set for O(1) membership.
class PointSet {
public:
    PointSet(int dim, std::vector<Point> pts);

    int dim() const { return dim_; }
    std::int64_t size() const { return static_cast<std::int64_t>(points_.size()); }
    bool empty() const { return points_.empty(); }
    bool contains(const Point& p) const { return index_.count(p) != 0; }
    const std::vector<Point>& points() const { return points_; }

    bool operator==(const PointSet& o) const {
        return dim_ == o.dim_ && points_ == o.points_;
    }
    bool operator!=(const PointSet& o) const { return !(*this == o); }

private:
    int dim_;
    std::vector<Point> points_;
    std::unordered_set<Point, PointHash> index_;
};

// Box in Z^d: Cartesian product of finite subsets of Z, one per coordinate.
// Edges are sorted and deduplicated; the box is empty iff some edge is empty.
class LatticeBox {
public:
    LatticeBox() = default;  // dim 0 placeholder
    LatticeBox(int dim, std::vector<std::vector<Coord>> edges);

    int dim() const { return dim_; }
    const std::vector<std::vector<Coord>>& edges() const { return edges_; }
    Int cardinality() const;
    bool empty() const;
    bool contains(const Point& p) const;
    PointSet to_point_set() const;

    static LatticeBox from_intervals(const std::vector<std::pair<Coord, Coord>>& ranges);

    bool operator==(const LatticeBox& o) const {
        return dim_ == o.dim_ && edges_ == o.edges_;
    }

private:
    int dim_ = 0;
    std::vector<std::vector<Coord>> edges_;
};

// Cube of side L: every edge an integer interval of the same length, anchored
// at the min corner.
struct CubeSpec {
    int dim = 0;
    Point corner;
    std::int64_t side = 0;

    LatticeBox to_box() const;
    Int cardinality() const { return int_pow(Int(side), static_cast<unsigned long>(dim)); }
    bool contains(const Point& p) const;
};

// Restriction of every point to the coordinates in `coords` (0-based, treated
// as a set; kept in increasing index order). Result has dimension |coords|.
PointSet project(const PointSet& s, const std::vector<int>& coords);

// |A \ B| + |B \ A|. Dimensions must agree.
std::int64_t sym_diff_size(const PointSet& a, const PointSet& b);

Int sym_diff_with_box(const PointSet& s, const LatticeBox& box);
Int sym_diff_with_cube(const PointSet& s, const CubeSpec& cube);

struct EdgeBoundary {
    std::vector<std::int64_t> per_direction;
    std::int64_t total = 0;
};

// Edges of the lattice graph with exactly one endpoint in S, split by
// direction.
EdgeBoundary edge_boundary(const PointSet& s);

}  // namespace boxstab
