#include "boxstab/point_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace boxstab {

PointSet::PointSet(int dim, std::vector<Point> pts) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("PointSet: dimension must be >= 1");
    for (const Point& p : pts) {
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument("PointSet: point arity does not match dimension");
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    points_ = std::move(pts);
    index_.reserve(points_.size() * 2);
    for (const Point& p : points_) index_.insert(p);
}

LatticeBox::LatticeBox(int dim, std::vector<std::vector<Coord>> edges) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("LatticeBox: dimension must be >= 1");
    if (static_cast<int>(edges.size()) != dim)
        throw std::invalid_argument("LatticeBox: need one edge per coordinate");
    for (auto& e : edges) {
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
    }
    edges_ = std::move(edges);
}

Int LatticeBox::cardinality() const {
    Int card = 1;
    for (const auto& e : edges_) card *= Int(static_cast<unsigned long>(e.size()));
    return dim_ == 0 ? Int(0) : card;
}

bool LatticeBox::empty() const {
    if (dim_ == 0) return true;
    for (const auto& e : edges_)
        if (e.empty()) return true;
    return false;
}

bool LatticeBox::contains(const Point& p) const {
    if (static_cast<int>(p.size()) != dim_) return false;
    for (int i = 0; i < dim_; ++i) {
        if (!std::binary_search(edges_[i].begin(), edges_[i].end(), p[i])) return false;
    }
    return true;
}

PointSet LatticeBox::to_point_set() const {
    if (dim_ < 1) throw std::invalid_argument("LatticeBox::to_point_set: dim 0 box");
    std::vector<Point> pts;
    if (!empty()) {
        Int card = cardinality();
        if (card > 50'000'000) throw std::length_error("LatticeBox::to_point_set: box too large to materialize");
        pts.reserve(card.get_ui());
        Point cur(dim_);
        std::vector<std::size_t> idx(dim_, 0);
        while (true) {
            for (int i = 0; i < dim_; ++i) cur[i] = edges_[i][idx[i]];
            pts.push_back(cur);
            int i = dim_ - 1;
            while (i >= 0 && ++idx[i] == edges_[i].size()) idx[i--] = 0;
            if (i < 0) break;
        }
    }
    return PointSet(dim_, std::move(pts));
}

LatticeBox LatticeBox::from_intervals(const std::vector<std::pair<Coord, Coord>>& ranges) {
    std::vector<std::vector<Coord>> edges;
    edges.reserve(ranges.size());
    for (auto [lo, hi] : ranges) {
        std::vector<Coord> e;
        for (Coord v = lo; v <= hi; ++v) e.push_back(v);
        edges.push_back(std::move(e));
    }
    return LatticeBox(static_cast<int>(ranges.size()), std::move(edges));
}

LatticeBox CubeSpec::to_box() const {
    std::vector<std::pair<Coord, Coord>> ranges;
    ranges.reserve(dim);
    for (int i = 0; i < dim; ++i) ranges.emplace_back(corner[i], corner[i] + side - 1);
    return LatticeBox::from_intervals(ranges);
}

bool CubeSpec::contains(const Point& p) const {
    if (static_cast<int>(p.size()) != dim) return false;
    for (int i = 0; i < dim; ++i) {
        if (p[i] < corner[i] || p[i] >= corner[i] + side) return false;
    }
    return true;
}

PointSet project(const PointSet& s, const std::vector<int>& coords) {
    std::vector<int> g = coords;
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    if (g.empty()) throw std::invalid_argument("project: empty coordinate set");
    if (g.front() < 0 || g.back() >= s.dim())
        throw std::invalid_argument("project: coordinate index out of range");
    std::vector<Point> pts;
    pts.reserve(s.points().size());
    for (const Point& p : s.points()) {
        Point q(g.size());
        for (std::size_t k = 0; k < g.size(); ++k) q[k] = p[g[k]];
        pts.push_back(std::move(q));
    }
    return PointSet(static_cast<int>(g.size()), std::move(pts));
}

std::int64_t sym_diff_size(const PointSet& a, const PointSet& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("sym_diff_size: dimension mismatch");
    std::int64_t only_a = 0;
    for (const Point& p : a.points())
        if (!b.contains(p)) ++only_a;
    std::int64_t only_b = 0;
    for (const Point& p : b.points())
        if (!a.contains(p)) ++only_b;
    return only_a + only_b;
}

Int sym_diff_with_box(const PointSet& s, const LatticeBox& box) {
    if (s.dim() != box.dim()) throw std::invalid_argument("sym_diff_with_box: dimension mismatch");
    std::int64_t in_both = 0;
    for (const Point& p : s.points())
        if (box.contains(p)) ++in_both;
    return Int(s.size() - in_both) + (box.cardinality() - Int(in_both));
}

Int sym_diff_with_cube(const PointSet& s, const CubeSpec& cube) {
    if (s.dim() != cube.dim) throw std::invalid_argument("sym_diff_with_cube: dimension mismatch");
    std::int64_t in_both = 0;
    for (const Point& p : s.points())
        if (cube.contains(p)) ++in_both;
    return Int(s.size() - in_both) + (cube.cardinality() - Int(in_both));
}

EdgeBoundary edge_boundary(const PointSet& s) {
    EdgeBoundary out;
    out.per_direction.assign(s.dim(), 0);
    Point nb;
    for (const Point& p : s.points()) {
        nb = p;
        for (int i = 0; i < s.dim(); ++i) {
            nb[i] = p[i] + 1;
            if (!s.contains(nb)) ++out.per_direction[i];
            nb[i] = p[i] - 1;
            if (!s.contains(nb)) ++out.per_direction[i];
            nb[i] = p[i];
        }
    }
    for (std::int64_t c : out.per_direction) out.total += c;
    return out;
}

}  // namespace boxstab
