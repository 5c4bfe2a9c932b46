#include "boxstab/generators.hpp"

#include <algorithm>
#include <stdexcept>

#include "boxstab/rng.hpp"

namespace boxstab {

PointSet make_annulus(int d, Coord a, Coord a_inner) {
    if (d < 1) throw std::invalid_argument("make_annulus: d must be >= 1");
    if (!(a > a_inner && a_inner >= 0))
        throw std::invalid_argument("make_annulus: need a > a_inner >= 0");
    std::vector<Point> pts;
    Point cur(d, 1);
    while (true) {
        bool inner = true;
        for (int i = 0; i < d; ++i)
            if (cur[i] > a_inner) { inner = false; break; }
        if (!inner) pts.push_back(cur);
        int i = d - 1;
        while (i >= 0 && ++cur[i] > a) cur[i--] = 1;
        if (i < 0) break;
    }
    return PointSet(d, std::move(pts));
}

PointSet make_cuboid(int d, Coord a, Coord b) {
    if (d < 1) throw std::invalid_argument("make_cuboid: d must be >= 1");
    if (!(b >= a && a >= 1)) throw std::invalid_argument("make_cuboid: need b >= a >= 1");
    std::vector<std::pair<Coord, Coord>> ranges(d, {1, a});
    ranges[d - 1] = {1, b};
    return LatticeBox::from_intervals(ranges).to_point_set();
}

PointSet make_perturbed_box(const LatticeBox& base, std::int64_t flip_count, std::uint64_t seed) {
    if (base.dim() < 1 || base.empty())
        throw std::invalid_argument("make_perturbed_box: base box must be nonempty");
    Int card = base.cardinality();
    if (Int(flip_count) > card || flip_count < 0)
        throw std::invalid_argument("make_perturbed_box: flip_count must be in [0, |base|]");

    const int d = base.dim();
    std::vector<Coord> lo(d), width(d);
    Int region_card = 1;
    for (int i = 0; i < d; ++i) {
        const auto& e = base.edges()[i];
        const Coord w = e.back() - e.front() + 1;
        lo[i] = e.front() - w / 2;
        width[i] = 2 * w;
        region_card *= Int(static_cast<unsigned long>(width[i]));
    }
    if (region_card > 100'000'000)
        throw std::invalid_argument("make_perturbed_box: inflated region too large");
    const std::uint64_t region = region_card.get_ui();

    PointSet base_pts = base.to_point_set();
    std::vector<Point> pts = base_pts.points();

    SplitMix64 rng(seed);
    auto indices = rng.sample_without_replacement(region, static_cast<std::uint64_t>(flip_count));
    for (std::uint64_t idx : indices) {
        Point p(d);
        std::uint64_t rest = idx;
        for (int i = d - 1; i >= 0; --i) {
            p[i] = lo[i] + static_cast<Coord>(rest % static_cast<std::uint64_t>(width[i]));
            rest /= static_cast<std::uint64_t>(width[i]);
        }
        auto it = std::find(pts.begin(), pts.end(), p);
        if (it != pts.end()) {
            pts.erase(it);
        } else {
            pts.push_back(p);
        }
    }
    return PointSet(d, std::move(pts));
}

}  // namespace boxstab
