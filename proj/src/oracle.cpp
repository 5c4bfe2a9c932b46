#include "boxstab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace boxstab {

namespace {

constexpr std::uint64_t kMaxTotalCandidates = 1ULL << 26;
constexpr std::uint64_t kMaxGridCells = 1ULL << 24;

Point rest_tuple(const Point& p, int skip) {
    Point q;
    q.reserve(p.size() - 1);
    for (std::size_t k = 0; k < p.size(); ++k)
        if (static_cast<int>(k) != skip) q.push_back(p[k]);
    return q;
}

}  // namespace

OracleBudget OracleBudget::defaults_for(int d) {
    OracleBudget b;
    if (d <= 2) {
        b.max_projection_size = 14;
        b.max_cube_side = 64;
    } else if (d == 3) {
        b.max_projection_size = 8;
        b.max_cube_side = 64;
    } else {
        b.max_projection_size = 5;
        b.max_cube_side = 24;
    }
    return b;
}

OptimalBox optimal_box(const PointSet& s, const OracleBudget& budget, EnumOrder order) {
    if (s.empty()) throw std::invalid_argument("optimal_box: S must be nonempty");
    const int d = s.dim();
    const std::int64_t n = s.size();

    // Distinct values per coordinate, and fibre classes for the enumerated
    // coordinates 0..d-2 (values with identical fibres are interchangeable).
    std::vector<std::vector<Coord>> values(d);
    for (int i = 0; i < d; ++i) {
        std::set<Coord> vs;
        for (const Point& p : s.points()) vs.insert(p[i]);
        values[i].assign(vs.begin(), vs.end());
    }

    struct CoordClasses {
        std::vector<std::vector<Coord>> members;  // ascending values per class
    };
    std::vector<CoordClasses> classes(std::max(0, d - 1));
    std::uint64_t total_candidates = 1;
    for (int i = 0; i + 1 < d; ++i) {
        std::map<Coord, std::vector<Point>> fibres;
        for (const Point& p : s.points()) fibres[p[i]].push_back(rest_tuple(p, i));
        std::map<std::vector<Point>, std::vector<Coord>> by_signature;
        for (auto& [v, sig] : fibres) {
            std::sort(sig.begin(), sig.end());
            by_signature[sig].push_back(v);
        }
        // Deterministic class order: by smallest member value.
        std::vector<std::vector<Coord>> members;
        for (auto& [sig, vals] : by_signature) members.push_back(vals);
        std::sort(members.begin(), members.end());
        std::uint64_t count = 1;
        for (const auto& m : members) {
            count *= static_cast<std::uint64_t>(m.size()) + 1;
            if (count > (1ULL << 62)) break;
        }
        const std::uint64_t cap = 1ULL << budget.max_projection_size;
        if (count > cap) {
            throw oracle_refusal(
                "optimal_box: coordinate " + std::to_string(i) + " needs " +
                    std::to_string(count) + " edge candidates, cap is " + std::to_string(cap),
                "max_projection_size=" +
                    std::to_string(static_cast<int>(std::ceil(std::log2(static_cast<double>(count))))));
        }
        total_candidates *= count;
        if (total_candidates > kMaxTotalCandidates) {
            throw oracle_refusal("optimal_box: total candidate count exceeds " +
                                     std::to_string(kMaxTotalCandidates),
                                 "candidates=" + std::to_string(total_candidates));
        }
        classes[i].members = std::move(members);
    }

    // Value -> dense index on the last coordinate.
    std::map<Coord, std::size_t> last_index;
    for (std::size_t k = 0; k < values[d - 1].size(); ++k) last_index[values[d - 1][k]] = k;
    std::vector<std::size_t> point_last(s.points().size());
    for (std::size_t t = 0; t < s.points().size(); ++t)
        point_last[t] = last_index[s.points()[t][d - 1]];

    // Odometer over class multiplicities, one digit per (coordinate, class).
    struct Digit {
        int coord;
        std::size_t cls;
        std::size_t limit;  // inclusive
    };
    std::vector<Digit> digits;
    for (int i = 0; i + 1 < d; ++i)
        for (std::size_t c = 0; c < classes[i].members.size(); ++c)
            digits.push_back({i, c, classes[i].members[c].size()});
    std::vector<std::size_t> mult(digits.size(), 0);
    if (order == EnumOrder::descending)
        for (std::size_t k = 0; k < digits.size(); ++k) mult[k] = digits[k].limit;

    bool have_best = false;
    Int best_cost = 0;
    std::vector<std::vector<Coord>> best_edges;

    std::vector<std::unordered_set<Coord>> chosen(std::max(0, d - 1));
    std::vector<std::int64_t> cnt(values[d - 1].size());

    while (true) {
        // Lex-smallest representative: the lowest mult[k] values of each class.
        std::vector<std::vector<Coord>> edges(d);
        Int prefix_card = 1;
        for (int i = 0; i + 1 < d; ++i) chosen[i].clear();
        for (std::size_t k = 0; k < digits.size(); ++k) {
            const auto& dg = digits[k];
            const auto& members = classes[dg.coord].members[dg.cls];
            for (std::size_t t = 0; t < mult[k]; ++t) {
                edges[dg.coord].push_back(members[t]);
                chosen[dg.coord].insert(members[t]);
            }
        }
        for (int i = 0; i + 1 < d; ++i) {
            std::sort(edges[i].begin(), edges[i].end());
            prefix_card *= Int(static_cast<unsigned long>(edges[i].size()));
        }

        Int cost;
        if (d > 1 && prefix_card == 0) {
            cost = n;  // empty box
        } else {
            std::fill(cnt.begin(), cnt.end(), 0);
            for (std::size_t t = 0; t < s.points().size(); ++t) {
                const Point& p = s.points()[t];
                bool in_prefix = true;
                for (int i = 0; i + 1 < d && in_prefix; ++i)
                    in_prefix = chosen[i].count(p[i]) != 0;
                if (in_prefix) ++cnt[point_last[t]];
            }
            // Optimal last edge: include z iff 2*cnt[z] > prefix_card; ties
            // (equality) are included only below the largest mandatory value,
            // which yields the lex-smallest optimal edge.
            cost = n;
            Coord max_mandatory = 0;
            bool any_mandatory = false;
            for (std::size_t z = 0; z < cnt.size(); ++z) {
                if (Int(2 * cnt[z]) > prefix_card) {
                    cost += prefix_card - Int(2 * cnt[z]);
                    max_mandatory = values[d - 1][z];
                    any_mandatory = true;
                }
            }
            auto& last = edges[d - 1];
            for (std::size_t z = 0; z < cnt.size(); ++z) {
                const Coord v = values[d - 1][z];
                if (Int(2 * cnt[z]) > prefix_card) {
                    last.push_back(v);
                } else if (Int(2 * cnt[z]) == prefix_card && any_mandatory && v < max_mandatory) {
                    last.push_back(v);
                }
            }
        }

        if (!have_best || cost < best_cost || (cost == best_cost && edges < best_edges)) {
            have_best = true;
            best_cost = cost;
            best_edges = std::move(edges);
        }

        // Advance the odometer.
        std::size_t k = 0;
        for (; k < digits.size(); ++k) {
            if (order == EnumOrder::ascending) {
                if (++mult[k] <= digits[k].limit) break;
                mult[k] = 0;
            } else {
                if (mult[k] > 0) {
                    --mult[k];
                    break;
                }
                mult[k] = digits[k].limit;
            }
        }
        if (k == digits.size()) break;
    }

    OptimalBox out{LatticeBox(d, std::move(best_edges)), best_cost};
    return out;
}

OptimalCube optimal_cube(const PointSet& s, const OracleBudget& budget) {
    if (s.empty()) throw std::invalid_argument("optimal_cube: S must be nonempty");
    const int d = s.dim();
    const std::int64_t n = s.size();

    std::vector<Coord> lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
        lo[i] = hi[i] = s.points()[0][i];
    }
    for (const Point& p : s.points()) {
        for (int i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    }
    Coord l_max = 1;
    std::uint64_t grid_cells = 1;
    std::vector<std::int64_t> width(d);
    for (int i = 0; i < d; ++i) {
        width[i] = hi[i] - lo[i] + 1;
        l_max = std::max<Coord>(l_max, width[i]);
        grid_cells *= static_cast<std::uint64_t>(width[i]);
    }
    if (l_max > budget.max_cube_side)
        throw oracle_refusal("optimal_cube: bounding box extent " + std::to_string(l_max) +
                                 " exceeds max_cube_side " + std::to_string(budget.max_cube_side),
                             "max_cube_side=" + std::to_string(l_max));
    if (grid_cells > kMaxGridCells)
        throw oracle_refusal("optimal_cube: bounding box volume exceeds " +
                                 std::to_string(kMaxGridCells) + " cells",
                             "grid_cells=" + std::to_string(grid_cells));

    // Inclusive d-dimensional prefix sums of the indicator of S on the
    // bounding box.
    std::vector<std::int64_t> strides(d);
    std::int64_t vol = 1;
    for (int i = d - 1; i >= 0; --i) {
        strides[i] = vol;
        vol *= width[i];
    }
    std::vector<std::int32_t> pre(static_cast<std::size_t>(vol), 0);
    for (const Point& p : s.points()) {
        std::int64_t idx = 0;
        for (int i = 0; i < d; ++i) idx += (p[i] - lo[i]) * strides[i];
        pre[static_cast<std::size_t>(idx)] = 1;
    }
    for (int axis = 0; axis < d; ++axis) {
        for (std::int64_t idx = 0; idx < vol; ++idx) {
            const std::int64_t coord = (idx / strides[axis]) % width[axis];
            if (coord > 0) pre[static_cast<std::size_t>(idx)] +=
                pre[static_cast<std::size_t>(idx - strides[axis])];
        }
    }
    // Count of S inside [a, b] (inclusive, grid coordinates), clamped.
    auto rect_count = [&](const std::vector<Coord>& a, const std::vector<Coord>& b) -> std::int64_t {
        std::vector<std::int64_t> aa(d), bb(d);
        for (int i = 0; i < d; ++i) {
            aa[i] = std::max<std::int64_t>(a[i] - lo[i], 0);
            bb[i] = std::min<std::int64_t>(b[i] - lo[i], width[i] - 1);
            if (bb[i] < aa[i]) return 0;
        }
        std::int64_t total = 0;
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            std::int64_t idx = 0;
            int sign = 1;
            bool valid = true;
            for (int i = 0; i < d && valid; ++i) {
                if (mask & (1u << i)) {
                    sign = -sign;
                    if (aa[i] == 0) {
                        valid = false;
                    } else {
                        idx += (aa[i] - 1) * strides[i];
                    }
                } else {
                    idx += bb[i] * strides[i];
                }
            }
            if (valid) total += sign * pre[static_cast<std::size_t>(idx)];
        }
        return total;
    };

    bool have_best = false;
    std::int64_t best_cost = 0;
    CubeSpec best;
    std::vector<Coord> far(d);
    for (Coord l = 1; l <= l_max; ++l) {
        std::int64_t cube_card = 1;
        for (int i = 0; i < d; ++i) cube_card *= l;
        std::vector<Coord> c(d);
        for (int i = 0; i < d; ++i) c[i] = lo[i] - l;
        while (true) {
            for (int i = 0; i < d; ++i) far[i] = c[i] + l - 1;
            const std::int64_t inside = rect_count(c, far);
            const std::int64_t cost = n + cube_card - 2 * inside;
            if (!have_best || cost < best_cost) {
                have_best = true;
                best_cost = cost;
                best = CubeSpec{d, c, l};
            }
            int i = d - 1;
            while (i >= 0) {
                if (++c[i] <= hi[i] + l) break;
                c[i] = lo[i] - l;
                --i;
            }
            if (i < 0) break;
        }
    }
    return OptimalCube{best, Int(best_cost)};
}

Rat recompute_hole_direct(const PointSet& s, const PartitionSpec& part, const OracleBudget&) {
    if (s.empty()) throw std::invalid_argument("recompute_hole_direct: S must be nonempty");
    if (part.dim != s.dim())
        throw std::invalid_argument("recompute_hole_direct: dimension mismatch");
    const std::size_t r = part.blocks.size();

    std::vector<std::map<Point, std::int64_t>> counts(r);
    for (const Point& p : s.points()) {
        for (std::size_t j = 0; j < r; ++j) {
            Point q;
            for (int c : part.blocks[j]) q.push_back(p[c]);
            ++counts[j][q];
        }
    }
    std::uint64_t grid = 1;
    for (const auto& m : counts) {
        grid *= m.size();
        if (grid > kMaxGridCells)
            throw oracle_refusal("recompute_hole_direct: marginal grid exceeds " +
                                     std::to_string(kMaxGridCells) + " cells",
                                 "grid_cells=" + std::to_string(grid));
    }

    std::set<Point> members(s.points().begin(), s.points().end());

    std::vector<std::vector<std::pair<Point, std::int64_t>>> lists(r);
    for (std::size_t j = 0; j < r; ++j) lists[j].assign(counts[j].begin(), counts[j].end());

    Int hole_num = 0;
    std::vector<std::size_t> idx(r, 0);
    Point x(s.dim());
    while (true) {
        Int term = 1;
        for (std::size_t j = 0; j < r; ++j) {
            const auto& [q, c] = lists[j][idx[j]];
            for (std::size_t k = 0; k < part.blocks[j].size(); ++k) x[part.blocks[j][k]] = q[k];
            term *= Int(c);
        }
        if (members.find(x) == members.end()) hole_num += term;
        int j = static_cast<int>(r) - 1;
        while (j >= 0 && ++idx[j] == lists[j].size()) idx[j--] = 0;
        if (j < 0) break;
    }
    Rat hole(hole_num, int_pow(Int(s.size()), static_cast<unsigned long>(r)));
    hole.canonicalize();
    return hole;
}

double recompute_entropy_direct(const PointSet& s, const std::vector<int>& coords) {
    if (s.empty()) throw std::invalid_argument("recompute_entropy_direct: S must be nonempty");
    std::map<Point, std::int64_t> counts;
    for (const Point& p : s.points()) {
        Point q;
        for (int c : coords) q.push_back(p.at(static_cast<std::size_t>(c)));
        ++counts[q];
    }
    const double n = static_cast<double>(s.size());
    double h = 0;
    for (const auto& [q, c] : counts) {
        const double pr = static_cast<double>(c) / n;
        h -= pr * std::log2(pr);
    }
    return h;
}

double recompute_mi_direct(const PointSet& s, int coord) {
    if (s.empty()) throw std::invalid_argument("recompute_mi_direct: S must be nonempty");
    if (s.dim() < 2) throw std::invalid_argument("recompute_mi_direct: needs d >= 2");
    std::map<Coord, std::int64_t> ca;
    std::map<Point, std::int64_t> cb;
    for (const Point& p : s.points()) {
        ++ca[p[coord]];
        Point q;
        for (int i = 0; i < s.dim(); ++i)
            if (i != coord) q.push_back(p[i]);
        ++cb[q];
    }
    const double n = static_cast<double>(s.size());
    double mi = 0;
    for (const Point& p : s.points()) {
        Point q;
        for (int i = 0; i < s.dim(); ++i)
            if (i != coord) q.push_back(p[i]);
        const double pab = 1.0 / n;
        const double pa = static_cast<double>(ca[p[coord]]) / n;
        const double pb = static_cast<double>(cb[q]) / n;
        mi += pab * std::log2(pab / (pa * pb));
    }
    return mi;
}

std::int64_t recompute_boundary_direct(const PointSet& s) {
    std::set<Point> members(s.points().begin(), s.points().end());
    std::set<std::pair<Point, int>> edges;  // canonical: lower endpoint + direction
    for (const Point& p : s.points()) {
        for (int i = 0; i < s.dim(); ++i) {
            Point up = p;
            ++up[i];
            if (members.find(up) == members.end()) edges.insert({p, i});
            Point down = p;
            --down[i];
            if (members.find(down) == members.end()) edges.insert({down, i});
        }
    }
    return static_cast<std::int64_t>(edges.size());
}

}  // namespace boxstab
