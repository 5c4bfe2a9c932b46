#include "boxstab/iso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "boxstab/generators.hpp"

namespace boxstab {

namespace {

bool leq_slack(long double x, long double y) {
    const long double scale = std::max({1.0L, std::fabs(x), std::fabs(y)});
    return x <= y + 1e-12L * scale;
}

}  // namespace

long double iso_deficit(const PointSet& s) {
    if (s.empty()) throw std::invalid_argument("iso_deficit: S must be nonempty");
    const int d = s.dim();
    const EdgeBoundary bd = edge_boundary(s);
    const long double denom =
        2.0L * d *
        std::exp2(static_cast<long double>(d - 1) * log2_ld(Int(s.size())) / d);
    const long double eps = static_cast<long double>(bd.total) / denom - 1.0L;
    return eps < 0 ? 0.0L : eps;
}

AmGmReport am_gm_stability_check(std::vector<long double> z, long double epsilon) {
    AmGmReport rep;
    const int d = static_cast<int>(z.size());
    if (d < 1) throw std::invalid_argument("am_gm_stability_check: empty tuple");
    for (long double v : z)
        if (!(v > 0)) throw std::invalid_argument("am_gm_stability_check: entries must be positive");
    std::sort(z.begin(), z.end(), std::greater<>());

    long double log_sum = 0, mean = 0;
    for (long double v : z) {
        log_sum += std::log2(v);
        mean += v;
    }
    mean /= d;
    rep.geo_mean = std::exp2(log_sum / d);
    rep.epsilon = epsilon;

    if (!leq_slack(mean, (1.0L + epsilon) * rep.geo_mean)) {
        rep.reason = "hypothesis mean <= (1+eps) * geometric mean fails";
        return rep;
    }
    if (!leq_slack(epsilon, 1.0L / (16.0L * d))) {
        rep.reason = "epsilon exceeds 1/(16d)";
        return rep;
    }
    rep.applicable = true;

    const long double root = std::sqrt(d * epsilon);
    rep.lower_factor = 1.0L - 2.0L * d * root;
    rep.upper_factor = 1.0L + 2.0L * root;
    rep.bounds_ok = true;
    for (long double v : z) {
        const bool ok = leq_slack(rep.lower_factor * rep.geo_mean, v) &&
                        leq_slack(v, rep.upper_factor * rep.geo_mean);
        rep.per_index_ok.push_back(ok);
        rep.bounds_ok = rep.bounds_ok && ok;
    }
    rep.max_proof_bound_ok = leq_slack(z.front(), (1.0L + 4.0L * root) * rep.geo_mean);
    return rep;
}

HeavyLightResult heavy_light_filter(const PointSet& s, const LatticeBox& r) {
    if (r.empty()) throw std::invalid_argument("heavy_light_filter: box must be nonempty");
    if (s.dim() != r.dim()) throw std::invalid_argument("heavy_light_filter: dimension mismatch");
    const int d = s.dim();

    std::vector<std::unordered_map<Coord, std::int64_t>> slice(d);
    for (const Point& p : s.points()) {
        if (!r.contains(p)) continue;
        for (int i = 0; i < d; ++i) ++slice[i][p[i]];
    }

    HeavyLightResult out;
    out.light_counts.assign(d, 0);
    std::vector<std::vector<Coord>> kept(d);
    const Int card = r.cardinality();
    for (int i = 0; i < d; ++i) {
        const Int q = card / Int(static_cast<unsigned long>(r.edges()[i].size()));
        for (Coord c : r.edges()[i]) {
            auto it = slice[i].find(c);
            const std::int64_t cnt = it == slice[i].end() ? 0 : it->second;
            // heavy iff |S ∩ slice| >= 7|Q|/8
            if (Int(8 * cnt) >= 7 * q) {
                kept[i].push_back(c);
            } else {
                ++out.light_counts[i];
            }
        }
    }
    out.filtered = LatticeBox(d, std::move(kept));
    return out;
}

IsoReport approximate_cube(const PointSet& s) {
    if (s.empty()) throw std::invalid_argument("approximate_cube: S must be nonempty");
    const int d = s.dim();
    if (d < 2) throw std::invalid_argument("approximate_cube: needs d >= 2");
    const std::int64_t n = s.size();

    IsoReport rep;
    rep.s_card = n;
    rep.epsilon_iso = iso_deficit(s);
    rep.delta = std::sqrt(d * rep.epsilon_iso);
    rep.a = std::exp2(log2_ld(Int(n)) / d);
    rep.vacuous = rep.epsilon_iso > 1.0L / (5184.0L * std::pow(static_cast<long double>(d), 5));

    const CoverFamily lw = CoverFamily::loomis_whitney(d);
    {
        long double acc = 0;
        for (const auto& g : lw.sets()) acc += log2_ld(Int(project(s, g).size()));
        rep.geo_mean = std::exp2(acc / d);
    }

    rep.box_report = approximate_box(s, lw);
    rep.box = rep.box_report.box;
    const long double d_pow = std::pow(static_cast<long double>(d), 2.5L);
    rep.theoretical_bound = 72.0L * d_pow * std::sqrt(rep.epsilon_iso);
    rep.proof_bound = 60.0L * d_pow * std::sqrt(rep.epsilon_iso);

    if (rep.box.empty()) {
        rep.degenerate = true;
        rep.sym_diff = Int(n);
        rep.sym_diff_ratio = Rat(1);
        rep.satisfied = leq_slack(1.0L, rep.theoretical_bound);
        return rep;
    }

    const HeavyLightResult hl = heavy_light_filter(s, rep.box);
    rep.filtered_box = hl.filtered;

    // Proof-step claims; meaningful in the non-vacuous regime.
    rep.claims.light_counts_ok = true;
    rep.claims.edge_sizes_ok = true;
    for (int i = 0; i < d; ++i) {
        const auto sz = static_cast<long double>(rep.box.edges()[i].size());
        rep.claims.light_counts_ok =
            rep.claims.light_counts_ok &&
            leq_slack(static_cast<long double>(hl.light_counts[i]), 16.0L * rep.delta * sz);
        rep.claims.edge_sizes_ok = rep.claims.edge_sizes_ok &&
                                   leq_slack((1.0L - 7.0L * rep.delta) * rep.a, sz) &&
                                   leq_slack(sz, (1.0L + 14.0L * d * rep.delta) * rep.a);
    }

    if (rep.filtered_box.empty()) {
        rep.degenerate = true;
        rep.sym_diff = Int(n);
        rep.sym_diff_ratio = Rat(1);
        rep.satisfied = leq_slack(1.0L, rep.theoretical_bound);
        return rep;
    }

    rep.claims.interval_gaps_ok = true;
    std::int64_t side = 1;
    for (int i = 0; i < d; ++i) {
        const auto& fe = rep.filtered_box.edges()[i];
        const Coord span = fe.back() - fe.front() + 1;
        side = std::max<std::int64_t>(side, span);
        const auto sz = static_cast<long double>(rep.box.edges()[i].size());
        rep.claims.interval_gaps_ok =
            rep.claims.interval_gaps_ok &&
            leq_slack(static_cast<long double>(span) - sz, 8.0L * rep.delta * sz);
    }

    Point corner(d);
    for (int i = 0; i < d; ++i) corner[i] = rep.filtered_box.edges()[i].front();
    rep.cube = CubeSpec{d, corner, side};
    rep.sym_diff = sym_diff_with_cube(s, *rep.cube);
    rep.sym_diff_ratio = Rat(rep.sym_diff, Int(n));
    rep.sym_diff_ratio.canonicalize();
    rep.satisfied = leq_slack(to_long_double(rep.sym_diff_ratio), rep.theoretical_bound);
    return rep;
}

SharpnessProbe sharpness_probe_annulus(int d, Coord a, Coord a_inner, const OracleBudget& budget) {
    const PointSet s = make_annulus(d, a, a_inner);
    SharpnessProbe probe;
    probe.epsilon = uc_tightness(s, CoverFamily::loomis_whitney(d)).epsilon;
    const OptimalBox opt = optimal_box(s, budget);
    probe.oracle_ratio = Rat(opt.sym_diff, Int(s.size()));
    probe.oracle_ratio.canonicalize();
    probe.scale = probe.epsilon;
    probe.ratio_over_scale =
        probe.scale > 0 ? to_long_double(probe.oracle_ratio) / probe.scale : 0.0L;
    return probe;
}

SharpnessProbe sharpness_probe_cuboid(int d, Coord a, Coord b, const OracleBudget& budget) {
    const PointSet s = make_cuboid(d, a, b);
    SharpnessProbe probe;
    probe.epsilon = iso_deficit(s);
    const OptimalCube opt = optimal_cube(s, budget);
    probe.oracle_ratio = Rat(opt.sym_diff, Int(s.size()));
    probe.oracle_ratio.canonicalize();
    probe.scale = 0.5L * std::sqrt(2.0L * d * probe.epsilon);
    probe.ratio_over_scale =
        probe.scale > 0 ? to_long_double(probe.oracle_ratio) / probe.scale : 0.0L;
    return probe;
}

}  // namespace boxstab
