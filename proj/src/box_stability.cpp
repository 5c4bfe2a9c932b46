#include "boxstab/box_stability.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "boxstab/oracle.hpp"

namespace boxstab {

namespace {

struct CountTrim {
    std::vector<std::size_t> kept;
    std::vector<std::vector<std::size_t>> rounds;
    std::vector<Rat> masses;
    bool all_trimmed = false;
};

// Core recursion over fibre counts; n is the total mass denominator.
CountTrim trim_counts(const std::vector<std::int64_t>& counts, std::int64_t n, const Rat& alpha) {
    CountTrim out;
    std::vector<std::size_t> alive(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) alive[k] = k;
    Int surviving = 0;
    for (std::int64_t c : counts) surviving += c;

    const Int a_den(alpha.get_den());
    const Int one_minus = a_den - alpha.get_num();

    while (!alive.empty()) {
        const Int r_size(static_cast<unsigned long>(alive.size()));
        std::vector<std::size_t> removed;
        Int removed_count = 0;
        for (std::size_t k : alive) {
            // counts[k]/surviving <= (1-alpha)/|R|, cross-multiplied.
            if (Int(counts[k]) * a_den * r_size <= surviving * one_minus) {
                removed.push_back(k);
                removed_count += counts[k];
            }
        }
        if (removed.empty()) break;
        Rat mass(removed_count, Int(n));
        mass.canonicalize();
        out.masses.push_back(std::move(mass));
        std::vector<std::size_t> next;
        next.reserve(alive.size() - removed.size());
        std::size_t ri = 0;
        for (std::size_t k : alive) {
            if (ri < removed.size() && removed[ri] == k) {
                ++ri;
            } else {
                next.push_back(k);
            }
        }
        alive = std::move(next);
        surviving -= removed_count;
        out.rounds.push_back(std::move(removed));
    }
    out.kept = std::move(alive);
    out.all_trimmed = out.kept.empty();
    return out;
}

PartitionSpec split_for(int d, int coord) {
    return d == 1 ? PartitionSpec::singletons(1) : PartitionSpec::coordinate_split(d, coord);
}

}  // namespace

TrimResult trim(const PointSet& s, int coord, const Rat& alpha) {
    if (s.empty()) throw std::invalid_argument("trim: S must be nonempty");
    if (coord < 0 || coord >= s.dim()) throw std::invalid_argument("trim: coordinate out of range");
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("trim: alpha must be in (0,1)");

    std::map<Coord, std::int64_t> fibres;
    for (const Point& p : s.points()) ++fibres[p[coord]];
    std::vector<Coord> values;
    std::vector<std::int64_t> counts;
    values.reserve(fibres.size());
    counts.reserve(fibres.size());
    for (auto [v, c] : fibres) {
        values.push_back(v);
        counts.push_back(c);
    }

    const CountTrim ct = trim_counts(counts, s.size(), alpha);

    TrimResult out;
    out.coord = coord;
    out.alpha = alpha;
    out.all_trimmed = ct.all_trimmed;
    for (std::size_t k : ct.kept) out.kept.push_back(values[k]);
    out.removed_mass = Rat(0);
    for (std::size_t j = 0; j < ct.rounds.size(); ++j) {
        TrimRound round;
        for (std::size_t k : ct.rounds[j]) round.removed.push_back(values[k]);
        round.mass = ct.masses[j];
        out.removed_mass += round.mass;
        out.rounds.push_back(std::move(round));
    }
    out.hole = hole_weight(s, split_for(s.dim(), coord));
    return out;
}

TrimVerification verify_trim(const PointSet& s, const TrimResult& t) {
    TrimVerification v;
    const Rat budget = 2 * t.hole / t.alpha;
    v.removed_mass_ok = t.removed_mass <= budget;

    // Every kept fibre mass >= (1 - 2*hole/alpha)(1-alpha)/|kept|.
    v.kept_lower_bound_ok = true;
    if (!t.kept.empty()) {
        std::map<Coord, std::int64_t> fibres;
        for (const Point& p : s.points()) ++fibres[p[t.coord]];
        Rat floor = (Rat(1) - budget) * (Rat(1) - t.alpha) / Rat(static_cast<unsigned long>(t.kept.size()));
        for (Coord c : t.kept) {
            Rat mass(fibres[c], s.size());
            mass.canonicalize();
            if (mass < floor) {
                v.kept_lower_bound_ok = false;
                break;
            }
        }
    }

    Rat lhs(0), removed_so_far(0);
    for (const TrimRound& round : t.rounds) {
        lhs += round.mass * (Rat(1) - removed_so_far);
        removed_so_far += round.mass;
    }
    v.small_b1_lhs = t.alpha * lhs;
    v.small_b1_ok = v.small_b1_lhs <= t.hole;
    return v;
}

BoxStabilityReport approximate_box(const PointSet& s, const CoverFamily& g) {
    if (s.empty()) throw std::invalid_argument("approximate_box: S must be nonempty");
    if (s.dim() != g.dim()) throw std::invalid_argument("approximate_box: dimension mismatch");
    const CoverStats stats = cover_stats(g);
    if (!stats.rho.has_value())
        throw std::invalid_argument("approximate_box: sigma(G) = 0, rho undefined");

    const int d = s.dim();
    const Tightness t = uc_tightness(s, g);

    BoxStabilityReport rep;
    rep.epsilon = t.epsilon;
    rep.epsilon_raw = t.epsilon_raw;
    rep.rho = *stats.rho;
    rep.weighted = g.weighted();
    rep.s_card = s.size();

    std::vector<std::vector<Coord>> edges;
    edges.reserve(d);
    const Rat alpha(1, static_cast<unsigned long>(d));
    for (int i = 0; i < d; ++i) {
        rep.trims.push_back(trim(s, i, alpha));
        rep.empty_edge = rep.empty_edge || rep.trims.back().all_trimmed;
        edges.push_back(rep.trims.back().kept);
    }
    rep.box = LatticeBox(d, std::move(edges));

    std::int64_t in_box = 0;
    for (const Point& p : s.points())
        if (rep.box.contains(p)) ++in_box;
    rep.s_minus_r = Int(s.size() - in_box);
    rep.r_minus_s = rep.box.cardinality() - Int(in_box);

    const Int sym = rep.s_minus_r + rep.r_minus_s;
    rep.sym_diff_ratio = Rat(sym, Int(s.size()));
    rep.sym_diff_ratio.canonicalize();

    const long b = 4L * d * d + 64L * d;
    const long double rho_ld = to_long_double(rep.rho);
    rep.theoretical_bound = static_cast<long double>(b) * rho_ld * rep.epsilon;

    if (g.weighted()) {
        const long double n_ld = static_cast<long double>(s.size());
        rep.vacuous = !(rep.epsilon < 1.0L / (static_cast<long double>(b) * rho_ld));
        rep.satisfied = to_long_double(sym) <= rep.theoretical_bound * n_ld;
        rep.s_r_ok = to_long_double(rep.s_minus_r) <=
                     static_cast<long double>(4L * d * d) * rho_ld * rep.epsilon * n_ld;
        rep.r_s_ok = to_long_double(rep.r_minus_s) <=
                     static_cast<long double>(64L * d) * rho_ld * rep.epsilon * n_ld;
    } else {
        Rat inv_threshold = Rat(1) / (Rat(b) * rep.rho);
        inv_threshold.canonicalize();
        rep.vacuous = !uc_epsilon_below(s, g, inv_threshold);
        rep.satisfied = uc_scaled_bound_holds(s, g, Rat(b) * rep.rho, sym);
        rep.s_r_ok = uc_scaled_bound_holds(s, g, Rat(4L * d * d) * rep.rho, rep.s_minus_r);
        rep.r_s_ok = uc_scaled_bound_holds(s, g, Rat(64L * d) * rep.rho, rep.r_minus_s);
    }
    return rep;
}

Rectangle2d rectangle_2d(const PointSet& s, int coord) {
    if (s.empty()) throw std::invalid_argument("rectangle_2d: S must be nonempty");
    if (s.dim() < 2) throw std::invalid_argument("rectangle_2d: needs d >= 2");
    if (coord < 0 || coord >= s.dim())
        throw std::invalid_argument("rectangle_2d: coordinate out of range");

    Rectangle2d out;
    out.coord = coord;
    out.hole = hole_weight(s, PartitionSpec::coordinate_split(s.dim(), coord));

    const Int n(s.size());
    if (out.hole >= make_rat(1, 20)) {
        out.vacuous = true;
        out.sym_diff = n;
        // 20 * hole >= 1 exactly in this branch.
        out.satisfied = Int(20) * out.hole.get_num() >= out.hole.get_den();
        return out;
    }

    const Rat half(1, 2);
    out.r1 = trim(s, coord, half).kept;

    std::vector<int> rest;
    for (int i = 0; i < s.dim(); ++i)
        if (i != coord) rest.push_back(i);
    std::map<Point, std::int64_t> fibres;
    for (const Point& p : s.points()) {
        Point q(rest.size());
        for (std::size_t k = 0; k < rest.size(); ++k) q[k] = p[rest[k]];
        ++fibres[q];
    }
    std::vector<Point> keys;
    std::vector<std::int64_t> counts;
    for (auto& [q, c] : fibres) {
        keys.push_back(q);
        counts.push_back(c);
    }
    const CountTrim ct = trim_counts(counts, s.size(), half);
    for (std::size_t k : ct.kept) out.r2.push_back(keys[k]);

    std::unordered_set<Coord> r1_set(out.r1.begin(), out.r1.end());
    std::unordered_set<Point, PointHash> r2_set(out.r2.begin(), out.r2.end());
    std::int64_t in_rect = 0;
    for (const Point& p : s.points()) {
        if (!r1_set.count(p[coord])) continue;
        Point q(rest.size());
        for (std::size_t k = 0; k < rest.size(); ++k) q[k] = p[rest[k]];
        if (r2_set.count(q)) ++in_rect;
    }
    const Int rect_card = Int(static_cast<unsigned long>(out.r1.size())) *
                          Int(static_cast<unsigned long>(out.r2.size()));
    out.sym_diff = (n - Int(in_rect)) + (rect_card - Int(in_rect));
    // sym <= 20 * hole * n, cross-multiplied.
    out.satisfied = out.sym_diff * out.hole.get_den() <= Int(20) * out.hole.get_num() * n;
    return out;
}

Certification certify_bound(const PointSet& s, const CoverFamily& g,
                            const BoxStabilityReport& report, const OracleBudget* budget) {
    Certification cert;
    cert.constructed_ratio = report.sym_diff_ratio;
    cert.theoretical_bound = report.theoretical_bound;
    cert.within_bound = report.satisfied;

    const int d = s.dim();
    {
        auto sorted_sets = g.sets();
        std::sort(sorted_sets.begin(), sorted_sets.end());
        auto lw = CoverFamily::loomis_whitney(d).sets();
        std::sort(lw.begin(), lw.end());
        cert.lw_cover = !g.weighted() && sorted_sets == lw;
    }
    if (cert.lw_cover) {
        const long bd = 4L * d * d + 64L * d;
        cert.lw_constant_ok = (d - 1) * bd <= 36L * d * d * d;
    }

    if (budget != nullptr) {
        try {
            const OptimalBox opt = optimal_box(s, *budget);
            Rat ratio(opt.sym_diff, Int(s.size()));
            ratio.canonicalize();
            cert.oracle_ratio = ratio;
            cert.oracle_consistent = report.sym_diff_ratio >= ratio;
        } catch (const oracle_refusal&) {
            cert.oracle_ratio.reset();
        }
    }
    return cert;
}

}  // namespace boxstab
