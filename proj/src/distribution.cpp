#include "boxstab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace boxstab {

namespace {

constexpr long double kIdentityTol = 1e-9L;

long double log2_mass(const Rat& q) { return log2_ld(q); }

Point subtuple(const Point& p, const std::vector<int>& coords) {
    Point q(coords.size());
    for (std::size_t k = 0; k < coords.size(); ++k) q[k] = p[coords[k]];
    return q;
}

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<int> complement_of(const std::vector<int>& g, int d) {
    std::vector<int> c;
    for (int i = 0; i < d; ++i)
        if (!std::binary_search(g.begin(), g.end(), i)) c.push_back(i);
    return c;
}

}  // namespace

LatticeDistribution::LatticeDistribution(int dim, std::vector<std::pair<Point, Rat>> masses)
    : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("LatticeDistribution: dimension must be >= 1");
    std::map<Point, Rat> acc;
    for (auto& [p, m] : masses) {
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument("LatticeDistribution: point arity mismatch");
        if (!(m > 0)) throw std::invalid_argument("LatticeDistribution: masses must be positive");
        acc[p] += m;
    }
    Rat total(0);
    entries_.reserve(acc.size());
    for (auto& [p, m] : acc) {
        total += m;
        entries_.emplace_back(p, m);
    }
    if (total != 1)
        throw std::invalid_argument("LatticeDistribution: masses must sum to exactly 1");
    index_.reserve(entries_.size() * 2);
    for (std::size_t k = 0; k < entries_.size(); ++k) index_.emplace(entries_[k].first, k);
}

Rat LatticeDistribution::mass(const Point& p) const {
    auto it = index_.find(p);
    return it == index_.end() ? Rat(0) : entries_[it->second].second;
}

PartitionSpec::PartitionSpec(int d, std::vector<std::vector<int>> blocks_) : dim(d) {
    if (d < 1) throw std::invalid_argument("PartitionSpec: dimension must be >= 1");
    std::vector<bool> seen(d, false);
    for (auto& b : blocks_) {
        b = sorted_unique(std::move(b));
        if (b.empty()) throw std::invalid_argument("PartitionSpec: blocks must be nonempty");
        for (int i : b) {
            if (i < 0 || i >= d) throw std::invalid_argument("PartitionSpec: index out of range");
            if (seen[i]) throw std::invalid_argument("PartitionSpec: blocks must be disjoint");
            seen[i] = true;
        }
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("PartitionSpec: blocks must cover every coordinate");
    blocks = std::move(blocks_);
}

PartitionSpec PartitionSpec::coordinate_split(int d, int i) {
    if (i < 0 || i >= d) throw std::invalid_argument("coordinate_split: index out of range");
    std::vector<int> rest;
    for (int j = 0; j < d; ++j)
        if (j != i) rest.push_back(j);
    return PartitionSpec(d, {{i}, rest});
}

PartitionSpec PartitionSpec::singletons(int d) {
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < d; ++i) blocks.push_back({i});
    return PartitionSpec(d, std::move(blocks));
}

LatticeDistribution uniform_on(const PointSet& s) {
    if (s.empty()) throw std::invalid_argument("uniform_on: S must be nonempty");
    const Rat m(1, static_cast<unsigned long>(s.size()));
    std::vector<std::pair<Point, Rat>> masses;
    masses.reserve(s.points().size());
    for (const Point& p : s.points()) masses.emplace_back(p, m);
    return LatticeDistribution(s.dim(), std::move(masses));
}

LatticeDistribution marginal(const LatticeDistribution& p, const std::vector<int>& coords) {
    auto g = sorted_unique(coords);
    if (g.empty()) throw std::invalid_argument("marginal: empty coordinate set");
    if (g.front() < 0 || g.back() >= p.dim())
        throw std::invalid_argument("marginal: coordinate index out of range");
    std::map<Point, Rat> acc;
    for (const auto& [pt, m] : p.entries()) acc[subtuple(pt, g)] += m;
    std::vector<std::pair<Point, Rat>> masses(acc.begin(), acc.end());
    return LatticeDistribution(static_cast<int>(g.size()), std::move(masses));
}

LatticeDistribution product_of_marginals(const LatticeDistribution& p, const PartitionSpec& part,
                                         std::size_t max_support) {
    if (part.dim != p.dim()) throw std::invalid_argument("product_of_marginals: dimension mismatch");
    std::vector<LatticeDistribution> margs;
    margs.reserve(part.blocks.size());
    std::size_t grid = 1;
    for (const auto& b : part.blocks) {
        margs.push_back(marginal(p, b));
        grid *= static_cast<std::size_t>(margs.back().support_size());
        if (grid > max_support)
            throw std::length_error("product_of_marginals: grid exceeds support cap");
    }
    std::vector<std::pair<Point, Rat>> masses;
    masses.reserve(grid);
    std::vector<std::size_t> idx(part.blocks.size(), 0);
    while (true) {
        Point pt(p.dim());
        Rat m(1);
        for (std::size_t j = 0; j < part.blocks.size(); ++j) {
            const auto& [sub, sm] = margs[j].entries()[idx[j]];
            for (std::size_t k = 0; k < part.blocks[j].size(); ++k)
                pt[part.blocks[j][k]] = sub[k];
            m *= sm;
        }
        masses.emplace_back(std::move(pt), std::move(m));
        int j = static_cast<int>(part.blocks.size()) - 1;
        while (j >= 0 &&
               ++idx[j] == static_cast<std::size_t>(margs[j].support_size()))
            idx[j--] = 0;
        if (j < 0) break;
    }
    return LatticeDistribution(p.dim(), std::move(masses));
}

long double entropy(const LatticeDistribution& p) {
    long double h = 0;
    for (const auto& [pt, m] : p.entries()) h -= to_long_double(m) * log2_mass(m);
    return h < 0 ? 0.0L : h;
}

ExtReal kl_divergence(const LatticeDistribution& p, const LatticeDistribution& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("kl_divergence: dimension mismatch");
    if (p == q) return ExtReal::of(0.0L);
    long double d = 0;
    for (const auto& [pt, pm] : p.entries()) {
        const Rat qm = q.mass(pt);
        if (qm == 0) return ExtReal::inf();
        d += to_long_double(pm) * (log2_mass(pm) - log2_mass(qm));
    }
    return ExtReal::of(d);
}

long double divergence_from_product(const LatticeDistribution& p, const PartitionSpec& part) {
    if (part.dim != p.dim())
        throw std::invalid_argument("divergence_from_product: dimension mismatch");
    std::vector<LatticeDistribution> margs;
    margs.reserve(part.blocks.size());
    for (const auto& b : part.blocks) margs.push_back(marginal(p, b));
    long double div = 0;
    for (const auto& [pt, m] : p.entries()) {
        long double t = log2_mass(m);
        for (std::size_t j = 0; j < part.blocks.size(); ++j)
            t -= log2_mass(margs[j].mass(subtuple(pt, part.blocks[j])));
        div += to_long_double(m) * t;
    }
    return div;
}

MutualInfo mutual_information(const LatticeDistribution& p, const std::vector<int>& coords) {
    auto g = sorted_unique(coords);
    if (g.empty() || static_cast<int>(g.size()) >= p.dim())
        throw std::invalid_argument("mutual_information: split must be a nonempty proper subset");
    if (g.front() < 0 || g.back() >= p.dim())
        throw std::invalid_argument("mutual_information: coordinate index out of range");
    const auto gc = complement_of(g, p.dim());

    const LatticeDistribution pg = marginal(p, g);
    const LatticeDistribution pgc = marginal(p, gc);

    MutualInfo mi;
    mi.value = entropy(pg) + entropy(pgc) - entropy(p);

    long double div = 0;
    for (const auto& [pt, m] : p.entries()) {
        div += to_long_double(m) * (log2_mass(m) - log2_mass(pg.mass(subtuple(pt, g))) -
                                    log2_mass(pgc.mass(subtuple(pt, gc))));
    }
    mi.via_divergence = div;

    if (std::fabs(mi.value - mi.via_divergence) > kIdentityTol)
        throw std::logic_error("mutual_information: entropy and divergence forms disagree");
    return mi;
}

Rat hole_weight(const PointSet& s, const PartitionSpec& part) {
    if (s.empty()) throw std::invalid_argument("hole_weight: S must be nonempty");
    if (part.dim != s.dim()) throw std::invalid_argument("hole_weight: dimension mismatch");

    const std::size_t r = part.blocks.size();
    std::vector<std::unordered_map<Point, std::int64_t, PointHash>> counts(r);
    for (const Point& p : s.points())
        for (std::size_t j = 0; j < r; ++j) ++counts[j][subtuple(p, part.blocks[j])];

    // Product measure of the complement of S:
    // 1 - sum_{x in S} prod_j count_j(x_{g_j}) / n^r.
    Int covered = 0;
    for (const Point& p : s.points()) {
        Int term = 1;
        for (std::size_t j = 0; j < r; ++j)
            term *= Int(counts[j][subtuple(p, part.blocks[j])]);
        covered += term;
    }
    const Int total = int_pow(Int(s.size()), static_cast<unsigned long>(r));
    Rat hole(total - covered, total);
    hole.canonicalize();
    return hole;
}

TelescopeCheck telescope_check(const LatticeDistribution& p) {
    const int d = p.dim();
    if (d < 2) throw std::invalid_argument("telescope_check: d must be >= 2");

    std::vector<LatticeDistribution> singles;
    singles.reserve(d);
    for (int i = 0; i < d; ++i) singles.push_back(marginal(p, {i}));

    TelescopeCheck out;
    for (const auto& [pt, m] : p.entries()) {
        long double t = log2_mass(m);
        for (int i = 0; i < d; ++i) t -= log2_mass(singles[i].mass({pt[i]}));
        out.lhs += to_long_double(m) * t;
    }

    std::vector<int> prefix = {0};
    for (int i = 1; i < d; ++i) {
        std::vector<int> upto = prefix;
        upto.push_back(i);
        const LatticeDistribution p_upto = marginal(p, upto);
        const LatticeDistribution p_prefix = marginal(p, prefix);
        long double term = 0;
        for (const auto& [pt, m] : p_upto.entries()) {
            Point head(pt.begin(), pt.end() - 1);
            term += to_long_double(m) * (log2_mass(m) - log2_mass(p_prefix.mass(head)) -
                                         log2_mass(singles[i].mass({pt.back()})));
        }
        out.rhs_terms.push_back(term);
        prefix = std::move(upto);
    }
    return out;
}

PinskerBound pinsker_bound(const LatticeDistribution& p, const LatticeDistribution& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("pinsker_bound: dimension mismatch");

    Rat l1(0);
    for (const auto& [pt, m] : p.entries()) l1 += abs(m - q.mass(pt));
    for (const auto& [pt, m] : q.entries())
        if (p.mass(pt) == 0) l1 += m;

    PinskerBound out;
    out.l1 = to_long_double(l1);
    const ExtReal d = kl_divergence(p, q);
    out.bound = d.infinite
                    ? ExtReal::inf()
                    : ExtReal::of(std::sqrt(2.0L * 0.6931471805599453094L * d.value));
    return out;
}

TightToInfoReport tight_to_info_check(const PointSet& s, const CoverFamily& g) {
    TightToInfoReport rep;
    const CoverStats stats = cover_stats(g);
    const Tightness t = uc_tightness(s, g);
    rep.epsilon = t.epsilon;
    rep.rho = stats.rho.value_or(Rat(0));

    if (!stats.rho.has_value()) {
        rep.applicable = false;
        rep.reason = "sigma(G) = 0, rho undefined";
    } else if (t.epsilon > 0.5L) {
        rep.applicable = false;
        rep.reason = "tightness epsilon exceeds 1/2";
    } else {
        rep.applicable = true;
    }

    const LatticeDistribution p = uniform_on(s);
    const long double bound = 2.0L * to_long_double(rep.rho) * rep.epsilon;
    bool all_ok = true;
    for (int i = 0; i < s.dim(); ++i) {
        CoordinateInfoCheck c;
        c.coord = i;
        const MutualInfo mi = mutual_information(p, {i});
        c.mi = mi.value;
        c.divergence = mi.via_divergence;
        c.bound = bound;
        c.mi_ok = c.mi <= bound + kIdentityTol;
        c.hole = hole_weight(s, PartitionSpec::coordinate_split(s.dim(), i));
        c.hole_ok = to_long_double(c.hole) <= c.divergence + kIdentityTol;
        all_ok = all_ok && c.mi_ok && c.hole_ok;
        rep.coords.push_back(std::move(c));
    }
    rep.all_ok = all_ok;
    return rep;
}

}  // namespace boxstab
