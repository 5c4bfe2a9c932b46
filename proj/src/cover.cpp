#include "boxstab/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace boxstab {

namespace {

void validate_sets(int dim, std::vector<std::vector<int>>& sets) {
    if (dim < 1) throw std::invalid_argument("CoverFamily: dimension must be >= 1");
    for (auto& g : sets) {
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        if (g.empty()) throw std::invalid_argument("CoverFamily: member sets must be nonempty");
        if (g.front() < 0 || g.back() >= dim)
            throw std::invalid_argument("CoverFamily: coordinate index out of range");
    }
}

}  // namespace

CoverFamily::CoverFamily(int dim, std::vector<std::vector<int>> sets) : dim_(dim) {
    validate_sets(dim, sets);
    sets_ = std::move(sets);
}

CoverFamily::CoverFamily(int dim, std::vector<std::vector<int>> sets, std::vector<Rat> weights)
    : dim_(dim), weighted_(true) {
    validate_sets(dim, sets);
    if (weights.size() != sets.size())
        throw std::invalid_argument("CoverFamily: one weight per set required");
    for (const Rat& w : weights)
        if (w < 0) throw std::invalid_argument("CoverFamily: weights must be nonnegative");
    sets_ = std::move(sets);
    weights_ = std::move(weights);
}

CoverFamily CoverFamily::loomis_whitney(int d) {
    if (d < 2) throw std::invalid_argument("loomis_whitney: d must be >= 2");
    std::vector<std::vector<int>> sets;
    sets.reserve(d);
    for (int skip = 0; skip < d; ++skip) {
        std::vector<int> g;
        for (int i = 0; i < d; ++i)
            if (i != skip) g.push_back(i);
        sets.push_back(std::move(g));
    }
    return CoverFamily(d, std::move(sets));
}

CoverStats cover_stats(const CoverFamily& g) {
    const int d = g.dim();
    if (d < 2)
        throw std::invalid_argument("cover_stats: sigma needs an ordered pair, d must be >= 2");

    std::vector<Rat> coverage(d, Rat(0));
    for (std::size_t k = 0; k < g.sets().size(); ++k) {
        for (int i : g.sets()[k]) coverage[i] += g.weight(k);
    }
    Rat m = coverage.empty() ? Rat(0) : coverage[0];
    for (const Rat& c : coverage) m = std::min(m, c);

    bool have_sigma = false;
    Rat sigma(0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            Rat sep(0);
            for (std::size_t k = 0; k < g.sets().size(); ++k) {
                const auto& set = g.sets()[k];
                const bool has_i = std::binary_search(set.begin(), set.end(), i);
                const bool has_j = std::binary_search(set.begin(), set.end(), j);
                if (has_i && !has_j) sep += g.weight(k);
            }
            if (!have_sigma || sep < sigma) {
                sigma = sep;
                have_sigma = true;
            }
        }
    }

    CoverStats out;
    out.m = m;
    out.sigma = sigma;
    out.weighted = g.weighted();
    if (sigma > 0) out.rho = g.weighted() ? Rat(Rat(1) / sigma) : Rat(m / sigma);
    return out;
}

std::optional<long long> is_uniform_cover(const CoverFamily& g) {
    if (g.weighted())
        throw std::invalid_argument("is_uniform_cover: unweighted families only");
    std::vector<long long> coverage(g.dim(), 0);
    for (const auto& set : g.sets())
        for (int i : set) ++coverage[i];
    for (long long c : coverage)
        if (c != coverage[0] || c < 1) return std::nullopt;
    return coverage[0];
}

Tightness uc_tightness(const PointSet& s, const CoverFamily& g) {
    if (s.empty()) throw std::invalid_argument("uc_tightness: S must be nonempty");
    if (s.dim() != g.dim()) throw std::invalid_argument("uc_tightness: dimension mismatch");

    long double log2_rhs = 0;
    if (g.weighted()) {
        Rat min_coverage(0);
        {
            std::vector<Rat> coverage(g.dim(), Rat(0));
            for (std::size_t k = 0; k < g.sets().size(); ++k)
                for (int i : g.sets()[k]) coverage[i] += g.weight(k);
            min_coverage = coverage[0];
            for (const Rat& c : coverage) min_coverage = std::min(min_coverage, c);
        }
        if (!(min_coverage > 0))
            throw std::invalid_argument("uc_tightness: some coordinate has zero total weight");
        for (std::size_t k = 0; k < g.sets().size(); ++k) {
            const Int proj(project(s, g.sets()[k]).size());
            log2_rhs += to_long_double(g.weight(k)) * log2_ld(proj);
        }
    } else {
        long long m = std::numeric_limits<long long>::max();
        {
            std::vector<long long> coverage(g.dim(), 0);
            for (const auto& set : g.sets())
                for (int i : set) ++coverage[i];
            for (long long c : coverage) m = std::min(m, c);
        }
        if (m < 1) throw std::invalid_argument("uc_tightness: m(G) must be positive");
        for (const auto& set : g.sets()) log2_rhs += log2_ld(Int(project(s, set).size()));
        log2_rhs /= static_cast<long double>(m);
    }

    Tightness t;
    t.rhs = std::exp2(log2_rhs);
    t.epsilon_raw = 1.0L - std::exp2(log2_ld(Int(s.size())) - log2_rhs);
    t.epsilon = std::min(1.0L, std::max(0.0L, t.epsilon_raw));
    return t;
}

Int projection_product(const PointSet& s, const CoverFamily& g) {
    if (g.weighted())
        throw std::invalid_argument("projection_product: unweighted families only");
    Int p = 1;
    for (const auto& set : g.sets()) p *= Int(project(s, set).size());
    return p;
}

namespace {

long long unweighted_m(const CoverFamily& g) {
    std::vector<long long> coverage(g.dim(), 0);
    for (const auto& set : g.sets())
        for (int i : set) ++coverage[i];
    long long m = std::numeric_limits<long long>::max();
    for (long long c : coverage) m = std::min(m, c);
    return m;
}

}  // namespace

bool uc_scaled_bound_holds(const PointSet& s, const CoverFamily& g, const Rat& c, const Int& lhs) {
    if (g.weighted())
        throw std::invalid_argument("uc_scaled_bound_holds: unweighted families only");
    const long long m = unweighted_m(g);
    if (m < 1) throw std::invalid_argument("uc_scaled_bound_holds: m(G) must be positive");
    // lhs <= c*eps*n  <=>  (c.num*n - c.den*lhs)^m * P >= (c.num * n^2)^m,
    // provided the base on the left is nonnegative (else the bound fails).
    const Int n(s.size());
    const Int base = c.get_num() * n - c.get_den() * lhs;
    if (base < 0) return false;
    const Int p = projection_product(s, g);
    const auto e = static_cast<unsigned long>(m);
    return int_pow(base, e) * p >= int_pow(Int(c.get_num() * n * n), e);
}

bool uc_epsilon_below(const PointSet& s, const CoverFamily& g, const Rat& x) {
    if (g.weighted())
        throw std::invalid_argument("uc_epsilon_below: unweighted families only");
    const long long m = unweighted_m(g);
    if (m < 1) throw std::invalid_argument("uc_epsilon_below: m(G) must be positive");
    // eps < x  <=>  n / P^{1/m} > 1 - x  <=>  (n * x.den)^m > (x.den - x.num)^m * P.
    const Int u = Int(x.get_den()) - Int(x.get_num());
    if (u <= 0) return true;  // eps < 1 <= x always
    const Int n(s.size());
    const auto e = static_cast<unsigned long>(m);
    return int_pow(n * x.get_den(), e) > int_pow(u, e) * projection_product(s, g);
}

}  // namespace boxstab
