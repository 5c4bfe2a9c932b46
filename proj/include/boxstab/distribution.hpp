#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "boxstab/cover.hpp"
#include "boxstab/point_set.hpp"
#include "boxstab/rational.hpp"

namespace boxstab {

// Real number or an explicit infinity marker (never a floating-point inf in
// reports).
struct ExtReal {
    long double value = 0;
    bool infinite = false;

    static ExtReal inf() { return {0, true}; }
    static ExtReal of(long double v) { return {v, false}; }
};

// Probability distribution on Z^d with exact positive rational masses summing
// to exactly 1. Immutable; entries kept in lexicographic point order.
class LatticeDistribution {
public:
    LatticeDistribution(int dim, std::vector<std::pair<Point, Rat>> masses);

    int dim() const { return dim_; }
    std::int64_t support_size() const { return static_cast<std::int64_t>(entries_.size()); }
    const std::vector<std::pair<Point, Rat>>& entries() const { return entries_; }

    // Exact mass, zero off support.
    Rat mass(const Point& p) const;

    bool operator==(const LatticeDistribution& o) const {
        return dim_ == o.dim_ && entries_ == o.entries_;
    }
    bool operator!=(const LatticeDistribution& o) const { return !(*this == o); }

private:
    int dim_;
    std::vector<std::pair<Point, Rat>> entries_;
    std::unordered_map<Point, std::size_t, PointHash> index_;
};

// Ordered partition (g_1,...,g_r) of {0,...,d-1} into disjoint nonempty
// blocks.
struct PartitionSpec {
    int dim = 0;
    std::vector<std::vector<int>> blocks;

    PartitionSpec(int d, std::vector<std::vector<int>> blocks_);

    // ({i}, complement)
    static PartitionSpec coordinate_split(int d, int i);
    // ({0},{1},...,{d-1})
    static PartitionSpec singletons(int d);
};

LatticeDistribution uniform_on(const PointSet& s);

// Marginal on the given coordinate set (0-based, increasing order kept).
LatticeDistribution marginal(const LatticeDistribution& p, const std::vector<int>& coords);

// Materialized product of block marginals, a distribution over the grid
// prod_j supp(p_{g_j}). Refuses grids above max_support points.
LatticeDistribution product_of_marginals(const LatticeDistribution& p, const PartitionSpec& part,
                                         std::size_t max_support = 5'000'000);

// Shannon entropy in bits, 0 log 0 = 0.
long double entropy(const LatticeDistribution& p);

// Kullback-Leibler divergence in bits; infinite when supp(p) is not contained
// in supp(q). Exactly zero when p == q.
ExtReal kl_divergence(const LatticeDistribution& p, const LatticeDistribution& q);

// D(p || prod_j p_{g_j}), evaluated over supp(p) without materializing the
// product distribution (the support condition always holds here).
long double divergence_from_product(const LatticeDistribution& p, const PartitionSpec& part);

struct MutualInfo {
    long double value = 0;           // H(p_g) + H(p_{g^c}) - H(p)
    long double via_divergence = 0;  // D(p || p_g p_{g^c})
};

// Mutual information between the coordinates in g and the rest, computed by
// both formulas, which must agree within 1e-9.
MutualInfo mutual_information(const LatticeDistribution& p, const std::vector<int>& g);

// Hole-weight of S with respect to the partition: the product-of-marginals
// measure of the complement of S. Computed exactly as
// 1 - sum_{x in S} prod_j p_{g_j}(x_{g_j}).
Rat hole_weight(const PointSet& s, const PartitionSpec& part);

struct TelescopeCheck {
    long double lhs = 0;  // total correlation D(p || prod p_i)
    std::vector<long double> rhs_terms;
    long double rhs_sum() const {
        long double s = 0;
        for (long double t : rhs_terms) s += t;
        return s;
    }
};

// Both sides of the telescoping identity
// D(p || prod p_i) = sum_{i=2..d} D(p_{[i]} || p_{[i-1]} p_i).
TelescopeCheck telescope_check(const LatticeDistribution& p);

struct PinskerBound {
    long double l1 = 0;
    ExtReal bound;  // sqrt(2 ln2 * D(p||q))
};

PinskerBound pinsker_bound(const LatticeDistribution& p, const LatticeDistribution& q);

struct CoordinateInfoCheck {
    int coord = 0;
    long double mi = 0;          // I(p_{i}; p_{rest})
    long double bound = 0;       // 2 rho eps
    bool mi_ok = false;          // mi <= bound + 1e-9
    Rat hole;                    // Hole_i(S)
    long double divergence = 0;  // D(p || p_i p_rest) (equals mi)
    bool hole_ok = false;        // hole <= divergence + 1e-9
};

struct TightToInfoReport {
    bool applicable = false;  // eps <= 1/2 and sigma(G) > 0
    std::string reason;
    long double epsilon = 0;
    Rat rho;
    std::vector<CoordinateInfoCheck> coords;
    bool all_ok = false;
};

// Per-coordinate checks of the tightness-to-information lemma and the
// hole-vs-divergence claim. When the preconditions fail, values are still
// computed but the bounds are reported as not applicable.
TightToInfoReport tight_to_info_check(const PointSet& s, const CoverFamily& g);

}  // namespace boxstab
