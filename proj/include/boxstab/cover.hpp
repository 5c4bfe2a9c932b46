#pragma once

#include <optional>
#include <vector>

#include "boxstab/point_set.hpp"
#include "boxstab/rational.hpp"

namespace boxstab {

// Multiset of nonempty subsets of {0,...,d-1}, optionally weighted with
// nonnegative rationals. Duplicates are allowed and counted.
class CoverFamily {
public:
    CoverFamily(int dim, std::vector<std::vector<int>> sets);
    CoverFamily(int dim, std::vector<std::vector<int>> sets, std::vector<Rat> weights);

    int dim() const { return dim_; }
    const std::vector<std::vector<int>>& sets() const { return sets_; }
    bool weighted() const { return weighted_; }
    Rat weight(std::size_t k) const { return weighted_ ? weights_[k] : Rat(1); }
    const std::vector<Rat>& weights() const { return weights_; }

    // All (d-1)-element subsets of {0,...,d-1}, ordered by excluded coordinate.
    static CoverFamily loomis_whitney(int d);

    bool operator==(const CoverFamily& o) const {
        return dim_ == o.dim_ && sets_ == o.sets_ && weighted_ == o.weighted_ &&
               weights_ == o.weights_;
    }

private:
    int dim_;
    std::vector<std::vector<int>> sets_;
    bool weighted_ = false;
    std::vector<Rat> weights_;
};

struct CoverStats {
    // Unweighted: m = min_i #{g : i in g}, sigma = min over ordered pairs
    // (i,j), i != j, of #{g : i in g, j not in g}, rho = m/sigma.
    // Weighted: counts become weight sums and rho = 1/sigma.
    Rat m;
    Rat sigma;
    std::optional<Rat> rho;  // defined iff sigma > 0
    bool weighted = false;
};

CoverStats cover_stats(const CoverFamily& g);

// Multiplicity m if every coordinate is covered exactly m >= 1 times;
// absent otherwise. Unweighted families only.
std::optional<long long> is_uniform_cover(const CoverFamily& g);

struct Tightness {
    long double epsilon = 0;      // clamped to [0,1]
    long double epsilon_raw = 0;  // unclamped 1 - |S|/rhs
    long double rhs = 0;          // (prod |pi_g S|^{w(g)})^{1/m}, weighted: exponent 1
};

// Relative gap of S in the uniform-cover inequality for G. Unweighted
// families use rhs = (prod_g |pi_g S|)^{1/m(G)}; weighted families use the
// weighted hypothesis form rhs = prod_g |pi_g S|^{w(g)}.
Tightness uc_tightness(const PointSet& s, const CoverFamily& g);

// prod_g |pi_g S| as an exact integer (unweighted evaluation).
Int projection_product(const PointSet& s, const CoverFamily& g);

// Exact decision of `lhs <= c * eps * |S|` for unweighted G, where
// eps = 1 - |S| / (prod |pi_g S|)^{1/m}. Clearing the m-th root turns the
// comparison into pure integer arithmetic.
bool uc_scaled_bound_holds(const PointSet& s, const CoverFamily& g, const Rat& c, const Int& lhs);

// Exact decision of `eps < x` for unweighted G (same trick).
bool uc_epsilon_below(const PointSet& s, const CoverFamily& g, const Rat& x);

}  // namespace boxstab
