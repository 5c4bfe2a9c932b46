#pragma once

#include <optional>
#include <vector>

#include "boxstab/cover.hpp"
#include "boxstab/distribution.hpp"
#include "boxstab/point_set.hpp"

namespace boxstab {

struct TrimRound {
    std::vector<Coord> removed;  // fibre values removed this round
    Rat mass;                    // their total mass under p_coord
};

// Outcome of the iterative low-mass-fibre removal along one coordinate.
// kept and the per-round removals partition pi_coord(S); removed_mass is the
// exact sum of the round masses.
struct TrimResult {
    int coord = 0;
    Rat alpha;
    std::vector<Coord> kept;
    std::vector<TrimRound> rounds;
    Rat removed_mass;
    Rat hole;  // Hole_{coord}(S), recorded for the postcondition checks
    bool all_trimmed = false;
};

// Iteratively removes from pi_coord(S) the values whose fibre mass, relative
// to the surviving mass, is at most (1-alpha)/#survivors; stops at the first
// empty round. Thresholds are compared with exact rationals.
TrimResult trim(const PointSet& s, int coord, const Rat& alpha);

struct TrimVerification {
    bool removed_mass_ok = false;      // removed_mass <= 2*hole/alpha
    bool kept_lower_bound_ok = false;  // every kept fibre >= (1-2*hole/alpha)(1-alpha)/|kept|
    bool small_b1_ok = false;          // alpha * sum_j mass_j (1 - sum_{r<j} mass_r) <= hole
    Rat small_b1_lhs;
    bool all_ok() const { return removed_mass_ok && kept_lower_bound_ok && small_b1_ok; }
};

// Exact-rational verification of the trimming lemma's conclusions against the
// recorded rounds. These are proven facts; a failure indicates a bug.
TrimVerification verify_trim(const PointSet& s, const TrimResult& t);

struct BoxStabilityReport {
    long double epsilon = 0;
    long double epsilon_raw = 0;
    Rat rho;
    bool weighted = false;
    LatticeBox box;
    Int s_minus_r;
    Int r_minus_s;
    Rat sym_diff_ratio;                 // |S delta R| / |S|
    long double theoretical_bound = 0;  // (4d^2+64d) rho eps, ratio form
    bool satisfied = false;             // |S delta R| <= (4d^2+64d) rho eps |S|
    bool s_r_ok = false;                // |S \ R| <= 4d^2 rho eps |S|
    bool r_s_ok = false;                // |R \ S| <= 64d rho eps |S|
    bool vacuous = false;               // eps >= ((4d^2+64d) rho)^{-1}
    bool empty_edge = false;            // some trim removed everything
    std::vector<TrimResult> trims;
    std::int64_t s_card = 0;
};

// Runs the trim with alpha = 1/d along every coordinate, assembles the box
// R = R_1 x ... x R_d and certifies the stability bounds. For unweighted
// covers the bound comparisons are exact (integer arithmetic after clearing
// the m-th root); weighted covers are checked in long double.
BoxStabilityReport approximate_box(const PointSet& s, const CoverFamily& g);

struct Rectangle2d {
    int coord = 0;
    Rat hole;
    bool vacuous = false;          // hole >= 1/20: empty rectangle branch
    std::vector<Coord> r1;         // edge along `coord`
    std::vector<Point> r2;         // kept tuples over the remaining coordinates
    Int sym_diff;                  // |S delta (R1 x R2)|
    bool satisfied = false;        // sym_diff <= 20 * hole * |S| (exact)
};

// Two-sided trimming with alpha = 1/2, viewing S as a subset of
// X1 x X2 with X1 the chosen coordinate and X2 the product of the rest.
Rectangle2d rectangle_2d(const PointSet& s, int coord = 0);

struct Certification {
    Rat constructed_ratio;
    long double theoretical_bound = 0;
    bool within_bound = false;
    std::optional<Rat> oracle_ratio;  // absent when the oracle refused
    bool oracle_consistent = true;    // constructed >= oracle when both exist
    bool lw_cover = false;            // G is the (d-1)-subset cover
    bool lw_constant_ok = false;      // (d-1)(4d^2+64d) <= 36 d^3
};

struct OracleBudget;

Certification certify_bound(const PointSet& s, const CoverFamily& g,
                            const BoxStabilityReport& report,
                            const OracleBudget* budget = nullptr);

}  // namespace boxstab
