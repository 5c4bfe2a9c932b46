#pragma once

#include <optional>
#include <string>
#include <vector>

#include "boxstab/box_stability.hpp"
#include "boxstab/oracle.hpp"
#include "boxstab/point_set.hpp"

namespace boxstab {

// Relative boundary excess |dS| / (2d |S|^{(d-1)/d}) - 1, clamped at 0.
long double iso_deficit(const PointSet& s);

struct AmGmReport {
    bool applicable = false;  // hypothesis and epsilon <= 1/(16d) verified
    std::string reason;
    long double geo_mean = 0;
    long double epsilon = 0;
    long double lower_factor = 0;     // 1 - 2d sqrt(d eps)
    long double upper_factor = 0;     // 1 + 2 sqrt(d eps)
    std::vector<bool> per_index_ok;   // per sorted index, both bounds
    bool bounds_ok = false;
    bool max_proof_bound_ok = false;  // largest z <= (1 + 4 sqrt(d eps)) G
};

// Checks the stability bounds for the AM-GM inequality on a tuple of positive
// reals; the hypothesis (mean within (1+epsilon) of the geometric mean) is
// re-verified before asserting anything. Input order is irrelevant; the tuple
// is sorted internally.
AmGmReport am_gm_stability_check(std::vector<long double> z, long double epsilon);

struct HeavyLightResult {
    LatticeBox filtered;
    std::vector<std::int64_t> light_counts;  // removed values per coordinate
};

// Keeps, in each coordinate of R, the values whose slice of R contains at
// least 7/8 of a full slice's worth of points of S (exact integer
// comparison against the rational threshold).
HeavyLightResult heavy_light_filter(const PointSet& s, const LatticeBox& r);

struct IsoClaimChecks {
    bool light_counts_ok = false;   // light_i <= 16 delta |R_i|
    bool edge_sizes_ok = false;     // (1-7delta) a <= |R_i| <= (1+14d delta) a
    bool interval_gaps_ok = false;  // span(R_i') - |R_i| <= 8 delta |R_i|
};

struct IsoReport {
    long double epsilon_iso = 0;
    long double delta = 0;     // sqrt(d * epsilon)
    long double a = 0;         // |S|^{1/d}
    long double geo_mean = 0;  // (prod_i |pi_{[d]\{i}} S|)^{1/d}
    LatticeBox box;            // R from the projection-stability construction
    LatticeBox filtered_box;   // R' after heavy/light filtering
    std::optional<CubeSpec> cube;
    Int sym_diff;
    Rat sym_diff_ratio;
    long double theoretical_bound = 0;  // 72 d^{5/2} sqrt(eps), ratio form
    long double proof_bound = 0;        // 60 d^{5/2} sqrt(eps)
    bool satisfied = false;
    bool vacuous = false;    // eps > 1/(72^2 d^5)
    bool degenerate = false; // some filtered edge emptied; no cube
    IsoClaimChecks claims;
    BoxStabilityReport box_report;
    std::int64_t s_card = 0;
};

// Full pipeline: boundary deficit -> box from the (d-1)-subset cover ->
// heavy/light filtering -> enclosing cube anchored at the min corners, with
// the stability bound certified.
IsoReport approximate_cube(const PointSet& s);

struct SharpnessProbe {
    long double epsilon = 0;
    Rat oracle_ratio;             // optimal box/cube distance over |S|
    long double scale = 0;        // eps (boxes) or sqrt(2 d eps)/2 (cubes)
    long double ratio_over_scale = 0;
};

// Oracle-certified sharpness measurements: annuli probe the Theta(eps) box
// scaling, cuboids the Theta(sqrt(eps)) cube scaling.
SharpnessProbe sharpness_probe_annulus(int d, Coord a, Coord a_inner, const OracleBudget& budget);
SharpnessProbe sharpness_probe_cuboid(int d, Coord a, Coord b, const OracleBudget& budget);

}  // namespace boxstab
