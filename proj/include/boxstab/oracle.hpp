#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "boxstab/distribution.hpp"
#include "boxstab/point_set.hpp"

namespace boxstab {

// Enumeration caps for the brute-force oracles. Searches refuse instances
// above the caps instead of running unbounded.
struct OracleBudget {
    // Cap on the per-coordinate candidate count: each enumerated coordinate
    // may contribute at most 2^max_projection_size edge choices (after the
    // exact fibre-class collapsing described in optimal_box).
    int max_projection_size = 14;
    // Cap on the cube side range and on each bounding-box extent.
    Coord max_cube_side = 64;
    // Advisory only; recorded in refusal messages, never enforced.
    double time_hint_seconds = 60.0;

    static OracleBudget defaults_for(int d);
};

// Thrown when an instance exceeds the budget. `required` is a machine-usable
// estimate of the budget the instance would need.
class oracle_refusal : public std::runtime_error {
public:
    oracle_refusal(std::string reason_, std::string required_)
        : std::runtime_error(reason_), reason(std::move(reason_)), required(std::move(required_)) {}

    std::string reason;
    std::string required;
};

enum class EnumOrder { ascending, descending };

struct OptimalBox {
    LatticeBox box;
    Int sym_diff;
};

// Exhaustive minimum of |S delta (E_1 x ... x E_d)| over E_i subsets of
// pi_i(S). Restricting edges to the projections loses nothing: a box point
// outside prod pi_i(S) can only enlarge the symmetric difference, so dropping
// the offending edge values never hurts. Two exact reductions keep this
// desk-scale:
//   - coordinate values with identical fibres are interchangeable, so only
//     the number chosen per fibre class matters (candidates are class
//     multiplicity vectors, lex-smallest representatives);
//   - for the last coordinate the optimum is separable and computed directly.
// Ties are broken by the lexicographically smallest (E_1,...,E_d) encoding,
// each edge as its sorted element list. `order` only permutes the enumeration
// and must not affect the result.
OptimalBox optimal_box(const PointSet& s, const OracleBudget& budget,
                       EnumOrder order = EnumOrder::ascending);

struct OptimalCube {
    CubeSpec cube;
    Int sym_diff;
};

// Exhaustive minimum of |S delta C| over cubes with side L in [1, diameter+1]
// and corners in the bounding box inflated by L in each direction. Ties are
// broken by smallest L, then lexicographically smallest corner.
OptimalCube optimal_cube(const PointSet& s, const OracleBudget& budget);

// Independent recomputations by naive definition-level enumeration, sharing
// no code with the primary implementations.
Rat recompute_hole_direct(const PointSet& s, const PartitionSpec& part, const OracleBudget& budget);
double recompute_entropy_direct(const PointSet& s, const std::vector<int>& coords);
double recompute_mi_direct(const PointSet& s, int coord);
std::int64_t recompute_boundary_direct(const PointSet& s);

}  // namespace boxstab
