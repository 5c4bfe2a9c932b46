#include <doctest.h>

#include <cmath>

#include "boxstab/distribution.hpp"
#include "boxstab/generators.hpp"
#include "boxstab/oracle.hpp"
#include "corpus.hpp"

using namespace boxstab;

namespace {
const double kLog2Three = std::log2(3.0);
}

TEST_SUITE_BEGIN("distribution");

TEST_CASE("uniform_on") {
    const PointSet single(2, {{5, 5}});
    CHECK(uniform_on(single).mass({5, 5}) == 1);

    const LatticeDistribution p = uniform_on(corpus::l_shape());
    CHECK(p.mass({0, 0}) == make_rat(1, 3));
    CHECK(p.mass({1, 1}) == 0);

    CHECK_THROWS_AS(uniform_on(PointSet(2, {})), std::invalid_argument);
}

TEST_CASE("marginal") {
    const LatticeDistribution p = uniform_on(corpus::l_shape());
    const LatticeDistribution p0 = marginal(p, {0});
    CHECK(p0.mass({0}) == make_rat(2, 3));
    CHECK(p0.mass({1}) == make_rat(1, 3));
    CHECK(marginal(p, {0, 1}) == p);

    // product structure on a box
    const LatticeDistribution q = uniform_on(make_cuboid(2, 2, 3));
    CHECK(marginal(q, {0}).mass({1}) == make_rat(1, 2));
    CHECK(marginal(q, {1}).mass({3}) == make_rat(1, 3));

    CHECK_THROWS_AS(marginal(p, {}), std::invalid_argument);
    CHECK_THROWS_AS(marginal(p, {7}), std::invalid_argument);
}

TEST_CASE("entropy") {
    const LatticeDistribution u8 = uniform_on(corpus::full_box(3, 2));
    CHECK(static_cast<double>(entropy(u8)) == 3.0);  // exactly log2 8

    const PointSet single(1, {{0}});
    CHECK(entropy(uniform_on(single)) == 0.0L);

    const LatticeDistribution p = marginal(uniform_on(corpus::l_shape()), {0});
    CHECK(static_cast<double>(entropy(p)) ==
          doctest::Approx(kLog2Three - 2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("entropy is bounded by the log support size") {
    SplitMix64 rng(30);
    for (int t = 0; t < 60; ++t) {
        const int d = 2 + static_cast<int>(rng.below(3));
        const PointSet s = corpus::random_set(rng, d, 25);
        const LatticeDistribution p = uniform_on(s);
        const LatticeDistribution m = marginal(p, {static_cast<int>(rng.below(d))});
        for (const auto* q : {&p, &m}) {
            CHECK(entropy(*q) <=
                  std::log2(static_cast<long double>(q->support_size())) + 1e-12L);
        }
    }
}

TEST_CASE("kl_divergence") {
    const LatticeDistribution p = uniform_on(corpus::l_shape());
    const ExtReal self = kl_divergence(p, p);
    CHECK_FALSE(self.infinite);
    CHECK(self.value == 0.0L);

    const LatticeDistribution q = uniform_on(PointSet(2, {{0, 0}, {0, 1}}));
    CHECK(kl_divergence(p, q).infinite);  // supp(p) not within supp(q)

    const LatticeDistribution prod = product_of_marginals(p, PartitionSpec::singletons(2));
    const ExtReal d = kl_divergence(p, prod);
    CHECK_FALSE(d.infinite);
    CHECK(static_cast<double>(d.value) ==
          doctest::Approx(kLog2Three - 4.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(kl_divergence(p, uniform_on(PointSet(3, {{0, 0, 0}}))),
                    std::invalid_argument);
}

TEST_CASE("kl is zero iff equal on random pairs") {
    SplitMix64 rng(31);
    for (int t = 0; t < 60; ++t) {
        const PointSet a = corpus::random_set(rng, 2, 12, 3);
        const PointSet b = corpus::random_set(rng, 2, 12, 3);
        const LatticeDistribution p = uniform_on(a);
        const LatticeDistribution q = uniform_on(b);
        const ExtReal d = kl_divergence(p, q);
        if (p == q) {
            CHECK_FALSE(d.infinite);
            CHECK(d.value == 0.0L);
        } else if (!d.infinite) {
            CHECK(d.value > 0.0L);
        }
    }
}

TEST_CASE("mutual information") {
    const LatticeDistribution box = uniform_on(make_cuboid(2, 3, 5));
    CHECK(std::fabs(static_cast<double>(mutual_information(box, {0}).value)) < 1e-12);

    const MutualInfo mi = mutual_information(uniform_on(corpus::l_shape()), {0});
    CHECK(static_cast<double>(mi.value) ==
          doctest::Approx(kLog2Three - 4.0 / 3.0).epsilon(1e-12));
    CHECK(static_cast<double>(mi.via_divergence) ==
          doctest::Approx(kLog2Three - 4.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(mutual_information(box, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(mutual_information(box, {}), std::invalid_argument);
}

TEST_CASE("mutual information symmetry and two-formula agreement") {
    SplitMix64 rng(32);
    for (int t = 0; t < 60; ++t) {
        const int d = 2 + static_cast<int>(rng.below(3));
        const PointSet s = corpus::random_set(rng, d, 25);
        const LatticeDistribution p = uniform_on(s);
        std::vector<int> g;
        for (int i = 0; i < d; ++i)
            if (rng.below(2) == 0) g.push_back(i);
        if (g.empty()) g.push_back(0);
        if (static_cast<int>(g.size()) == d) g.pop_back();
        std::vector<int> gc;
        for (int i = 0; i < d; ++i)
            if (std::find(g.begin(), g.end(), i) == g.end()) gc.push_back(i);
        const MutualInfo a = mutual_information(p, g);
        const MutualInfo b = mutual_information(p, gc);
        CHECK(std::fabs(static_cast<double>(a.value - b.value)) < 1e-9);
        CHECK(std::fabs(static_cast<double>(a.value - a.via_divergence)) < 1e-9);
    }
}

TEST_CASE("hole_weight examples") {
    // boxes have no holes
    const PointSet box = make_cuboid(3, 2, 4);
    CHECK(hole_weight(box, PartitionSpec::singletons(3)) == 0);
    CHECK(hole_weight(box, PartitionSpec::coordinate_split(3, 1)) == 0);

    CHECK(hole_weight(corpus::l_shape(), PartitionSpec::singletons(2)) == make_rat(1, 9));

    // annulus(10,3): nine holes, each with marginal mass (7/91)^2 = (1/13)^2
    CHECK(hole_weight(make_annulus(2, 10, 3), PartitionSpec::singletons(2)) ==
          make_rat(9, 169));
}

TEST_CASE("hole_weight agrees with the naive grid oracle") {
    SplitMix64 rng(33);
    const OracleBudget budget;
    for (int t = 0; t < 50; ++t) {
        const int d = 2 + static_cast<int>(rng.below(3));
        const PointSet s = corpus::random_set(rng, d, 20);
        const PartitionSpec part = corpus::random_partition(rng, d);
        CHECK(hole_weight(s, part) == recompute_hole_direct(s, part, budget));
    }
}

TEST_CASE("hole_weight bounded by divergence (dHvsdD)") {
    SplitMix64 rng(34);
    for (int t = 0; t < 80; ++t) {
        const int d = 2 + static_cast<int>(rng.below(3));
        const PointSet s = corpus::random_set(rng, d, 20);
        const PartitionSpec part = corpus::random_partition(rng, d);
        const LatticeDistribution p = uniform_on(s);
        const ExtReal div = kl_divergence(p, product_of_marginals(p, part));
        REQUIRE_FALSE(div.infinite);  // supp(p) is inside the product grid
        CHECK(to_long_double(hole_weight(s, part)) <= div.value + 1e-9L);
    }
}

TEST_CASE("telescope identity") {
    const TelescopeCheck box = telescope_check(uniform_on(make_cuboid(3, 2, 4)));
    CHECK(std::fabs(static_cast<double>(box.lhs)) < 1e-12);
    CHECK(std::fabs(static_cast<double>(box.rhs_sum())) < 1e-12);

    const TelescopeCheck l = telescope_check(uniform_on(corpus::l_shape()));
    CHECK(l.rhs_terms.size() == 1);
    CHECK(static_cast<double>(l.lhs) ==
          doctest::Approx(kLog2Three - 4.0 / 3.0).epsilon(1e-12));

    SplitMix64 rng(35);
    for (int t = 0; t < 60; ++t) {
        const int d = 2 + static_cast<int>(rng.below(3));
        const PointSet s = corpus::random_set(rng, d, 25);
        const TelescopeCheck c = telescope_check(uniform_on(s));
        CHECK(std::fabs(static_cast<double>(c.lhs - c.rhs_sum())) < 1e-9);
    }
}

TEST_CASE("pinsker bound") {
    const LatticeDistribution p = uniform_on(corpus::l_shape());
    const PinskerBound self = pinsker_bound(p, p);
    CHECK(self.l1 == 0.0L);
    CHECK(self.bound.value == 0.0L);

    const LatticeDistribution prod = product_of_marginals(p, PartitionSpec::singletons(2));
    const PinskerBound pb = pinsker_bound(p, prod);
    CHECK(std::fabs(static_cast<double>(pb.l1) - 4.0 / 9.0) < 1e-15);
    CHECK_FALSE(pb.bound.infinite);
    CHECK(static_cast<double>(pb.bound.value) == doctest::Approx(0.59062).epsilon(1e-4));
    CHECK(pb.l1 <= pb.bound.value);

    // infinite divergence keeps an explicit marker
    const LatticeDistribution q = uniform_on(PointSet(2, {{0, 0}}));
    CHECK(pinsker_bound(p, q).bound.infinite);
}

TEST_CASE("pinsker holds on random product pairs") {
    SplitMix64 rng(36);
    for (int t = 0; t < 60; ++t) {
        const int d = 2 + static_cast<int>(rng.below(2));
        const PointSet s = corpus::random_set(rng, d, 18, 4);
        const LatticeDistribution p = uniform_on(s);
        const PartitionSpec part = corpus::random_partition(rng, d);
        const PinskerBound pb = pinsker_bound(p, product_of_marginals(p, part));
        REQUIRE_FALSE(pb.bound.infinite);
        CHECK(pb.l1 <= pb.bound.value + 1e-9L);
    }
}

TEST_CASE("tight_to_info_check") {
    // boxes: zero information everywhere
    const TightToInfoReport box =
        tight_to_info_check(make_cuboid(2, 3, 4), CoverFamily(2, {{0}, {1}}));
    CHECK(box.applicable);
    CHECK(box.all_ok);
    for (const auto& c : box.coords) CHECK(std::fabs(static_cast<double>(c.mi)) < 1e-12);

    const TightToInfoReport l =
        tight_to_info_check(corpus::l_shape(), CoverFamily(2, {{0}, {1}}));
    CHECK(l.applicable);
    CHECK(static_cast<double>(l.epsilon) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(static_cast<double>(l.coords[0].bound) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(l.all_ok);

    const TightToInfoReport ann =
        tight_to_info_check(make_annulus(2, 10, 3), CoverFamily(2, {{0}, {1}}));
    CHECK(ann.applicable);
    CHECK(static_cast<double>(ann.coords[0].bound) == doctest::Approx(0.18).epsilon(1e-12));
    CHECK(ann.all_ok);

    // sigma = 0: not applicable, values still reported
    const TightToInfoReport na =
        tight_to_info_check(corpus::l_shape(), CoverFamily(2, {{0, 1}}));
    CHECK_FALSE(na.applicable);
    CHECK(na.coords.size() == 2);
}

TEST_CASE("tight_to_info bound on random corpus") {
    SplitMix64 rng(37);
    int tested = 0;
    for (int t = 0; t < 150; ++t) {
        const int d = 2 + static_cast<int>(rng.below(3));
        const PointSet s = corpus::random_set(rng, d, 30);
        const CoverFamily g = corpus::random_cover(rng, d);
        const TightToInfoReport rep = tight_to_info_check(s, g);
        if (!rep.applicable) continue;
        ++tested;
        CHECK(rep.all_ok);
    }
    CHECK(tested > 20);
}

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(LatticeDistribution(2, {{{0, 0}, make_rat(1, 2)}}), std::invalid_argument);
    CHECK_THROWS_AS(LatticeDistribution(2, {{{0, 0}, make_rat(-1, 2)}, {{0, 1}, make_rat(3, 2)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PartitionSpec(2, {{0}}), std::invalid_argument);
    CHECK_THROWS_AS(PartitionSpec(2, {{0, 1}, {1}}), std::invalid_argument);
}

TEST_SUITE_END();
