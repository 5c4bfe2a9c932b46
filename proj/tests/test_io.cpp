#include <doctest.h>

#include <sstream>

#include "boxstab/generators.hpp"
#include "boxstab/io.hpp"
#include "corpus.hpp"

using namespace boxstab;

TEST_SUITE_BEGIN("io");

TEST_CASE("pts round trip is bit exact") {
    SplitMix64 rng(71);
    for (int t = 0; t < 40; ++t) {
        const int d = 1 + static_cast<int>(rng.below(4));
        const PointSet s = corpus::random_set(rng, d, 25);
        const std::string bytes = canonical_pts(s);
        std::istringstream in(bytes);
        const PointSet back = read_point_set(in);
        CHECK(back == s);
        CHECK(canonical_pts(back) == bytes);
    }
}

TEST_CASE("pts reader reports duplicates and tolerates comments") {
    std::istringstream in("# sample\nd 2\n0 0\n0 0\n1 2\n\n# trailing\n");
    const PointSetReadResult r = read_point_set_verbose(in);
    CHECK(r.set.size() == 2);
    CHECK(r.duplicates_dropped == 1);
}

TEST_CASE("pts parse errors carry line and column") {
    std::istringstream bad_header("x 2\n");
    CHECK_THROWS_AS(read_point_set(bad_header), ParseError);

    std::istringstream bad_arity("d 2\n1 2 3\n");
    try {
        read_point_set(bad_arity);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }

    std::istringstream bad_int("d 2\n1 x\n");
    try {
        read_point_set(bad_int);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 3);
    }
}

TEST_CASE("cover round trip, weighted and unweighted") {
    const CoverFamily g(3, {{0, 1}, {1, 2}, {0, 2}});
    std::ostringstream out;
    write_cover(out, g);
    std::istringstream in(out.str());
    CHECK(read_cover(in) == g);

    const CoverFamily w(2, {{0}, {1}}, {make_rat(1, 2), make_rat(3, 2)});
    std::ostringstream wout;
    write_cover(wout, w);
    std::istringstream win(wout.str());
    const CoverFamily wback = read_cover(win);
    CHECK(wback == w);
}

TEST_CASE("cover file uses 1-based indices") {
    std::istringstream in("d 2\n1 2\n1\n");
    const CoverFamily g = read_cover(in);
    CHECK(g.sets()[0] == std::vector<int>{0, 1});
    CHECK(g.sets()[1] == std::vector<int>{0});

    std::istringstream out_of_range("d 2\n0 1\n");
    CHECK_THROWS_AS(read_cover(out_of_range), ParseError);
}

TEST_CASE("rational formatting") {
    CHECK(rat_to_string(make_rat(9, 169)) == "9/169");
    CHECK(rat_to_string(Rat(3)) == "3/1");
    CHECK(rat_from_string("9/169") == make_rat(9, 169));
    CHECK(rat_from_string("3") == Rat(3));
    CHECK_THROWS_AS(rat_from_string("x/y"), std::invalid_argument);
}

TEST_CASE("real formatting uses 15 significant digits") {
    CHECK(format_real(0.09L) == "0.09");
    CHECK(format_real(1.0L / 3.0L) == "0.333333333333333");
}

TEST_CASE("content hash is stable and content sensitive") {
    const PointSet a = corpus::l_shape();
    const PointSet b(2, {{0, 0}, {0, 1}, {1, 1}});
    CHECK(content_hash(a) == content_hash(a));
    CHECK(content_hash(a) != content_hash(b));
    CHECK(content_hash(a).size() == 16);
}

TEST_CASE("json serialization carries exact rationals") {
    const PointSet s = make_annulus(2, 10, 3);
    const CoverFamily lw = CoverFamily::loomis_whitney(2);
    const BoxStabilityReport rep = approximate_box(s, lw);
    const nlohmann::json j = to_json(rep);
    CHECK(j["sym_diff_ratio"] == "9/91");
    CHECK(j["s_minus_r"] == "0");
    CHECK(j["r_minus_s"] == "9");
    CHECK(j["box"]["cardinality"] == "100");
    CHECK(j["vacuous"] == true);

    const ExtReal inf = ExtReal::inf();
    CHECK(to_json(inf)["infinite"] == true);
}

TEST_SUITE_END();
