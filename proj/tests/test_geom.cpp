#include "apf/geom.hpp"

#include "support/random_gen.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace apf;
using testgen::Rng;

namespace {

RPoint pt(long long x, long long y) { return {Rational(x), Rational(y)}; }

// Independent betweenness oracle: solve b = a + t(c-a) for rational t and
// require 0 < t < 1. Deliberately a different route than the cross-product
// predicate it checks.
bool between_oracle(const RPoint& a, const RPoint& b, const RPoint& c) {
    const RPoint d = c - a;
    if (d.x == 0 && d.y == 0) return false;
    Rational t;
    if (d.x != 0) {
        t = (b.x - a.x) / d.x;
        if (a.y + t * d.y != b.y) return false;
    } else {
        t = (b.y - a.y) / d.y;
        if (b.x != a.x) return false;
    }
    return 0 < t && t < 1;
}

// Brute-force symmetry oracle: try the single candidate axis by explicit
// reflection of every point.
std::optional<HorizontalAxis> symmetry_oracle(const std::vector<RPoint>& pts) {
    if (pts.empty()) return std::nullopt;
    Rational min_y = pts[0].y, max_y = pts[0].y;
    for (const auto& p : pts) {
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const Rational axis = (min_y + max_y) / 2;
    bool on_axis = false;
    for (const auto& p : pts) {
        if (p.y == axis) on_axis = true;
        bool found = false;
        for (const auto& q : pts)
            if (q.x == p.x && q.y == 2 * axis - p.y) found = true;
        if (!found) return std::nullopt;
    }
    return HorizontalAxis{axis, on_axis};
}

}  // namespace

TEST_CASE("strictly_between on the spec cases") {
    CHECK(strictly_between(pt(0, 0), pt(1, 1), pt(2, 2)));
    CHECK_FALSE(strictly_between(pt(0, 0), pt(0, 0), pt(2, 2)));
    // cross-product collinearity: 1*2 - 1*3 != 0
    CHECK_FALSE(strictly_between(pt(0, 0), pt(1, 1), pt(3, 2)));
    CHECK_FALSE(strictly_between(pt(1, 1), pt(1, 1), pt(1, 1)));  // a == c
    CHECK(strictly_between(pt(0, 0), pt(0, 1), pt(0, 3)));        // vertical
}

TEST_CASE("strictly_between is symmetric in the endpoints") {
    Rng rng(11);
    for (int it = 0; it < 2000; ++it) {
        const RPoint a{testgen::random_rational(rng, 5), testgen::random_rational(rng, 5)};
        const RPoint b{testgen::random_rational(rng, 5), testgen::random_rational(rng, 5)};
        const RPoint c{testgen::random_rational(rng, 5), testgen::random_rational(rng, 5)};
        CHECK(strictly_between(a, b, c) == strictly_between(c, b, a));
        CHECK(strictly_between(a, b, c) == between_oracle(a, b, c));
    }
}

TEST_CASE("lex_compare") {
    CHECK(lex_compare(pt(0, 5), pt(1, 0)) == std::strong_ordering::less);
    CHECK(lex_compare(pt(2, 1), pt(2, 3)) == std::strong_ordering::less);
    CHECK(lex_compare(pt(2, 3), pt(2, 3)) == std::strong_ordering::equal);
    CHECK(lex_compare(pt(3, 0), pt(2, 9)) == std::strong_ordering::greater);
}

TEST_CASE("horizontal_symmetry_axis on the spec cases") {
    SECTION("explicit mirror pairs") {
        auto r = horizontal_symmetry_axis({pt(0, 1), pt(0, -1), pt(2, 2), pt(2, -2)});
        REQUIRE(r.has_value());
        CHECK(r->axis_y == 0);
        CHECK_FALSE(r->has_point_on_axis);
    }
    SECTION("asymmetric pair") {
        // only candidate axis y=1/2; reflection of (0,0) is (0,1), absent
        CHECK_FALSE(horizontal_symmetry_axis({pt(0, 0), pt(1, 1)}).has_value());
    }
    SECTION("point on the axis") {
        auto r = horizontal_symmetry_axis({pt(0, 0), pt(0, 2), pt(1, 1)});
        REQUIRE(r.has_value());
        CHECK(r->axis_y == 1);
        CHECK(r->has_point_on_axis);
    }
    SECTION("empty input") { CHECK_FALSE(horizontal_symmetry_axis({}).has_value()); }
}

TEST_CASE("horizontal_symmetry_axis agrees with the reflection oracle") {
    Rng rng(23);
    int symmetric_seen = 0;
    for (int it = 0; it < 1500; ++it) {
        const std::size_t n = 1 + rng.below(10);
        auto pts = testgen::random_distinct_points(rng, n, 4, 2);
        // Mirror half of the draws to make symmetric sets common.
        if (it % 2 == 0) {
            std::vector<RPoint> sym;
            for (const auto& p : pts) {
                sym.push_back(p);
                const RPoint m{p.x, -p.y};
                if (std::find(sym.begin(), sym.end(), m) == sym.end()) sym.push_back(m);
            }
            pts = sym;
        }
        auto got = horizontal_symmetry_axis(pts);
        auto want = symmetry_oracle(pts);
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
            ++symmetric_seen;
            CHECK(got->axis_y == want->axis_y);
            CHECK(got->has_point_on_axis == want->has_point_on_axis);
        }
    }
    CHECK(symmetric_seen > 100);
}

TEST_CASE("match_axis_aligned_similarity on the spec cases") {
    SECTION("identity") {
        auto t = match_axis_aligned_similarity({pt(0, 0), pt(1, 0)}, {pt(0, 0), pt(1, 0)});
        REQUIRE(t.has_value());
        CHECK(t->isometry == Isometry::identity);
        CHECK(t->scale == 1);
        CHECK(t->translation == pt(0, 0));
    }
    SECTION("uniform scaling plus translation") {
        auto t = match_axis_aligned_similarity({pt(0, 0), pt(1, 0), pt(1, 1)},
                                               {pt(5, 5), pt(7, 5), pt(7, 7)});
        REQUIRE(t.has_value());
        CHECK(t->isometry == Isometry::identity);
        CHECK(t->scale == 2);
        CHECK(t->translation == pt(5, 5));
    }
    SECTION("rotation member found by the exhaustive oracle") {
        const std::vector<RPoint> a = {pt(0, 0), pt(2, 0), pt(2, 1)};
        const std::vector<RPoint> b = {pt(0, 0), pt(0, 2), pt(-1, 2)};
        auto t = match_axis_aligned_similarity(a, b);
        REQUIRE(t.has_value());
        // exhaustive check over all 8 isometries on n=3: only rot90 works
        for (Isometry m : kAllIsometries) {
            bool any = false;
            std::vector<RPoint> img;
            for (const auto& p : a) img.push_back(apply_isometry(m, p));
            // all anchor pairs
            for (const auto& base : img)
                for (const auto& target : b) {
                    const RPoint shift = target - base;
                    std::vector<RPoint> moved;
                    for (const auto& p : img) moved.push_back(p + shift);
                    std::vector<RPoint> ms = moved, bs = b;
                    std::sort(ms.begin(), ms.end(), lex_less);
                    std::sort(bs.begin(), bs.end(), lex_less);
                    any = any || ms == bs;
                }
            if (m == Isometry::rot90)
                CHECK(any);
            else
                CHECK_FALSE(any);
        }
        CHECK(t->isometry == Isometry::rot90);
    }
    SECTION("no match") {
        CHECK_FALSE(match_axis_aligned_similarity({pt(0, 0), pt(1, 0), pt(2, 0)},
                                                  {pt(0, 0), pt(1, 0), pt(3, 0)})
                        .has_value());
    }
}

TEST_CASE("similarity round-trip property") {
    Rng rng(37);
    for (int it = 0; it < 400; ++it) {
        const std::size_t n = 1 + rng.below(8);
        auto a = testgen::random_distinct_points(rng, n, 6, 3);
        AxisAlignedSimilarity t;
        t.isometry = kAllIsometries[rng.below(8)];
        t.scale = testgen::random_positive_rational(rng, 5, 3);
        t.translation = {testgen::random_rational(rng, 7, 2), testgen::random_rational(rng, 7, 2)};
        std::vector<RPoint> b;
        for (const auto& p : a) b.push_back(t.apply(p));

        auto found = match_axis_aligned_similarity(a, b);
        REQUIRE(found.has_value());
        std::multiset<std::string> want, got;
        for (const auto& p : b) want.insert(rat_to_string(p.x) + "," + rat_to_string(p.y));
        for (const auto& p : a) {
            const RPoint q = found->apply(p);
            got.insert(rat_to_string(q.x) + "," + rat_to_string(q.y));
        }
        CHECK(want == got);

        // applying then inverting is the identity
        const RPoint probe{testgen::random_rational(rng, 9, 4), testgen::random_rational(rng, 9, 4)};
        CHECK(t.inverse().apply(t.apply(probe)) == probe);
    }
}

TEST_CASE("predicates are scale-invariant under huge common factors") {
    Rng rng(41);
    const Rational huge = Rational(BigInt("987654321987654321987654321"), 7);
    for (int it = 0; it < 200; ++it) {
        const RPoint a{testgen::random_rational(rng, 5), testgen::random_rational(rng, 5)};
        const RPoint b{testgen::random_rational(rng, 5), testgen::random_rational(rng, 5)};
        const RPoint c{testgen::random_rational(rng, 5), testgen::random_rational(rng, 5)};
        const RPoint ha = huge * a, hb = huge * b, hc = huge * c;
        CHECK(strictly_between(a, b, c) == strictly_between(ha, hb, hc));
        CHECK(lex_compare(a, b) == lex_compare(ha, hb));
    }
}
