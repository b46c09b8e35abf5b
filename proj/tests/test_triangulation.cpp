#include <doctest.h>

#include <set>

#include "flipforge/triangulation.hpp"

using namespace flipforge;

static ExactPoint pt(long x, long y) { return {Rat(x), Rat(y)}; }

static SimplePolygon convex_hexagon() {
    return SimplePolygon({pt(0, 0), pt(4, 0), pt(6, 3), pt(4, 6), pt(0, 6), pt(-2, 3)});
}

TEST_CASE("fan triangulation of a convex polygon validates") {
    auto p = convex_hexagon();
    REQUIRE(p.validate().ok);
    for (int apex = 0; apex < p.size(); ++apex) {
        auto t = fan_triangulation(p, apex);
        auto rep = t.validate();
        CHECK(rep.ok);
        CHECK(t.diagonals().size() == 3);
        CHECK(t.triangles().size() == 4);
    }
}

TEST_CASE("validate rejects broken diagonal sets") {
    auto p = convex_hexagon();
    CHECK_FALSE(Triangulation(p, {}).validate().ok);
    CHECK_FALSE(Triangulation(p, {{0, 2}, {0, 3}, {2, 4}}).validate().ok);  // crossing
    CHECK_FALSE(Triangulation(p, {{0, 2}, {0, 2}, {0, 3}}).validate().ok);  // duplicate
    CHECK_FALSE(Triangulation(p, {{0, 1}, {0, 2}, {0, 3}}).validate().ok);  // boundary edge
}

TEST_CASE("flip replaces a diagonal with the opposite one") {
    auto p = convex_hexagon();
    auto t = fan_triangulation(p, 0);
    Diagonal d{0, 3};
    REQUIRE(t.flippable(d));
    CHECK(t.opposite_diagonal(d) == Diagonal{2, 4});
    auto t2 = t.flip(d);
    CHECK(t2.validate().ok);
    CHECK_FALSE(t2.has_diagonal(d));
    CHECK(t2.has_diagonal({2, 4}));
    // flipping back restores the original
    auto t3 = t2.flip({2, 4});
    CHECK(t3.canonical_key() == t.canonical_key());
}

TEST_CASE("flip of a missing diagonal throws NotADiagonal") {
    auto p = convex_hexagon();
    auto t = fan_triangulation(p, 0);
    try {
        t.flippable({1, 4});
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "NotADiagonal");
    }
}

TEST_CASE("nonconvex quad blocks the flip") {
    // Dart: diagonal {0,3} with apexes 1, 2 forms a nonconvex quad.
    SimplePolygon dart({pt(0, 0), pt(6, 0), pt(6, 6), pt(3, 2), pt(0, 6)});
    Triangulation t(dart, {{0, 3}, {1, 3}});
    REQUIRE(t.validate().ok);
    CHECK_FALSE(t.flippable({0, 3}));
    try {
        t.flip({0, 3});
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "NotFlippable");
    }
    // the dart admits no other triangulation, so this one is frozen
    CHECK_FALSE(t.flippable({1, 3}));
}

TEST_CASE("apexes are the two incident triangle tips") {
    auto p = convex_hexagon();
    auto t = fan_triangulation(p, 0);
    auto ap = t.apexes({0, 3});
    std::set<int> s(ap.begin(), ap.end());
    CHECK(s == std::set<int>{2, 4});
}

TEST_CASE("canonical key is order independent and injective") {
    auto p = convex_hexagon();
    Triangulation a(p, {{0, 2}, {0, 3}, {0, 4}});
    Triangulation b(p, {{4, 0}, {3, 0}, {2, 0}});
    Triangulation c(p, {{0, 2}, {2, 4}, {0, 4}});
    CHECK(a.canonical_key() == b.canonical_key());
    CHECK(a.canonical_key() != c.canonical_key());
}

TEST_CASE("ear clipping handles nonconvex polygons") {
    SimplePolygon comb({pt(0, 0), pt(10, 0), pt(10, 5), pt(8, 2), pt(6, 5), pt(4, 2), pt(2, 5),
                        pt(0, 5)});
    REQUIRE(comb.validate().ok);
    auto t = ear_clipping_triangulation(comb);
    CHECK(t.validate().ok);
    CHECK(t.diagonals().size() == 5);
}

TEST_CASE("fan from a blocked apex throws ApexNotVisible") {
    SimplePolygon comb({pt(0, 0), pt(10, 0), pt(10, 5), pt(8, 2), pt(6, 5), pt(4, 2), pt(2, 5),
                        pt(0, 5)});
    try {
        fan_triangulation(comb, 2);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "ApexNotVisible");
    }
}

TEST_CASE("flip sequence replay") {
    auto p = convex_hexagon();
    auto t = fan_triangulation(p, 0);
    FlipSequence seq{t, {{0, 3}, {0, 2}}};
    auto end = seq.replay(true);
    CHECK(end.validate().ok);
    CHECK(end.has_diagonal({2, 4}));
    CHECK(seq.states().size() == 3);

    FlipSequence bad{t, {{0, 3}, {0, 3}}};
    try {
        bad.replay();
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "ReplayFailure");
    }
}
