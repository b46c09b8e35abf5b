#include <doctest.h>

#include "flipforge/flip_search.hpp"
#include "flipforge/reduction.hpp"

using namespace flipforge;

namespace {

void require_ok(const ValidationReport& rep) {
    INFO((rep.reasons.empty() ? "" : rep.reasons.front()));
    CHECK(rep.ok);
}

}  // namespace

TEST_CASE("default parameters follow the sink set") {
    SinkSet one{{{1, 1}}};
    CHECK(grid_size(one) == 2);
    auto p1 = default_params(one);
    CHECK(p1.beta == 2);
    CHECK(p1.d == 2);

    SinkSet two{{{3, 2}, {1, 1}}};
    CHECK(grid_size(two) == 3);
    auto p2 = default_params(two);
    CHECK(p2.beta == 4);
    CHECK(p2.d == 6);
}

TEST_CASE("smallest instance: shape, labels, budget") {
    SinkSet s{{{1, 1}}};
    auto inst = build_instance(s, 2);
    CHECK(inst.n == 2);
    CHECK(inst.params.beta == 2);
    CHECK(inst.params.d == 2);
    // 2*beta*n + 1 + N*(2d-2) vertices
    CHECK(inst.polygon.size() == 11);
    // l = 2*beta*k + (4d-2)*N
    CHECK(inst.budget_l == 14);
    CHECK(inst.polygon.label(inst.z) == "p");
    REQUIRE(inst.gadgets.size() == 1);
    const auto& gad = inst.gadgets[0];
    CHECK(inst.polygon.label(gad.l_s) == "l2");
    CHECK(inst.polygon.label(gad.l_s_prime) == "l3");
    CHECK(inst.polygon.label(gad.u_s) == "u2");
    CHECK(static_cast<int>(gad.sub_to_big.size()) == 2 * inst.params.d + 1);
    require_ok(verify_instance(inst));
}

TEST_CASE("two-sink instance verifies") {
    SinkSet s{{{1, 1}, {2, 2}}};
    auto inst = build_instance(s, 3);
    CHECK(inst.n == 3);  // a gadget needs the edge right of l_{beta*y}
    CHECK(inst.params.beta == 4);
    CHECK(inst.params.d == 6);
    CHECK(inst.polygon.size() == 2 * 12 + 1 + 2 * 10);
    CHECK(inst.budget_l == 2 * 4 * 3 + 22 * 2);
    // gadgets sorted by sink y
    CHECK(inst.gadgets[0].sink == GridPoint{1, 1});
    CHECK(inst.gadgets[1].sink == GridPoint{2, 2});
    require_ok(verify_instance(inst));
    CHECK(coordinate_bits(inst) < 512);
}

TEST_CASE("three-sink instance verifies") {
    SinkSet s{{{1, 1}, {3, 2}, {2, 3}}};
    auto inst = build_instance(s, 5);
    CHECK(inst.n == 4);
    CHECK(inst.params.beta == 6);
    CHECK(inst.params.d == 12);
    CHECK(inst.polygon.size() == 2 * 24 + 1 + 3 * 22);
    require_ok(verify_instance(inst));
    CHECK(coordinate_bits(inst) < 1024);
}

TEST_CASE("override parameters") {
    SinkSet s{{{1, 1}}};
    CHECK_THROWS_WITH_AS(build_instance(s, 2, {4, 3, false}), doctest::Contains("override"),
                         DomainError);
    auto inst = build_instance(s, 2, {4, 3, true});
    CHECK(inst.polygon.size() == 2 * 8 + 1 + 4);
    CHECK(inst.budget_l == 2 * 4 * 2 + 10);
    require_ok(verify_instance(inst));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(build_instance(SinkSet{{{1, 1}}}, 0), DomainError);
    CHECK_THROWS_AS(build_instance(SinkSet{}, 1), DomainError);
    CHECK_THROWS_AS(build_instance(SinkSet{{{0, 1}}}, 1), DomainError);
    CHECK_THROWS_AS(build_instance(SinkSet{{{1, 0}}}, 1), DomainError);
    try {
        build_instance(SinkSet{{{1, 1}, {2, 1}}}, 2);
        FAIL("expected DuplicateYCoordinate");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "DuplicateYCoordinate");
    }
    try {
        embed_gadget_coordinates(build_double_chain(4), {1, 3}, {2, 2, true});
        FAIL("expected GadgetPlacementFailed");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "GadgetPlacementFailed");
    }
}

TEST_CASE("verify_instance catches tampering") {
    SinkSet s{{{1, 1}}};
    auto good = build_instance(s, 2);

    auto inst = good;
    inst.budget_l += 1;
    CHECK(!verify_instance(inst).ok);

    inst = good;
    std::swap(inst.t1_diagonals, inst.t2_diagonals);
    CHECK(!verify_instance(inst).ok);

    inst = good;
    inst.t1_diagonals.pop_back();
    CHECK(!verify_instance(inst).ok);

    inst = good;
    inst.params.beta = 3;
    CHECK(!verify_instance(inst).ok);

    // point the gadget at the wrong upper vertex: hourglass checks must fire
    inst = good;
    inst.gadgets[0].u_s = inst.polygon.index_of_label("u1");
    inst.gadgets[0].sub_to_big[inst.params.d] = inst.gadgets[0].u_s;
    auto rep = verify_instance(inst);
    CHECK(!rep.ok);
}

TEST_CASE("gadget geometry facts") {
    SinkSet s{{{1, 1}, {2, 2}}};
    auto inst = build_instance(s, 2);
    for (const auto& gad : inst.gadgets) {
        require_ok(validate_double_chain(gad.chain));
        // mouth lands exactly on the replaced lower edge
        int d = inst.params.d;
        CHECK(gad.chain.upper[d - 1] == inst.polygon.at(gad.l_s));
        CHECK(gad.chain.lower[d - 1] == inst.polygon.at(gad.l_s_prime));
        CHECK(gad.sub_polygon.validate().ok);
        // sub-polygon vertices match the big polygon through sub_to_big
        for (int i = 0; i < gad.sub_polygon.size(); ++i)
            CHECK(gad.sub_polygon.at(i) == inst.polygon.at(gad.sub_to_big[i]));
        // the gadget's explicit schedule is usable on its sub-polygon
        auto seq = explicit_pdp_sequence(gad.sub_polygon);
        CHECK(static_cast<int>(seq.size()) == 4 * d - 4);
    }
}

TEST_CASE("flip distance obeys the budget on tiny instances") {
    // Only the easy direction (optimum <= k implies distance <= l) is
    // checkable by search; the converse needs (d-1)^2 > l, far beyond
    // desk-scale BFS. At d = 2 the gadget shortcut costs (d-1)^2 = 1
    // instead of 4d-4, so T1 and T2 are a single flip apart.
    SinkSet s{{{1, 1}}};
    auto inst = build_instance(s, 2);
    SearchBudget budget;
    budget.max_states = 2'000'000;
    auto t1 = inst.T1(), t2 = inst.T2();
    auto res = flip_distance(t1, t2, budget);
    REQUIRE(res.distance.has_value());
    CHECK(*res.distance == 1);
    CHECK(*res.distance <= inst.budget_l);

    auto inst3 = build_instance(s, 1, {2, 3, true});
    auto u1 = inst3.T1(), u2 = inst3.T2();
    auto res3 = flip_distance(u1, u2, budget);
    REQUIRE(res3.distance.has_value());
    CHECK(*res3.distance == std::min((inst3.params.d - 1) * (inst3.params.d - 1),
                                     4 * inst3.params.d - 4));
    CHECK(*res3.distance <= inst3.budget_l);
}
