#include <doctest.h>

#include "flipforge/converters.hpp"

using namespace flipforge;

namespace {

Arborescence l_path() {
    return {{make_segment({0, 0}, {1, 0}), make_segment({1, 0}, {1, 1})}};
}

Arborescence staircase() {
    return {{make_segment({0, 0}, {1, 0}), make_segment({1, 0}, {1, 1}),
             make_segment({1, 1}, {2, 1}), make_segment({2, 1}, {2, 2})}};
}

}  // namespace

TEST_CASE("rsa_to_flips matches the worked example") {
    SinkSet s{{{1, 1}}};
    auto inst = build_instance(s, 2, {2, 2, true});
    auto seq = rsa_to_flips(l_path(), inst);
    CHECK(seq.size() == 14);  // 2*2*2 + (4*2-2)*1
    CHECK(seq.size() == static_cast<std::size_t>(inst.budget_l));
    auto end = seq.replay(true);
    CHECK(end.canonical_key() == inst.T2().canonical_key());
    CHECK(visits(seq, {1, 1}, 2));
}

TEST_CASE("rsa_to_flips on a theorem-compatible gadget size") {
    SinkSet s{{{1, 1}}};
    auto inst = build_instance(s, 2, {2, 7, true});
    {
        auto rep = verify_instance(inst);
        INFO((rep.reasons.empty() ? "" : rep.reasons.front()));
        CHECK(rep.ok);
    }
    auto seq = rsa_to_flips(l_path(), inst);
    CHECK(seq.size() == 34);  // 2*2*2 + 26
    CHECK(seq.replay().canonical_key() == inst.T2().canonical_key());
    CHECK(visits(seq, {1, 1}, 2));
    CHECK_FALSE(visits(seq, {1, 2}, 2));
}

TEST_CASE("rsa_to_flips rejects a foreign arborescence") {
    SinkSet s{{{1, 1}}};
    auto inst = build_instance(s, 2, {2, 7, true});
    CHECK_THROWS_AS(rsa_to_flips(staircase(), inst), DomainError);
}

TEST_CASE("decompose splits the constructed sequence exactly") {
    SinkSet s{{{1, 1}}};
    auto inst = build_instance(s, 2, {2, 7, true});
    auto seq = rsa_to_flips(l_path(), inst);
    auto dec = decompose_flip_sequence(seq, inst);

    int d = inst.params.d;
    CHECK(dec.sigma1.size() == seq.size() - (4 * d - 4));  // = 2*beta*k + 2N
    REQUIRE(dec.per_sink.size() == 1);
    CHECK(dec.per_sink[0].size() == static_cast<std::size_t>(4 * d - 4));
    CHECK(dec.sigma1.size() + dec.per_sink[0].size() <= seq.size());
    CHECK(dec.diag.projected_plus + dec.diag.projected_sink + dec.diag.silent ==
          static_cast<long long>(seq.size()));
    CHECK(dec.diag.silent == 0);

    // sigma1 is a flip traversal: it traces, and the trace covers the sink
    auto r = trace_of(dec.sigma1);
    CHECK(validate_trace(r).ok);
    CHECK(trace_covers(r, {2, 2}));

    // the gadget sequence runs between the extreme triangulations
    auto [tu, tl] = extreme_triangulations(inst.gadgets[0].sub_polygon, ChainVariant::PDp);
    CHECK(dec.per_sink[0].start.canonical_key() == tu.canonical_key());
    CHECK(dec.per_sink[0].replay().canonical_key() == tl.canonical_key());
}

TEST_CASE("decompose rejects sequences at or over (d-1)^2") {
    SinkSet s{{{1, 1}}};
    auto inst = build_instance(s, 2, {2, 2, true});
    auto seq = rsa_to_flips(l_path(), inst);  // 14 >= (2-1)^2
    try {
        decompose_flip_sequence(seq, inst);
        FAIL("expected BudgetTooLarge");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "BudgetTooLarge");
    }
}

TEST_CASE("decompose rejects a sequence that does not start at T1") {
    SinkSet s{{{1, 1}}};
    auto inst = build_instance(s, 2, {2, 7, true});
    FlipSequence wrong{inst.T2(), {}};
    CHECK_THROWS_AS(decompose_flip_sequence(wrong, inst), DomainError);
}

TEST_CASE("roundtrip: one sink") {
    SinkSet s{{{1, 1}}};
    auto inst = build_instance(s, 2, {2, 7, true});
    auto seq = rsa_to_flips(l_path(), inst);
    auto back = flips_to_rsa(seq, inst);
    CHECK(validate_arborescence(back, s).ok);
    CHECK(length(back) <= length(l_path()));
}

TEST_CASE("roundtrip: two sinks with a branch-free staircase") {
    SinkSet s{{{1, 1}, {2, 2}}};
    auto inst = build_instance(s, 4, {2, 12, true});
    auto a = staircase();
    auto seq = rsa_to_flips(a, inst);
    CHECK(seq.size() == 2 * 2 * length(a) + (4 * 12 - 2) * 2);
    CHECK(visits(seq, {1, 1}, 2));
    CHECK(visits(seq, {2, 2}, 2));
    auto dec = decompose_flip_sequence(seq, inst);
    CHECK(dec.sigma1.size() + dec.per_sink[0].size() + dec.per_sink[1].size() <=
          seq.size());
    auto back = flips_to_rsa(seq, inst);
    CHECK(validate_arborescence(back, s).ok);
    CHECK(length(back) <= length(a));
}

TEST_CASE("roundtrip: branching arborescence") {
    SinkSet s{{{2, 1}, {1, 2}}};
    auto inst = build_instance(s, 4, {2, 12, true});
    Arborescence a{{make_segment({0, 0}, {1, 0}), make_segment({1, 0}, {2, 0}),
                    make_segment({2, 0}, {2, 1}), make_segment({1, 0}, {1, 2})}};
    REQUIRE(validate_arborescence(a, s).ok);
    auto seq = rsa_to_flips(a, inst);
    CHECK(seq.size() == 2 * 2 * length(a) + 46 * 2);
    auto back = flips_to_rsa(seq, inst);
    CHECK(validate_arborescence(back, s).ok);
    CHECK(length(back) <= length(a));
}

TEST_CASE("pipeline handles a sequence with a bend flip") {
    SinkSet s{{{1, 1}}};
    auto inst = build_instance(s, 2, {2, 7, true});
    const auto& poly = inst.polygon;
    auto L = [&](int i) { return poly.index_of_label("l" + std::to_string(i)); };
    auto U = [&](int i) { return poly.index_of_label("u" + std::to_string(i)); };
    int z = inst.z;

    // E, N to the sink, open the gadget, bend the path, shorten home
    std::vector<Diagonal> flips{make_diagonal(z, L(1)), make_diagonal(z, U(1)),
                                make_diagonal(z, L(2))};
    const auto& gad = inst.gadgets[0];
    for (const auto& f : explicit_pdp_sequence(gad.sub_polygon).flips)
        flips.push_back(make_diagonal(gad.sub_to_big[f.first], gad.sub_to_big[f.second]));
    flips.push_back(make_diagonal(U(2), L(3)));  // back out of the gadget
    flips.push_back(make_diagonal(U(1), L(2)));  // bend (1,2) -> (2,1), box at (1,1)
    flips.push_back(make_diagonal(U(2), L(2)));
    flips.push_back(make_diagonal(U(2), L(1)));

    FlipSequence seq{inst.T1(), flips};
    CHECK(seq.replay(true).canonical_key() == inst.T2().canonical_key());
    REQUIRE(seq.size() < 36);

    auto dec = decompose_flip_sequence(seq, inst);
    auto r = trace_of(dec.sigma1);
    CHECK(!r.boxes.empty());

    auto back = flips_to_rsa(seq, inst);
    CHECK(validate_arborescence(back, s).ok);
    CHECK(length(back) == 2);
}
