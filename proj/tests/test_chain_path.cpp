#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "flipforge/chain_path.hpp"
#include "flipforge/double_chain.hpp"
#include "flipforge/flip_search.hpp"

using namespace flipforge;

namespace {

SimplePolygon plus_polygon(int g) {
    DoubleChain dc = build_double_chain(g);
    return polygon_PDp(dc, default_apex(dc));
}

std::vector<ChainPath> all_chain_paths(int g) {
    std::vector<ChainPath> out;
    std::vector<GridPoint> cur{{1, 1}};
    auto rec = [&](auto&& self) -> void {
        out.push_back(ChainPath{cur});
        GridPoint b = cur.back();
        for (GridPoint next : {GridPoint{b.x + 1, b.y}, GridPoint{b.x, b.y + 1}}) {
            if (next.x > g || next.y > g) continue;
            cur.push_back(next);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

Diagonal removed_diagonal(const Triangulation& from, const Triangulation& to) {
    for (const auto& d : from.diagonals())
        if (!to.has_diagonal(d)) return d;
    FAIL("no removed diagonal");
    return {};
}

// legal chain-path moves: extend at b, shorten at b, flip a bend
std::vector<ChainPath> path_moves(const ChainPath& cp, int g) {
    std::vector<ChainPath> out;
    GridPoint b = cp.b();
    for (GridPoint next : {GridPoint{b.x + 1, b.y}, GridPoint{b.x, b.y + 1}}) {
        if (next.x > g || next.y > g) continue;
        ChainPath ext = cp;
        ext.points.push_back(next);
        out.push_back(ext);
    }
    if (cp.points.size() > 1) {
        ChainPath shr = cp;
        shr.points.pop_back();
        out.push_back(shr);
    }
    for (std::size_t i = 1; i + 1 < cp.points.size(); ++i) {
        const GridPoint &lo = cp.points[i - 1], &hi = cp.points[i + 1];
        if (hi.x == lo.x + 1 && hi.y == lo.y + 1) {
            ChainPath bend = cp;
            bend.points[i] = cp.points[i].x > lo.x ? GridPoint{lo.x, lo.y + 1}
                                                   : GridPoint{lo.x + 1, lo.y};
            out.push_back(bend);
        }
    }
    return out;
}

struct Traversal {
    FlipSequence seq;
    std::vector<ChainPath> paths;  // per state
};

Traversal random_traversal(std::mt19937& rng, const SimplePolygon& poly, int g, int moves) {
    ChainPath cp{{{1, 1}}};
    Traversal tr{FlipSequence{triangulation_of(cp, poly), {}}, {cp}};
    Triangulation cur = tr.seq.start;
    auto step = [&](const ChainPath& next) {
        Triangulation t = triangulation_of(next, poly);
        tr.seq.flips.push_back(removed_diagonal(cur, t));
        cur = t;
        cp = next;
        tr.paths.push_back(cp);
    };
    for (int i = 0; i < moves; ++i) {
        auto options = path_moves(cp, g);
        step(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
    }
    while (cp.points.size() > 1) {
        ChainPath shr = cp;
        shr.points.pop_back();
        step(shr);
    }
    return tr;
}

}  // namespace

TEST_CASE("plus_chain_size recognizes the polygon shape") {
    CHECK(plus_chain_size(plus_polygon(2)) == 2);
    CHECK(plus_chain_size(plus_polygon(4)) == 4);
    DoubleChain dc = build_double_chain(3);
    try {
        plus_chain_size(polygon_PD(dc));
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "WrongPolygon");
    }
}

TEST_CASE("chain path of the extreme and fan triangulations") {
    SimplePolygon poly = plus_polygon(3);
    int z = poly.index_of_label("p");
    ChainPath fan = chain_path_of(fan_triangulation(poly, z));
    CHECK(fan.points == std::vector<GridPoint>{{1, 1}});
    CHECK(fan.at_root());

    auto [tu, tl] = extreme_triangulations(poly, ChainVariant::PDp);
    CHECK(chain_path_of(tu).points ==
          std::vector<GridPoint>{{1, 1}, {1, 2}, {1, 3}, {2, 3}, {3, 3}});
    CHECK(chain_path_of(tl).points ==
          std::vector<GridPoint>{{1, 1}, {2, 1}, {3, 1}, {3, 2}, {3, 3}});
}

TEST_CASE("bijection between chain paths and triangulations") {
    for (int g = 2; g <= 5; ++g) {
        CAPTURE(g);
        SimplePolygon poly = plus_polygon(g);
        auto paths = all_chain_paths(g);
        std::set<std::string> keys;
        for (const auto& cp : paths) {
            Triangulation t = triangulation_of(cp, poly);
            CHECK(t.validate().ok);
            CHECK(chain_path_of(t) == cp);
            keys.insert(t.canonical_key());
        }
        CHECK(keys.size() == paths.size());
        if (g <= 4) {
            auto all = enumerate_all_triangulations(poly, 100000);
            CHECK(all.size() == paths.size());
            for (const auto& t : all) {
                ChainPath cp = chain_path_of(t);
                CHECK(triangulation_of(cp, poly).canonical_key() == t.canonical_key());
            }
        }
    }
}

TEST_CASE("triangulation_of rejects bad paths") {
    SimplePolygon poly = plus_polygon(3);
    try {
        triangulation_of(ChainPath{{{1, 1}, {1, 2}, {1, 3}, {1, 4}}}, poly);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "PathOutOfRange");
    }
    CHECK_THROWS_AS(triangulation_of(ChainPath{{{2, 1}}}, poly), DomainError);
    CHECK_THROWS_AS(triangulation_of(ChainPath{{{1, 1}, {2, 2}}}, poly), DomainError);
}

TEST_CASE("flip classification matches the chain-path delta") {
    SimplePolygon poly = plus_polygon(3);
    int z = poly.index_of_label("p");
    int u1 = poly.index_of_label("u1"), u2 = poly.index_of_label("u2");
    int l1 = poly.index_of_label("l1"), l2 = poly.index_of_label("l2");

    Triangulation fan = fan_triangulation(poly, z);
    CHECK(classify_flip(fan, make_diagonal(z, u1)) == FlipClass::ExtendEast);
    CHECK(classify_flip(fan, make_diagonal(z, l1)) == FlipClass::ExtendNorth);

    Triangulation one = triangulation_of(ChainPath{{{1, 1}, {2, 1}}}, poly);
    CHECK(classify_flip(one, make_diagonal(u2, l1)) == FlipClass::Shorten);

    Triangulation corner = triangulation_of(ChainPath{{{1, 1}, {2, 1}, {2, 2}}}, poly);
    CHECK(classify_flip(corner, make_diagonal(u2, l1)) == FlipClass::BendFlip);
    Triangulation other = corner.flip(make_diagonal(u2, l1));
    CHECK(chain_path_of(other).points == std::vector<GridPoint>{{1, 1}, {1, 2}, {2, 2}});
    CHECK(classify_flip(other, make_diagonal(u1, l2)) == FlipClass::BendFlip);
}

TEST_CASE("every flippable diagonal classifies as extend, shorten, or bend") {
    for (int g = 2; g <= 4; ++g) {
        CAPTURE(g);
        SimplePolygon poly = plus_polygon(g);
        int checked = 0;
        for (const auto& t : enumerate_all_triangulations(poly, 100000))
            for (const auto& d : t.diagonals())
                if (t.flippable(d)) {
                    CHECK(classify_flip(t, d) != FlipClass::Other);
                    ++checked;
                }
        CHECK(checked > 0);
    }
}

TEST_CASE("trace of simple traversals") {
    SimplePolygon poly = plus_polygon(3);
    int z = poly.index_of_label("p");
    int u1 = poly.index_of_label("u1"), u2 = poly.index_of_label("u2");
    int l1 = poly.index_of_label("l1"), l2 = poly.index_of_label("l2");
    Triangulation fan = fan_triangulation(poly, z);

    // out and back along one edge
    FlipSequence out_back{fan, {make_diagonal(z, u1), make_diagonal(u2, l1)}};
    Trace r = trace_of(out_back);
    CHECK(r.boxes.empty());
    CHECK(r.edges == std::set<Segment>{make_segment({1, 1}, {2, 1})});
    CHECK(cost(r) == 2);
    CHECK(validate_trace(r).ok);

    // 1x1 loop with one bend flip collapses to a single box
    FlipSequence loop{fan,
                      {make_diagonal(z, l1), make_diagonal(z, u1), make_diagonal(u1, l2),
                       make_diagonal(u2, l2), make_diagonal(u2, l1)}};
    Trace rb = trace_of(loop);
    CHECK(rb.edges.empty());
    CHECK(rb.boxes == std::set<GridPoint>{{1, 1}});
    CHECK(cost(rb) == 5);
    CHECK(validate_trace(rb).ok);

    // not ending at the root
    FlipSequence dangling{fan, {make_diagonal(z, u1)}};
    try {
        trace_of(dangling);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "NotATraversal");
    }
}

TEST_CASE("trace cost matches the paper's accounting") {
    Trace tree;
    tree.edges = {make_segment({1, 1}, {2, 1}), make_segment({2, 1}, {2, 2}),
                  make_segment({2, 1}, {3, 1})};
    CHECK(cost(tree) == 6);
    CHECK(validate_trace(tree).ok);

    Trace rect;  // 3x2 rectangle of boxes
    for (long long x = 1; x <= 3; ++x)
        for (long long y = 1; y <= 2; ++y) rect.boxes.insert({x, y});
    CHECK(cost(rect) == 3 * 2 + 2 * (3 + 2));
    CHECK(validate_trace(rect).ok);
}

TEST_CASE("boundary-cost golden sequence 16 -> 17 -> 18 -> 17") {
    Trace r;
    r.edges = {make_segment({1, 1}, {2, 1}), make_segment({2, 1}, {3, 1}),
               make_segment({1, 1}, {1, 2}), make_segment({1, 2}, {1, 3}),
               make_segment({1, 3}, {2, 3}), make_segment({3, 1}, {4, 1}),
               make_segment({4, 1}, {4, 2}), make_segment({2, 3}, {2, 4})};
    CHECK(cost(r) == 16);
    CHECK(validate_trace(r).ok);
    add_box(r, {1, 1});
    CHECK(cost(r) == 17);
    CHECK(validate_trace(r).ok);
    add_box(r, {2, 1});
    CHECK(cost(r) == 18);
    CHECK(validate_trace(r).ok);
    add_box(r, {1, 2});
    CHECK(cost(r) == 17);
    CHECK(validate_trace(r).ok);
}

TEST_CASE("trace validation catches broken traces") {
    Trace no_root;
    no_root.edges = {make_segment({2, 2}, {3, 2})};
    CHECK_FALSE(validate_trace(no_root).ok);

    Trace split;
    split.edges = {make_segment({1, 1}, {2, 1}), make_segment({3, 3}, {4, 3})};
    CHECK_FALSE(validate_trace(split).ok);

    Trace coincide;
    coincide.boxes = {{1, 1}};
    coincide.edges = {make_segment({1, 1}, {2, 1})};
    CHECK_FALSE(validate_trace(coincide).ok);

    // connected but with a non-monotone point: a hook going back west
    Trace hook;
    hook.edges = {make_segment({1, 1}, {1, 2}), make_segment({1, 2}, {2, 2}),
                  make_segment({2, 1}, {2, 2})};
    CHECK_FALSE(validate_trace(hook).ok);

    CHECK(validate_trace(Trace{}).ok);
}

TEST_CASE("eliminate_boxes removes a dangling-corner box") {
    Trace r;
    r.boxes = {{1, 1}};
    SinkSet s{{{2, 2}}};
    Trace out = eliminate_boxes(r, s);
    CHECK(out.boxes.empty());
    CHECK(validate_trace(out).ok);
    CHECK(cost(out) <= cost(r));
    CHECK(trace_covers(out, {2, 2}));

    CHECK(eliminate_boxes(out, s) == out);

    try {
        eliminate_boxes(r, SinkSet{{{1, 2}}});
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "OddSinkCoordinate");
    }
    CHECK_THROWS_AS(eliminate_boxes(Trace{}, SinkSet{{{4, 4}}}), DomainError);
}

TEST_CASE("shortest_path_tree extracts an arborescence") {
    Trace r;
    r.edges = {make_segment({1, 1}, {2, 1}), make_segment({2, 1}, {2, 2})};
    SinkSet s{{{2, 2}}};
    Arborescence a = shortest_path_tree(r, s);
    SinkSet shifted{{{1, 1}}};
    CHECK(validate_arborescence(a, shifted).ok);
    CHECK(length(a) == 2);
    CHECK(2 * length(a) <= cost(r));

    // a dead branch is not picked up
    r.edges.insert(make_segment({1, 1}, {1, 2}));
    Arborescence b = shortest_path_tree(r, s);
    CHECK(b.segments == a.segments);

    try {
        shortest_path_tree(r, SinkSet{{{4, 4}}});
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "SinkNotCovered");
    }
}

TEST_CASE("visits detects the sink chain triangle") {
    int g = 4, beta = 2;
    SimplePolygon poly = plus_polygon(g);
    Triangulation fan = fan_triangulation(poly, poly.index_of_label("p"));
    FlipSequence empty{fan, {}};
    CHECK_FALSE(visits(empty, {1, 1}, beta));

    // walk b to (2,2), step north, and return
    std::vector<ChainPath> walk;
    std::vector<GridPoint> pts{{1, 1}};
    walk.push_back(ChainPath{pts});
    for (GridPoint p : {GridPoint{2, 1}, GridPoint{2, 2}, GridPoint{2, 3}}) {
        pts.push_back(p);
        walk.push_back(ChainPath{pts});
    }
    while (pts.size() > 1) {
        pts.pop_back();
        walk.push_back(ChainPath{pts});
    }
    FlipSequence seq{fan, {}};
    Triangulation cur = fan;
    for (std::size_t i = 1; i < walk.size(); ++i) {
        Triangulation t = triangulation_of(walk[i], poly);
        seq.flips.push_back(removed_diagonal(cur, t));
        cur = t;
    }
    CHECK(visits(seq, {1, 1}, beta));
    CHECK_FALSE(visits(seq, {1, 2}, beta));
    Trace r = trace_of(seq);
    CHECK(validate_trace(r).ok);
    CHECK(trace_covers(r, {2, 2}));
}

TEST_CASE("proposition 1 over randomized traversals") {
    std::mt19937 rng(20240824);
    int g = 5;
    SimplePolygon poly = plus_polygon(g);
    int with_boxes = 0, pipeline_runs = 0;
    for (int trial = 0; trial < 520; ++trial) {
        int moves = 4 + trial % 17;
        Traversal tr = random_traversal(rng, poly, g, moves);
        Trace r = trace_of(tr.seq);
        CHECK(validate_trace(r).ok);
        CHECK(cost(r) <= static_cast<long long>(tr.seq.size()));
        if (!r.boxes.empty()) ++with_boxes;

        // full trace pipeline whenever the trace covers an even grid point
        GridPoint sink{2, 2};
        if (trace_covers(r, sink)) {
            ++pipeline_runs;
            SinkSet s{{sink}};
            Trace nb = eliminate_boxes(r, s);
            CHECK(nb.boxes.empty());
            CHECK(validate_trace(nb).ok);
            CHECK(cost(nb) <= cost(r));
            CHECK(trace_covers(nb, sink));
            Arborescence a = shortest_path_tree(nb, s);
            SinkSet shifted{{{sink.x - 1, sink.y - 1}}};
            CHECK(validate_arborescence(a, shifted).ok);
            CHECK(2 * length(a) <= cost(nb));
        }
    }
    CHECK(with_boxes > 20);
    CHECK(pipeline_runs > 50);
}
