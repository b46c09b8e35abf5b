#include "flipforge/chain_path.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace flipforge {

namespace {

std::string lbl(const char* chain, long long i) { return chain + std::to_string(i); }

int need_label(const SimplePolygon& p, const std::string& l) {
    int i = p.index_of_label(l);
    if (i < 0) throw DomainError("WrongPolygon", "polygon lacks labeled vertex " + l);
    return i;
}

constexpr GridPoint kRoot{1, 1};

// --- chain paths ---------------------------------------------------------

void check_path(const ChainPath& cp, int g) {
    if (cp.points.empty() || cp.points.front() != kRoot)
        throw DomainError("PathOutOfRange", "chain path must start at (1,1)");
    for (std::size_t i = 0; i + 1 < cp.points.size(); ++i) {
        GridPoint a = cp.points[i], b = cp.points[i + 1];
        bool east = b.x == a.x + 1 && b.y == a.y;
        bool north = b.x == a.x && b.y == a.y + 1;
        if (!east && !north)
            throw DomainError("PathOutOfRange", "chain path steps must be unit north or east");
    }
    for (const auto& c : cp.points)
        if (c.x < 1 || c.y < 1 || c.x > g || c.y > g)
            throw DomainError("PathOutOfRange", "chain path leaves the grid");
}

FlipClass classify_paths(const std::vector<GridPoint>& before, const std::vector<GridPoint>& after,
                         Segment* edge_out, GridPoint* box_out) {
    if (after.size() == before.size() + 1 &&
        std::equal(before.begin(), before.end(), after.begin())) {
        if (edge_out) *edge_out = make_segment(before.back(), after.back());
        return after.back().x > before.back().x ? FlipClass::ExtendEast : FlipClass::ExtendNorth;
    }
    if (before.size() == after.size() + 1 && std::equal(after.begin(), after.end(), before.begin()))
        return FlipClass::Shorten;
    if (before.size() == after.size()) {
        int diffs = 0;
        std::size_t at = 0;
        for (std::size_t i = 0; i < before.size(); ++i)
            if (before[i] != after[i]) {
                ++diffs;
                at = i;
            }
        if (diffs == 1) {
            if (box_out)
                *box_out = {std::min(before[at].x, after[at].x),
                            std::min(before[at].y, after[at].y)};
            return FlipClass::BendFlip;
        }
    }
    return FlipClass::Other;
}

// --- trace helpers -------------------------------------------------------

std::array<Segment, 4> box_sides(const GridPoint& b) {
    return {make_segment(b, {b.x + 1, b.y}),
            make_segment({b.x, b.y + 1}, {b.x + 1, b.y + 1}),
            make_segment(b, {b.x, b.y + 1}),
            make_segment({b.x + 1, b.y}, {b.x + 1, b.y + 1})};
}

std::set<GridPoint> trace_points(const Trace& r) {
    std::set<GridPoint> pts;
    for (const auto& e : r.edges) {
        pts.insert(e.a);
        pts.insert(e.b);
    }
    for (const auto& b : r.boxes)
        for (const auto& s : box_sides(b)) {
            pts.insert(s.a);
            pts.insert(s.b);
        }
    return pts;
}

// Unit segment contained in the trace, as an edge or on a box boundary.
bool segment_in_trace(const Trace& r, const Segment& s) {
    if (r.edges.count(s)) return true;
    if (s.horizontal())
        return r.boxes.count({s.a.x, s.a.y}) || r.boxes.count({s.a.x, s.a.y - 1});
    return r.boxes.count({s.a.x, s.a.y}) || r.boxes.count({s.a.x - 1, s.a.y});
}

Trace transpose(const Trace& r) {
    Trace t;
    for (const auto& e : r.edges)
        t.edges.insert(make_segment({e.a.y, e.a.x}, {e.b.y, e.b.x}));
    for (const auto& b : r.boxes) t.boxes.insert({b.y, b.x});
    return t;
}

bool edge_at(const Trace& r, const GridPoint& c) {
    for (const auto& q : {GridPoint{c.x + 1, c.y}, GridPoint{c.x, c.y + 1},
                          GridPoint{c.x - 1, c.y}, GridPoint{c.x, c.y - 1}})
        if (r.edges.count(make_segment(c, q))) return true;
    return false;
}

int other_boxes_at(const Trace& r, const GridPoint& c, const std::set<GridPoint>& exclude) {
    int count = 0;
    for (const auto& b : {GridPoint{c.x, c.y}, GridPoint{c.x - 1, c.y}, GridPoint{c.x, c.y - 1},
                          GridPoint{c.x - 1, c.y - 1}})
        if (r.boxes.count(b) && !exclude.count(b)) ++count;
    return count;
}

}  // namespace

// --- bijection -----------------------------------------------------------

int plus_chain_size(const SimplePolygon& p) {
    int size = p.size();
    if (size < 5 || size % 2 == 0)
        throw DomainError("WrongPolygon", "expected 2g+1 vertices with g >= 2");
    int g = (size - 1) / 2;
    if (p.index_of_label("p") != g)
        throw DomainError("WrongPolygon", "apex label p missing or misplaced");
    for (int i = 1; i <= g; ++i) {
        if (p.index_of_label(lbl("l", i)) != i - 1 ||
            p.index_of_label(lbl("u", i)) != 2 * g + 1 - i)
            throw DomainError("WrongPolygon", "chain labels do not match <l_1..l_g, p, u_g..u_1>");
    }
    return g;
}

ChainPath chain_path_of(const Triangulation& t) {
    const SimplePolygon& p = t.polygon();
    int g = plus_chain_size(p);
    std::vector<GridPoint> cs{kRoot};
    for (const auto& d : t.diagonals()) {
        const std::string &a = p.label(d.first), &b = p.label(d.second);
        if (a.empty() || b.empty()) continue;
        if (a[0] == 'l' && b[0] == 'u')
            cs.push_back({std::stoll(b.substr(1)), std::stoll(a.substr(1))});
        else if (a[0] == 'u' && b[0] == 'l')
            cs.push_back({std::stoll(a.substr(1)), std::stoll(b.substr(1))});
    }
    std::sort(cs.begin(), cs.end(), [](const GridPoint& a, const GridPoint& b) {
        return std::pair(a.x + a.y, a.x) < std::pair(b.x + b.y, b.x);
    });
    ChainPath cp{std::move(cs)};
    try {
        check_path(cp, g);
    } catch (const DomainError&) {
        throw DomainError("WrongPolygon", "chain edges do not form a staircase path");
    }
    return cp;
}

Triangulation triangulation_of(const ChainPath& cp, const SimplePolygon& p) {
    int g = plus_chain_size(p);
    check_path(cp, g);
    int z = need_label(p, "p");
    std::vector<Diagonal> diags;
    for (std::size_t i = 1; i < cp.points.size(); ++i)
        diags.push_back(make_diagonal(need_label(p, lbl("u", cp.points[i].x)),
                                      need_label(p, lbl("l", cp.points[i].y))));
    GridPoint b = cp.b();
    for (long long t = b.x; t <= g - 1; ++t)
        diags.push_back(make_diagonal(z, need_label(p, lbl("u", t))));
    for (long long t = b.y; t <= g - 1; ++t)
        diags.push_back(make_diagonal(z, need_label(p, lbl("l", t))));
    std::sort(diags.begin(), diags.end());
    return Triangulation(p, std::move(diags));
}

FlipClass classify_flip(const Triangulation& t, const Diagonal& d) {
    ChainPath before = chain_path_of(t);
    ChainPath after = chain_path_of(t.flip(d));
    return classify_paths(before.points, after.points, nullptr, nullptr);
}

// --- traces --------------------------------------------------------------

ValidationReport validate_trace(const Trace& r) {
    ValidationReport rep;
    if (r.edges.empty() && r.boxes.empty()) return rep;
    for (const auto& e : r.edges) {
        if (e.length() != 1) rep.fail("edge is not a unit segment");
        if (e.a.x < 1 || e.a.y < 1) rep.fail("edge leaves the positive grid");
    }
    for (const auto& b : r.boxes) {
        if (b.x < 1 || b.y < 1) rep.fail("box leaves the positive grid");
        for (const auto& s : box_sides(b))
            if (r.edges.count(s)) rep.fail("edge coincides with a box side");
    }
    if (!rep.ok) return rep;

    std::set<GridPoint> pts = trace_points(r);
    if (!pts.count(kRoot)) {
        rep.fail("trace does not contain the root");
        return rep;
    }
    // connectivity: walk unit segments of the trace in all four directions
    std::set<GridPoint> seen{kRoot};
    std::vector<GridPoint> frontier{kRoot};
    while (!frontier.empty()) {
        GridPoint p = frontier.back();
        frontier.pop_back();
        for (const auto& q : {GridPoint{p.x + 1, p.y}, GridPoint{p.x, p.y + 1},
                              GridPoint{p.x - 1, p.y}, GridPoint{p.x, p.y - 1}}) {
            if (q.x < 1 || q.y < 1 || seen.count(q)) continue;
            if (!segment_in_trace(r, make_segment(p, q))) continue;
            seen.insert(q);
            frontier.push_back(q);
        }
    }
    for (const auto& p : pts)
        if (!seen.count(p)) {
            rep.fail("trace is disconnected");
            return rep;
        }
    // monotone reachability: north/east steps plus diagonals through boxes
    std::set<GridPoint> mono{kRoot};
    frontier = {kRoot};
    while (!frontier.empty()) {
        GridPoint p = frontier.back();
        frontier.pop_back();
        for (const auto& q : {GridPoint{p.x + 1, p.y}, GridPoint{p.x, p.y + 1}}) {
            if (mono.count(q) || !segment_in_trace(r, make_segment(p, q))) continue;
            mono.insert(q);
            frontier.push_back(q);
        }
        GridPoint diag{p.x + 1, p.y + 1};
        if (r.boxes.count(p) && !mono.count(diag)) {
            mono.insert(diag);
            frontier.push_back(diag);
        }
    }
    for (const auto& p : pts)
        if (!mono.count(p)) rep.fail("no monotone path to the root from a trace point");
    return rep;
}

void add_box(Trace& r, const GridPoint& lower_left) {
    r.boxes.insert(lower_left);
    for (const auto& s : box_sides(lower_left)) r.edges.erase(s);
}

bool trace_covers(const Trace& r, const GridPoint& q) { return trace_points(r).count(q) > 0; }

Trace trace_of(const FlipSequence& seq) {
    std::vector<Triangulation> states = seq.states();
    std::vector<std::vector<GridPoint>> paths;
    paths.reserve(states.size());
    for (const auto& t : states) paths.push_back(chain_path_of(t).points);
    if (paths.front().size() != 1 || paths.back().size() != 1)
        throw DomainError("NotATraversal", "sequence must start and end at the root chain path");
    Trace r;
    for (std::size_t i = 0; i + 1 < paths.size(); ++i) {
        Segment edge = make_segment(kRoot, {2, 1});
        GridPoint box;
        switch (classify_paths(paths[i], paths[i + 1], &edge, &box)) {
            case FlipClass::ExtendNorth:
            case FlipClass::ExtendEast:
                r.edges.insert(edge);
                break;
            case FlipClass::Shorten:
                break;
            case FlipClass::BendFlip:
                r.boxes.insert(box);
                break;
            case FlipClass::Other:
                throw DomainError("InvalidInput", "flip does not act on the chain path");
        }
    }
    for (const auto& b : r.boxes)
        for (const auto& s : box_sides(b)) r.edges.erase(s);
    return r;
}

long long cost(const Trace& r) {
    long long total = 2 * static_cast<long long>(r.edges.size());
    for (const auto& b : r.boxes) {
        int shared = 0;
        for (const auto& nb : {GridPoint{b.x + 1, b.y}, GridPoint{b.x - 1, b.y},
                               GridPoint{b.x, b.y + 1}, GridPoint{b.x, b.y - 1}})
            if (r.boxes.count(nb)) ++shared;
        total += 1 + (4 - shared);
    }
    return total;
}

// --- box elimination -----------------------------------------------------

namespace {

bool corner_free(const Trace& r, const GridPoint& c, const std::set<GridPoint>& own_boxes,
                 const std::set<GridPoint>& keep) {
    return !edge_at(r, c) && other_boxes_at(r, c, own_boxes) == 0 && !keep.count(c);
}

bool acceptable(const Trace& cand, const Trace& cur, const SinkSet& scaled) {
    if (cand.boxes.size() >= cur.boxes.size()) return false;
    if (cost(cand) > cost(cur)) return false;
    if (!validate_trace(cand).ok) return false;
    for (const auto& s : scaled.sinks)
        if (!trace_covers(cand, s)) return false;
    return true;
}

// keep a removed box's side as an edge unless it still bounds another box
void keep_side(Trace& r, const Segment& s) {
    if (!segment_in_trace(r, s)) r.edges.insert(s);
}

void cleanup_dangling(Trace& r, const SinkSet& scaled, const std::set<GridPoint>& keep) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = r.edges.begin(); it != r.edges.end(); ++it) {
            Segment e = *it;
            bool dangling = false;
            for (const auto& pt : {e.a, e.b}) {
                if (keep.count(pt)) continue;
                Trace without = r;
                without.edges.erase(e);
                if (!edge_at(without, pt) && other_boxes_at(without, pt, {}) == 0) dangling = true;
            }
            if (!dangling) continue;
            Trace cand = r;
            cand.edges.erase(e);
            bool ok = validate_trace(cand).ok;
            for (const auto& s : scaled.sinks)
                if (!trace_covers(cand, s)) ok = false;
            if (ok) {
                r = cand;
                changed = true;
                break;
            }
        }
    }
}

// Remove a box with a dangling corner, keeping the two far sides as edges.
std::optional<Trace> try_corner_removal(const Trace& r, const SinkSet& scaled,
                                        const std::set<GridPoint>& keep) {
    for (const auto& b : r.boxes) {
        auto sides = box_sides(b);
        const GridPoint corners[4] = {b, {b.x + 1, b.y}, {b.x, b.y + 1}, {b.x + 1, b.y + 1}};
        for (const auto& c : corners) {
            if (!corner_free(r, c, {b}, keep)) continue;
            Trace cand = r;
            cand.boxes.erase(b);
            for (const auto& s : sides)
                if (s.a != c && s.b != c) keep_side(cand, s);
            if (acceptable(cand, r, scaled)) return cand;
        }
    }
    return std::nullopt;
}

// Remove two boxes sharing a side whose designated shared corner dangles.
std::optional<Trace> try_pair_removal(const Trace& r, const SinkSet& scaled,
                                      const std::set<GridPoint>& keep) {
    for (const auto& b : r.boxes) {
        for (bool vertical_pair : {true, false}) {
            GridPoint b2 = vertical_pair ? GridPoint{b.x, b.y + 1} : GridPoint{b.x + 1, b.y};
            if (!r.boxes.count(b2)) continue;
            GridPoint c{b.x + 1, b.y + 1};
            if (!corner_free(r, c, {b, b2}, keep)) continue;
            Trace cand = r;
            cand.boxes.erase(b);
            cand.boxes.erase(b2);
            for (const auto& owner : {b, b2})
                for (const auto& s : box_sides(owner))
                    if (s.a != c && s.b != c) keep_side(cand, s);
            if (acceptable(cand, r, scaled)) return cand;
        }
    }
    return std::nullopt;
}

bool is_maximal_box(const Trace& r, const GridPoint& b) {
    for (const auto& o : r.boxes)
        if (o != b && o.x >= b.x && o.y >= b.y) return false;
    return true;
}

// Reroute the single horizontal edge at a maximal box's top-right corner
// down its right side, then drop the box.
std::optional<Trace> try_edge_replacement(const Trace& r, const SinkSet& scaled,
                                          const std::set<GridPoint>& keep) {
    for (const auto& b : r.boxes) {
        if (!is_maximal_box(r, b)) continue;
        GridPoint ctop{b.x + 1, b.y + 1}, cbot{b.x + 1, b.y};
        if (keep.count(ctop)) continue;
        Segment e = make_segment(ctop, {ctop.x + 1, ctop.y});
        if (!r.edges.count(e)) continue;
        if (other_boxes_at(r, ctop, {b}) != 0) continue;
        if (r.edges.count(make_segment(ctop, {ctop.x, ctop.y + 1})) ||
            r.edges.count(make_segment(ctop, {ctop.x - 1, ctop.y})))
            continue;
        bool anchored = r.edges.count(make_segment(cbot, {cbot.x + 1, cbot.y})) ||
                        r.boxes.count({cbot.x, cbot.y - 1});
        if (!anchored) continue;
        Trace cand = r;
        cand.edges.erase(e);
        cand.edges.insert(make_segment({cbot.x + 1, cbot.y}, {cbot.x + 1, cbot.y + 1}));
        cand.boxes.erase(b);
        for (const auto& s : box_sides(b))
            if (s.a != ctop && s.b != ctop) keep_side(cand, s);
        if (acceptable(cand, r, scaled)) return cand;
    }
    return std::nullopt;
}

SinkSet transpose_sinks(const SinkSet& s) {
    SinkSet t;
    for (const auto& p : s.sinks) t.sinks.push_back({p.y, p.x});
    std::sort(t.sinks.begin(), t.sinks.end());
    return t;
}

Trace unit_edge_trace(const Arborescence& a, const GridPoint& shift) {
    Trace r;
    for (const auto& seg : a.segments) {
        GridPoint step = seg.horizontal() ? GridPoint{1, 0} : GridPoint{0, 1};
        GridPoint cur = seg.a;
        while (cur != seg.b) {
            GridPoint next{cur.x + step.x, cur.y + step.y};
            r.edges.insert(make_segment({cur.x + shift.x, cur.y + shift.y},
                                        {next.x + shift.x, next.y + shift.y}));
            cur = next;
        }
    }
    return r;
}

}  // namespace

Trace eliminate_boxes(const Trace& r, const SinkSet& scaled) {
    for (const auto& s : scaled.sinks) {
        if (s.x % 2 != 0 || s.y % 2 != 0)
            throw DomainError("OddSinkCoordinate", "scaled sinks must have even coordinates");
        if (!trace_covers(r, s))
            throw DomainError("SinkNotCovered", "trace does not cover every sink");
    }
    std::set<GridPoint> keep{kRoot};
    for (const auto& s : scaled.sinks) keep.insert(s);
    std::set<GridPoint> keep_t{kRoot};
    for (const auto& s : scaled.sinks) keep_t.insert({s.y, s.x});
    SinkSet scaled_t = transpose_sinks(scaled);

    Trace q = r;
    bool progress = true;
    while (!q.boxes.empty() && progress) {
        progress = false;
        cleanup_dangling(q, scaled, keep);
        if (auto c = try_corner_removal(q, scaled, keep)) {
            q = *c;
            progress = true;
            continue;
        }
        if (auto c = try_pair_removal(q, scaled, keep)) {
            q = *c;
            progress = true;
            continue;
        }
        if (auto c = try_edge_replacement(q, scaled, keep)) {
            q = *c;
            progress = true;
            continue;
        }
        if (auto c = try_edge_replacement(transpose(q), scaled_t, keep_t)) {
            q = transpose(*c);
            progress = true;
        }
    }
    if (q.boxes.empty()) return q;

    // rewrites stalled: rebuild from an optimal arborescence on the sinks
    SinkSet shifted;
    for (const auto& s : scaled.sinks) shifted.sinks.push_back({s.x - 1, s.y - 1});
    Trace out = unit_edge_trace(solve_exact(shifted, static_cast<int>(shifted.size())), kRoot);
    bool ok = validate_trace(out).ok && cost(out) <= cost(r);
    for (const auto& s : scaled.sinks)
        if (!trace_covers(out, s)) ok = false;
    if (!ok)
        throw DomainError("ConstructionFailed", "fallback trace violates the cost bound");
    return out;
}

Arborescence shortest_path_tree(const Trace& r, const SinkSet& scaled) {
    if (!r.boxes.empty())
        throw DomainError("InvalidInput", "shortest_path_tree needs a box-free trace");
    if (scaled.sinks.empty()) return {};
    std::map<GridPoint, long long> dist;
    dist[kRoot] = 0;
    std::vector<GridPoint> frontier{kRoot};
    while (!frontier.empty()) {
        std::vector<GridPoint> next;
        for (const auto& p : frontier)
            for (const auto& q : {GridPoint{p.x + 1, p.y}, GridPoint{p.x, p.y + 1},
                                  GridPoint{p.x - 1, p.y}, GridPoint{p.x, p.y - 1}}) {
                if (q.x < 1 || q.y < 1 || dist.count(q)) continue;
                if (!r.edges.count(make_segment(p, q))) continue;
                dist[q] = dist[p] + 1;
                next.push_back(q);
            }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    for (const auto& s : scaled.sinks)
        if (!dist.count(s)) throw DomainError("SinkNotCovered", "sink unreachable in trace");

    auto pred = [&](const GridPoint& p) -> GridPoint {
        for (const auto& q : {GridPoint{p.x - 1, p.y}, GridPoint{p.x, p.y - 1},
                              GridPoint{p.x + 1, p.y}, GridPoint{p.x, p.y + 1}}) {
            auto it = dist.find(q);
            if (it != dist.end() && it->second + 1 == dist[p] &&
                r.edges.count(make_segment(p, q)))
                return q;
        }
        throw DomainError("ConstructionFailed", "broken shortest-path predecessor");
    };
    std::set<Segment> edges;
    SinkSet shifted;
    for (const auto& s : scaled.sinks) {
        shifted.sinks.push_back({s.x - 1, s.y - 1});
        GridPoint cur = s;
        while (cur != kRoot) {
            GridPoint up = pred(cur);
            edges.insert(make_segment({cur.x - 1, cur.y - 1}, {up.x - 1, up.y - 1}));
            cur = up;
        }
    }
    std::sort(shifted.sinks.begin(), shifted.sinks.end());
    Arborescence a =
        arborescence_from_edges(std::vector<Segment>(edges.begin(), edges.end()), shifted);
    auto rep = validate_arborescence(a, shifted);
    if (!rep.ok)
        throw DomainError("ConstructionFailed",
                          "shortest-path tree is not an arborescence: " + rep.reasons.front());
    return a;
}

bool visits(const FlipSequence& seq, const GridPoint& sink, int beta) {
    const SimplePolygon& p = seq.start.polygon();
    int u = p.index_of_label(lbl("u", beta * sink.x));
    int l = p.index_of_label(lbl("l", beta * sink.y));
    int l2 = p.index_of_label(lbl("l", beta * sink.y + 1));
    if (u < 0 || l < 0 || l2 < 0) return false;  // triangle outside the grid
    for (const auto& t : seq.states())
        if (t.has_triangle(u, l, l2)) return true;
    return false;
}

}  // namespace flipforge
