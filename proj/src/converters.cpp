#include "flipforge/converters.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace flipforge {

namespace {

int label_index(const SimplePolygon& p, const std::string& l) {
    int i = p.index_of_label(l);
    if (i < 0) throw DomainError("InvalidInput", "polygon lacks labeled vertex " + l);
    return i;
}

// Applies chain-path moves on the full polygon P_D*, recording flips.
struct Walker {
    const PolyFlipInstance& inst;
    Triangulation cur;
    std::vector<Diagonal> flips;
    long long v = 1, w = 1;  // tip of the chain path: last chain edge (u_v, l_w)
    int z;
    std::vector<int> u_idx, l_idx;  // 1-based label positions

    explicit Walker(const PolyFlipInstance& i)
        : inst(i), cur(i.T1()), z(i.z) {
        int g = i.params.beta * i.n;
        u_idx.assign(g + 1, -1);
        l_idx.assign(g + 1, -1);
        for (int t = 1; t <= g; ++t) {
            u_idx[t] = label_index(i.polygon, "u" + std::to_string(t));
            l_idx[t] = label_index(i.polygon, "l" + std::to_string(t));
        }
    }

    void apply(const Diagonal& d) {
        cur = cur.flip(d);
        flips.push_back(d);
    }

    void extend_north() { apply(make_diagonal(z, u_idx[v])); ++v; }
    void extend_east() { apply(make_diagonal(z, l_idx[w])); ++w; }
    void shorten_north() { apply(make_diagonal(u_idx[v], l_idx[w])); --v; }
    void shorten_east() { apply(make_diagonal(u_idx[v], l_idx[w])); --w; }

    void visit_gadget(const SinkGadget& gad) {
        extend_east();  // mouth triangle apex becomes u_s
        auto schedule = explicit_pdp_sequence(gad.sub_polygon);
        for (const auto& f : schedule.flips)
            apply(make_diagonal(gad.sub_to_big[f.first], gad.sub_to_big[f.second]));
        shorten_east();
    }
};

GridPoint route(const GridPoint& p, int beta) {
    return {std::max(beta * p.x, 1LL), std::max(beta * p.y, 1LL)};
}

std::vector<Segment> unit_edges(const Arborescence& a) {
    std::vector<Segment> out;
    for (const auto& s : a.segments) {
        GridPoint step{s.horizontal() ? 1 : 0, s.horizontal() ? 0 : 1};
        for (GridPoint p = s.a; p != s.b; p = {p.x + step.x, p.y + step.y})
            out.push_back(make_segment(p, {p.x + step.x, p.y + step.y}));
    }
    return out;
}

std::vector<Diagonal> diagonals_of_projection(
    const SimplePolygon& poly, const std::vector<std::array<int, 3>>& tris,
    const std::vector<int>& vmap) {
    std::set<Diagonal> diags;
    for (const auto& t : tris) {
        int a = vmap[t[0]], b = vmap[t[1]], c = vmap[t[2]];
        if (a < 0 || b < 0 || c < 0) continue;
        if (a == b || b == c || a == c) continue;
        for (auto [i, j] : {std::pair{a, b}, {b, c}, {a, c}})
            if (!poly.boundary_adjacent(i, j)) diags.insert(make_diagonal(i, j));
    }
    return {diags.begin(), diags.end()};
}

// Exactly one removed and one added diagonal; returns the removed one.
Diagonal single_flip_between(const std::vector<Diagonal>& from,
                             const std::vector<Diagonal>& to) {
    std::vector<Diagonal> removed, added;
    std::set_difference(from.begin(), from.end(), to.begin(), to.end(),
                        std::back_inserter(removed));
    std::set_difference(to.begin(), to.end(), from.begin(), from.end(),
                        std::back_inserter(added));
    if (removed.size() != 1 || added.size() != 1)
        throw DomainError("ConstructionFailed",
                          "projection changed by more than one diagonal");
    return removed[0];
}

SinkSet translated_scaled_sinks(const PolyFlipInstance& inst) {
    SinkSet t;
    for (const auto& s : inst.sinks.sinks)
        t.sinks.push_back({inst.params.beta * s.x - 1, inst.params.beta * s.y - 1});
    return t;
}

Arborescence snap_to_hanan(Arborescence a, const SinkSet& s) {
    for (int round = 0; round < 10000; ++round) {
        if (is_on_hanan_grid(a, s)) return a;
        std::set<long long> xs{0}, ys{0};
        for (const auto& p : s.sinks) {
            xs.insert(p.x);
            ys.insert(p.y);
        }
        bool moved = false;
        for (const auto& e : a.segments) {
            if (!e.horizontal() && !xs.count(e.a.x)) {
                a = slide_right(a, s, e);
                moved = true;
                break;
            }
            if (e.horizontal() && !ys.count(e.a.y)) {
                a = slide_up(a, s, e);
                moved = true;
                break;
            }
        }
        if (!moved)
            throw DomainError("PipelineFailure", "snap: off-grid but nothing slidable");
    }
    throw DomainError("PipelineFailure", "snap: slide loop did not terminate");
}

}  // namespace

FlipSequence rsa_to_flips(const Arborescence& a, const PolyFlipInstance& inst) {
    auto rep = validate_arborescence(a, inst.sinks);
    if (!rep.ok)
        throw DomainError("InvalidArborescence",
                          rep.reasons.empty() ? "invalid input" : rep.reasons.front());
    int beta = inst.params.beta, d = inst.params.d;

    std::map<GridPoint, std::vector<GridPoint>> children;
    for (const auto& e : unit_edges(a)) children[e.a].push_back(e.b);
    for (auto& [p, cs] : children) std::sort(cs.begin(), cs.end());

    std::set<GridPoint> sink_set(inst.sinks.sinks.begin(), inst.sinks.sinks.end());
    Walker walk(inst);

    auto dfs = [&](auto&& self, const GridPoint& p) -> void {
        if (sink_set.count(p)) {
            for (const auto& gad : inst.gadgets)
                if (gad.sink == p) walk.visit_gadget(gad);
        }
        auto it = children.find(p);
        if (it == children.end()) return;
        for (const auto& q : it->second) {
            GridPoint from = route(p, beta), to = route(q, beta);
            bool north = q.x > p.x;  // RSA x runs along the upper chain
            long long steps = north ? to.x - from.x : to.y - from.y;
            for (long long i = 0; i < steps; ++i)
                north ? walk.extend_north() : walk.extend_east();
            self(self, q);
            for (long long i = 0; i < steps; ++i)
                north ? walk.shorten_north() : walk.shorten_east();
        }
    };
    dfs(dfs, {0, 0});

    long long target = 2LL * beta * length(a) +
                       (4LL * d - 2) * static_cast<long long>(inst.sinks.size());
    long long pad = target - static_cast<long long>(walk.flips.size());
    if (pad < 0 || pad % 2 != 0)
        throw DomainError("ReplayFailure", "schedule length drifted from the formula");
    for (long long i = 0; i < pad / 2; ++i) {
        walk.extend_north();
        walk.shorten_north();
    }

    if (walk.cur.canonical_key() != inst.T2().canonical_key())
        throw DomainError("ReplayFailure", "schedule does not end at T2");
    return {inst.T1(), std::move(walk.flips)};
}

Decomposition decompose_flip_sequence(const FlipSequence& seq, const PolyFlipInstance& inst) {
    long long d = inst.params.d;
    if (static_cast<long long>(seq.size()) >= (d - 1) * (d - 1))
        throw DomainError("BudgetTooLarge", "sequence length must stay below (d-1)^2");
    if (seq.start.canonical_key() != inst.T1().canonical_key())
        throw DomainError("InvalidInput", "sequence must start at T1");

    auto states = seq.states();
    if (states.back().canonical_key() != inst.T2().canonical_key())
        throw DomainError("InvalidInput", "sequence must end at T2");

    const SimplePolygon& big = inst.polygon;
    auto plus = std::make_shared<SimplePolygon>(inst.plus_polygon());

    // vertex maps: P_D* -> P_D^+ and P_D* -> each gadget polygon
    std::vector<int> to_plus(big.size(), -1);
    for (int i = 0; i < big.size(); ++i) {
        int j = plus->index_of_label(big.label(i));
        if (j >= 0) to_plus[i] = j;
    }
    for (const auto& gad : inst.gadgets) {
        int left = to_plus[gad.l_s], right = to_plus[gad.l_s_prime];
        for (int i = 1; i < inst.params.d; ++i) {
            // canonical upper chain hangs off l_s, lower chain off l_s'
            to_plus[gad.sub_to_big[inst.params.d + 1 + i]] = left;
            to_plus[gad.sub_to_big[i - 1]] = right;
        }
    }
    std::vector<std::vector<int>> to_sub(inst.gadgets.size(),
                                         std::vector<int>(big.size(), -1));
    for (std::size_t gi = 0; gi < inst.gadgets.size(); ++gi) {
        to_sub[gi].assign(big.size(), inst.params.d);  // everything else -> u_s
        for (std::size_t k = 0; k < inst.gadgets[gi].sub_to_big.size(); ++k)
            to_sub[gi][inst.gadgets[gi].sub_to_big[k]] = static_cast<int>(k);
    }

    std::vector<std::vector<Diagonal>> plus_states;
    std::vector<std::vector<std::vector<Diagonal>>> sub_states(inst.gadgets.size());
    for (const auto& t : states) {
        auto tris = t.triangles();
        plus_states.push_back(diagonals_of_projection(*plus, tris, to_plus));
        for (std::size_t gi = 0; gi < inst.gadgets.size(); ++gi)
            sub_states[gi].push_back(
                diagonals_of_projection(inst.gadgets[gi].sub_polygon, tris, to_sub[gi]));
    }

    Decomposition dec{plus,
                      FlipSequence{Triangulation(*plus, plus_states.front()), {}},
                      {},
                      {}};
    for (std::size_t gi = 0; gi < inst.gadgets.size(); ++gi)
        dec.per_sink.push_back(FlipSequence{
            Triangulation(inst.gadgets[gi].sub_polygon, sub_states[gi].front()), {}});

    for (std::size_t i = 0; i + 1 < states.size(); ++i) {
        int moved = 0;
        if (plus_states[i] != plus_states[i + 1]) {
            dec.sigma1.flips.push_back(
                single_flip_between(plus_states[i], plus_states[i + 1]));
            ++moved;
            ++dec.diag.projected_plus;
        }
        for (std::size_t gi = 0; gi < inst.gadgets.size(); ++gi)
            if (sub_states[gi][i] != sub_states[gi][i + 1]) {
                dec.per_sink[gi].flips.push_back(
                    single_flip_between(sub_states[gi][i], sub_states[gi][i + 1]));
                ++moved;
                ++dec.diag.projected_sink;
            }
        if (moved > 1)
            throw DomainError("ConstructionFailed", "one flip moved two projections");
        if (moved == 0) ++dec.diag.silent;
    }

    // every projected sequence must replay: a cheap internal consistency check
    dec.sigma1.replay();
    for (auto& s : dec.per_sink) s.replay();
    return dec;
}

Arborescence flips_to_rsa(const FlipSequence& seq, const PolyFlipInstance& inst) {
    auto dec = decompose_flip_sequence(seq, inst);

    for (std::size_t gi = 0; gi < inst.gadgets.size(); ++gi) {
        auto [tu, tl] =
            extreme_triangulations(inst.gadgets[gi].sub_polygon, ChainVariant::PDp);
        if (dec.per_sink[gi].start.canonical_key() != tu.canonical_key() ||
            dec.per_sink[gi].replay().canonical_key() != tl.canonical_key())
            throw DomainError("PipelineFailure",
                              "decompose: gadget " + std::to_string(gi) +
                                  " not taken between its extreme triangulations");
    }

    Trace r;
    try {
        r = trace_of(dec.sigma1);
    } catch (const DomainError& e) {
        throw DomainError("PipelineFailure", std::string("trace: ") + e.what());
    }

    int beta = inst.params.beta;
    SinkSet scaled;
    for (const auto& s : inst.sinks.sinks)
        scaled.sinks.push_back({beta * s.x, beta * s.y});
    for (const auto& s : scaled.sinks)
        if (!trace_covers(r, s))
            throw DomainError("PipelineFailure",
                              "trace: sink not visited at (" + std::to_string(s.x) +
                                  "," + std::to_string(s.y) + ")");

    Arborescence arb;
    try {
        r = eliminate_boxes(r, scaled);
        arb = shortest_path_tree(r, scaled);
    } catch (const DomainError& e) {
        throw DomainError("PipelineFailure", std::string("eliminate: ") + e.what());
    }

    SinkSet tsinks = translated_scaled_sinks(inst);
    arb = snap_to_hanan(std::move(arb), tsinks);

    // contract the scaled Hanan lines back onto the n x n grid
    std::map<long long, long long> xmap{{0, 0}}, ymap{{0, 0}};
    for (const auto& s : inst.sinks.sinks) {
        xmap[beta * s.x - 1] = s.x;
        ymap[beta * s.y - 1] = s.y;
    }
    std::vector<Segment> mapped;
    for (const auto& e : arb.segments) {
        auto cx = [&](long long x) {
            auto it = xmap.find(x);
            if (it == xmap.end())
                throw DomainError("PipelineFailure", "contract: endpoint off the Hanan grid");
            return it->second;
        };
        auto cy = [&](long long y) {
            auto it = ymap.find(y);
            if (it == ymap.end())
                throw DomainError("PipelineFailure", "contract: endpoint off the Hanan grid");
            return it->second;
        };
        mapped.push_back(make_segment({cx(e.a.x), cy(e.a.y)}, {cx(e.b.x), cy(e.b.y)}));
    }
    Arborescence out = arborescence_from_edges(unit_edges(Arborescence{mapped}), inst.sinks);
    auto rep = validate_arborescence(out, inst.sinks);
    if (!rep.ok)
        throw DomainError("PipelineFailure",
                          "contract: " +
                              (rep.reasons.empty() ? std::string("invalid output")
                                                   : rep.reasons.front()));
    return out;
}

}  // namespace flipforge
