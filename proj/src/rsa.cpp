#include "flipforge/rsa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>

namespace flipforge {

namespace {

const long long kInf = (1LL << 62);

std::string pt_str(const GridPoint& p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

std::string seg_str(const Segment& s) { return pt_str(s.a) + "-" + pt_str(s.b); }

bool contains_point(const Segment& s, const GridPoint& p) {
    return s.a.x <= p.x && p.x <= s.b.x && s.a.y <= p.y && p.y <= s.b.y &&
           (s.horizontal() ? p.y == s.a.y : p.x == s.a.x);
}

/// OK (endpoint-only contact) / overlap / interior-point contact.
enum class Contact { None, Endpoint, Bad };

Contact classify_contact(const Segment& s, const Segment& t) {
    long long lox = std::max(s.a.x, t.a.x), hix = std::min(s.b.x, t.b.x);
    long long loy = std::max(s.a.y, t.a.y), hiy = std::min(s.b.y, t.b.y);
    if (lox > hix || loy > hiy) return Contact::None;
    if (lox != hix || loy != hiy) return Contact::Bad;  // overlap along a line
    GridPoint q{lox, loy};
    bool end_s = q == s.a || q == s.b;
    bool end_t = q == t.a || q == t.b;
    return end_s && end_t ? Contact::Endpoint : Contact::Bad;
}

using Adjacency = std::map<GridPoint, std::vector<GridPoint>>;

Adjacency adjacency_of(const std::vector<Segment>& segments) {
    Adjacency adj;
    for (const auto& s : segments) {
        adj[s.a].push_back(s.b);
        adj[s.b].push_back(s.a);
    }
    for (auto& [p, nb] : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

Arborescence transpose(const Arborescence& a) {
    Arborescence out;
    for (const auto& s : a.segments)
        out.segments.push_back(make_segment({s.a.y, s.a.x}, {s.b.y, s.b.x}));
    std::sort(out.segments.begin(), out.segments.end());
    return out;
}

SinkSet transpose(const SinkSet& s) {
    SinkSet out;
    for (const auto& p : s.sinks) out.sinks.push_back({p.y, p.x});
    return out;
}

/// Splits every segment at all endpoint coordinates, yielding elementary
/// edges that can only meet at shared endpoints.
std::set<Segment> elementary_edges(const std::vector<Segment>& segments) {
    std::set<long long> xs, ys;
    for (const auto& s : segments) {
        xs.insert(s.a.x);
        xs.insert(s.b.x);
        ys.insert(s.a.y);
        ys.insert(s.b.y);
    }
    std::set<Segment> out;
    for (const auto& s : segments) {
        if (s.horizontal()) {
            long long prev = s.a.x;
            for (long long x : xs) {
                if (x <= prev || x > s.b.x) continue;
                out.insert(make_segment({prev, s.a.y}, {x, s.a.y}));
                prev = x;
            }
        } else {
            long long prev = s.a.y;
            for (long long y : ys) {
                if (y <= prev || y > s.b.y) continue;
                out.insert(make_segment({s.a.x, prev}, {s.a.x, y}));
                prev = y;
            }
        }
    }
    return out;
}

/// Removes dangling branches: leaves that are neither sinks nor the origin.
void prune_edges(std::set<Segment>& edges, const SinkSet& s) {
    std::set<GridPoint> keep{GridPoint{0, 0}};
    for (const auto& p : s.sinks) keep.insert(p);
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<GridPoint, int> deg;
        for (const auto& e : edges) {
            ++deg[e.a];
            ++deg[e.b];
        }
        for (auto it = edges.begin(); it != edges.end();) {
            bool dangling = (deg[it->a] == 1 && !keep.count(it->a)) ||
                            (deg[it->b] == 1 && !keep.count(it->b));
            if (dangling) {
                it = edges.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
}

}  // namespace

Segment make_segment(GridPoint p, GridPoint q) {
    if (p == q) throw DomainError("DegenerateInput", "zero-length segment at " + pt_str(p));
    if (p.x != q.x && p.y != q.y)
        throw DomainError("DegenerateInput", "skew segment " + pt_str(p) + "-" + pt_str(q));
    if (q < p) std::swap(p, q);
    return Segment{p, q};
}

ValidationReport validate_sinks(const SinkSet& s, bool yrsa) {
    ValidationReport rep;
    std::set<GridPoint> seen;
    std::set<long long> ys;
    for (const auto& p : s.sinks) {
        if (p.x < 0 || p.y < 0) rep.fail("negative sink " + pt_str(p));
        if (!seen.insert(p).second) rep.fail("duplicate sink " + pt_str(p));
        if (yrsa && !ys.insert(p.y).second)
            rep.fail("repeated y-coordinate " + std::to_string(p.y));
    }
    return rep;
}

long long length(const Arborescence& a) {
    long long total = 0;
    for (const auto& s : a.segments) total += s.length();
    return total;
}

ValidationReport validate_arborescence(const Arborescence& a, const SinkSet& s) {
    ValidationReport rep;
    for (const auto& seg : a.segments) {
        if (seg.a == seg.b) rep.fail("zero-length segment at " + pt_str(seg.a));
        if (seg.a.x != seg.b.x && seg.a.y != seg.b.y) rep.fail("skew segment " + seg_str(seg));
        if (!(seg.a < seg.b)) rep.fail("unnormalized segment " + seg_str(seg));
    }
    if (!rep.ok) return rep;
    for (std::size_t i = 0; i < a.segments.size(); ++i)
        for (std::size_t j = i + 1; j < a.segments.size(); ++j)
            if (classify_contact(a.segments[i], a.segments[j]) == Contact::Bad)
                rep.fail("segments " + seg_str(a.segments[i]) + " and " +
                         seg_str(a.segments[j]) + " meet away from their endpoints");
    if (!rep.ok) return rep;

    Adjacency adj = adjacency_of(a.segments);
    GridPoint origin{0, 0};
    if (a.segments.empty()) {
        for (const auto& p : s.sinks)
            if (p != origin) rep.fail("sink " + pt_str(p) + " not reached");
        return rep;
    }
    if (!adj.count(origin)) {
        rep.fail("origin is not a segment endpoint");
        return rep;
    }
    // connectivity + monotone orientation from the root
    std::map<GridPoint, GridPoint> parent;
    std::deque<GridPoint> queue{origin};
    parent[origin] = origin;
    while (!queue.empty()) {
        GridPoint p = queue.front();
        queue.pop_front();
        for (const auto& q : adj[p]) {
            if (parent.count(q)) continue;
            parent[q] = p;
            if (q.x < p.x || q.y < p.y)
                rep.fail("edge " + pt_str(p) + "->" + pt_str(q) + " points south or west");
            queue.push_back(q);
        }
    }
    if (parent.size() != adj.size()) rep.fail("segment union is disconnected");
    if (a.segments.size() + 1 != adj.size()) rep.fail("segment union contains a cycle");
    std::set<GridPoint> sinkset(s.sinks.begin(), s.sinks.end());
    for (const auto& p : s.sinks)
        if (p != origin && !adj.count(p)) rep.fail("sink " + pt_str(p) + " not an endpoint");
    for (const auto& [p, nb] : adj)
        if (nb.size() == 1 && p != origin && !sinkset.count(p))
            rep.fail("leaf " + pt_str(p) + " is not a sink");
    return rep;
}

Arborescence arborescence_from_edges(const std::vector<Segment>& edges, const SinkSet& s) {
    Adjacency adj = adjacency_of(edges);
    std::set<GridPoint> breaks{GridPoint{0, 0}};
    for (const auto& p : s.sinks) breaks.insert(p);
    for (const auto& [p, nb] : adj) {
        if (nb.size() != 2) {
            breaks.insert(p);
            continue;
        }
        bool h0 = nb[0].y == p.y, h1 = nb[1].y == p.y;
        if (h0 != h1) breaks.insert(p);
    }
    std::set<Segment> unused(edges.begin(), edges.end());
    Arborescence out;
    for (const auto& start : breaks) {
        if (!adj.count(start)) continue;
        for (const auto& first : adj.at(start)) {
            Segment e0 = make_segment(start, first);
            if (!unused.count(e0)) continue;
            GridPoint prev = start, cur = first;
            unused.erase(e0);
            while (!breaks.count(cur)) {
                const auto& nb = adj.at(cur);
                GridPoint next = nb[0] == prev ? nb[1] : nb[0];
                unused.erase(make_segment(cur, next));
                prev = cur;
                cur = next;
            }
            out.segments.push_back(make_segment(start, cur));
        }
    }
    if (!unused.empty())
        throw DomainError("InvalidInput", "edge set contains a closed loop without junctions");
    std::sort(out.segments.begin(), out.segments.end());
    return out;
}

bool is_on_hanan_grid(const Arborescence& a, const SinkSet& s) {
    std::set<long long> xs{0}, ys{0};
    for (const auto& p : s.sinks) {
        xs.insert(p.x);
        ys.insert(p.y);
    }
    for (const auto& seg : a.segments) {
        if (seg.horizontal()) {
            if (!ys.count(seg.a.y)) return false;
        } else if (!xs.count(seg.a.x)) {
            return false;
        }
    }
    return true;
}

Arborescence slide_right(const Arborescence& a, const SinkSet& s, const Segment& e) {
    auto violated = [](const std::string& why) -> DomainError {
        return DomainError("PreconditionViolated", why);
    };
    if (!std::binary_search(a.segments.begin(), a.segments.end(), e))
        throw violated("e is not a segment of the arborescence");
    if (e.horizontal()) throw violated("e is not vertical");
    for (const auto& p : s.sinks)
        if (contains_point(e, p)) throw violated("e contains the sink " + pt_str(p));
    GridPoint top = e.b;
    const Segment* f = nullptr;
    int deg = 0;
    for (const auto& seg : a.segments) {
        if (seg.a == top || seg.b == top) ++deg;
        if (seg.horizontal() && seg.a == top) f = &seg;
        if (!seg.horizontal() && seg.a == top)
            throw violated("upper endpoint is the lower endpoint of another vertical segment");
    }
    if (!f) throw violated("no horizontal segment leaves the upper endpoint eastward");
    if (deg != 2) throw violated("upper endpoint has more than two incident segments");

    // translate a copy of e right until it hits a sink or a segment endpoint
    long long limit = kInf;
    auto consider = [&](const GridPoint& q) {
        if (q.x > e.a.x && q.y >= e.a.y && q.y <= e.b.y) limit = std::min(limit, q.x);
    };
    for (const auto& seg : a.segments) {
        consider(seg.a);
        consider(seg.b);
    }
    for (const auto& p : s.sinks) consider(p);
    long long x1 = e.a.x, x2 = limit, ylo = e.a.y, yhi = e.b.y;

    auto edges = elementary_edges(std::vector<Segment>(a.segments.begin(), a.segments.end()));
    for (auto it = edges.begin(); it != edges.end();) {
        bool on_e = !it->horizontal() && it->a.x == x1 && it->a.y >= ylo && it->b.y <= yhi;
        bool on_f_top = it->horizontal() && it->a.y == yhi && it->a.x >= x1 && it->b.x <= x2;
        it = (on_e || on_f_top) ? edges.erase(it) : ++it;
    }
    // reroute clockwise from the upper right corner of R until the path
    // meets the remaining tree again
    std::set<GridPoint> remaining{e.a};  // the walk is guaranteed to end at b = e.a
    for (const auto& edge : edges) {
        remaining.insert(edge.a);
        remaining.insert(edge.b);
    }
    std::vector<Segment> work(edges.begin(), edges.end());
    long long ystop = -kInf, xstop = -kInf;
    for (const auto& v : remaining) {
        if (v.x == x2 && v.y >= ylo && v.y < yhi) ystop = std::max(ystop, v.y);
        if (v.y == ylo && v.x >= x1 && v.x < x2) xstop = std::max(xstop, v.x);
    }
    if (ystop > -kInf) {
        work.push_back(make_segment({x2, ystop}, {x2, yhi}));
    } else if (xstop > -kInf) {
        work.push_back(make_segment({x2, ylo}, {x2, yhi}));
        work.push_back(make_segment({xstop, ylo}, {x2, ylo}));
    }
    edges = elementary_edges(work);
    prune_edges(edges, s);
    Arborescence out =
        arborescence_from_edges(std::vector<Segment>(edges.begin(), edges.end()), s);
    auto rep = validate_arborescence(out, s);
    if (!rep.ok || length(out) > length(a))
        throw DomainError("ConstructionFailed",
                          "slide produced an invalid or longer arborescence: " +
                              (rep.reasons.empty() ? "length" : rep.reasons.front()));
    return out;
}

Arborescence slide_up(const Arborescence& a, const SinkSet& s, const Segment& e) {
    if (!(e.a.x != e.b.x))
        throw DomainError("PreconditionViolated", "e is not horizontal");
    Segment et = make_segment({e.a.y, e.a.x}, {e.b.y, e.b.x});
    return transpose(slide_right(transpose(a), transpose(s), et));
}

namespace {

struct HananDp {
    std::vector<long long> xs, ys;
    std::vector<int> sx, sy;  // sink positions as grid indices
    int nx = 0, ny = 0, nsinks = 0;
    std::vector<long long> memo;
    std::vector<int> choice;     // 0 east, 1 north, 2 split
    std::vector<int> split_arg;  // submask for split

    std::size_t idx(int i, int j, int mask) const {
        return (static_cast<std::size_t>(mask) * nx + i) * ny + j;
    }

    int local_mask(int i, int j) const {
        int m = 0;
        for (int k = 0; k < nsinks; ++k)
            if (sx[k] == i && sy[k] == j) m |= 1 << k;
        return m;
    }

    long long solve(int i, int j, int mask) {
        mask &= ~local_mask(i, j);
        if (mask == 0) return 0;
        for (int k = 0; k < nsinks; ++k)
            if ((mask >> k) & 1)
                if (sx[k] < i || sy[k] < j) return kInf;
        auto id = idx(i, j, mask);
        if (memo[id] >= 0) return memo[id];
        memo[id] = kInf;  // guards against re-entry; all moves strictly progress
        long long best = kInf;
        int bc = -1, barg = 0;
        if (i + 1 < nx) {
            long long v = solve(i + 1, j, mask);
            if (v < kInf) v += xs[i + 1] - xs[i];
            if (v < best) {
                best = v;
                bc = 0;
            }
        }
        if (j + 1 < ny) {
            long long v = solve(i, j + 1, mask);
            if (v < kInf) v += ys[j + 1] - ys[j];
            if (v < best) {
                best = v;
                bc = 1;
            }
        }
        for (int m1 = (mask - 1) & mask; m1 > 0; m1 = (m1 - 1) & mask) {
            int m2 = mask & ~m1;
            if (m1 > m2) continue;
            long long v1 = solve(i, j, m1);
            long long v2 = solve(i, j, m2);
            if (v1 >= kInf || v2 >= kInf) continue;
            if (v1 + v2 < best) {
                best = v1 + v2;
                bc = 2;
                barg = m1;
            }
        }
        memo[id] = best;
        choice[id] = bc;
        split_arg[id] = barg;
        return best;
    }

    void extract(int i, int j, int mask, std::set<Segment>& edges) {
        mask &= ~local_mask(i, j);
        if (mask == 0) return;
        auto id = idx(i, j, mask);
        switch (choice[id]) {
            case 0:
                edges.insert(make_segment({xs[i], ys[j]}, {xs[i + 1], ys[j]}));
                extract(i + 1, j, mask, edges);
                break;
            case 1:
                edges.insert(make_segment({xs[i], ys[j]}, {xs[i], ys[j + 1]}));
                extract(i, j + 1, mask, edges);
                break;
            case 2:
                extract(i, j, split_arg[id], edges);
                extract(i, j, mask & ~split_arg[id], edges);
                break;
            default:
                throw DomainError("ConstructionFailed", "dp extraction lost its way");
        }
    }
};

}  // namespace

Arborescence solve_exact(const SinkSet& s, int max_sinks) {
    auto srep = validate_sinks(s, false);
    if (!srep.ok) throw DomainError("InvalidInput", srep.reasons.front());
    int n = static_cast<int>(s.size());
    if (n > max_sinks)
        throw DomainError("TooManySinks", std::to_string(n) + " sinks exceeds cap " +
                                              std::to_string(max_sinks));
    if (n == 0) return {};

    HananDp dp;
    std::set<long long> xset{0}, yset{0};
    for (const auto& p : s.sinks) {
        xset.insert(p.x);
        yset.insert(p.y);
    }
    dp.xs.assign(xset.begin(), xset.end());
    dp.ys.assign(yset.begin(), yset.end());
    dp.nx = static_cast<int>(dp.xs.size());
    dp.ny = static_cast<int>(dp.ys.size());
    dp.nsinks = n;
    for (const auto& p : s.sinks) {
        dp.sx.push_back(static_cast<int>(
            std::lower_bound(dp.xs.begin(), dp.xs.end(), p.x) - dp.xs.begin()));
        dp.sy.push_back(static_cast<int>(
            std::lower_bound(dp.ys.begin(), dp.ys.end(), p.y) - dp.ys.begin()));
    }
    std::size_t states = static_cast<std::size_t>(dp.nx) * dp.ny * (1u << n);
    dp.memo.assign(states, -1);
    dp.choice.assign(states, -1);
    dp.split_arg.assign(states, 0);

    int full = (1 << n) - 1;
    long long opt = dp.solve(0, 0, full);
    if (opt >= kInf) throw DomainError("ConstructionFailed", "dp found no arborescence");

    std::set<Segment> edges;
    dp.extract(0, 0, full, edges);
    Arborescence out =
        arborescence_from_edges(std::vector<Segment>(edges.begin(), edges.end()), s);
    auto rep = validate_arborescence(out, s);
    if (!rep.ok) throw DomainError("ConstructionFailed", "dp tree invalid: " + rep.reasons.front());
    if (length(out) != opt)
        throw DomainError("ConstructionFailed", "dp extraction length mismatch");
    return out;
}

namespace {

void enumerate_paths(int i, int j, int ti, int tj, const std::vector<long long>& xs,
                     const std::vector<long long>& ys, std::vector<Segment>& prefix,
                     std::vector<std::vector<Segment>>& out) {
    if (i == ti && j == tj) {
        out.push_back(prefix);
        return;
    }
    if (i < ti) {
        prefix.push_back(make_segment({xs[i], ys[j]}, {xs[i + 1], ys[j]}));
        enumerate_paths(i + 1, j, ti, tj, xs, ys, prefix, out);
        prefix.pop_back();
    }
    if (j < tj) {
        prefix.push_back(make_segment({xs[i], ys[j]}, {xs[i], ys[j + 1]}));
        enumerate_paths(i, j + 1, ti, tj, xs, ys, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

long long brute_force_oracle(const SinkSet& s) {
    auto srep = validate_sinks(s, false);
    if (!srep.ok) throw DomainError("InvalidInput", srep.reasons.front());
    int n = static_cast<int>(s.size());
    if (n == 0) return 0;
    if (n > 4) throw DomainError("TooLarge", "oracle limited to 4 sinks");

    std::set<long long> xset{0}, yset{0};
    for (const auto& p : s.sinks) {
        xset.insert(p.x);
        yset.insert(p.y);
    }
    std::vector<long long> xs(xset.begin(), xset.end()), ys(yset.begin(), yset.end());

    std::vector<std::vector<std::vector<Segment>>> paths(n);
    double combos = 1;
    for (int k = 0; k < n; ++k) {
        int ti = static_cast<int>(std::lower_bound(xs.begin(), xs.end(), s.sinks[k].x) -
                                  xs.begin());
        int tj = static_cast<int>(std::lower_bound(ys.begin(), ys.end(), s.sinks[k].y) -
                                  ys.begin());
        std::vector<Segment> prefix;
        enumerate_paths(0, 0, ti, tj, xs, ys, prefix, paths[k]);
        combos *= static_cast<double>(paths[k].size());
        if (combos > 5e6) throw DomainError("TooLarge", "too many path combinations");
    }

    long long best = kInf;
    std::map<Segment, int> uses;
    long long current = 0;
    auto dfs = [&](auto&& self, int k) -> void {
        if (current >= best) return;
        if (k == n) {
            best = current;
            return;
        }
        for (const auto& path : paths[k]) {
            long long added = 0;
            for (const auto& e : path)
                if (uses[e]++ == 0) added += e.length();
            current += added;
            self(self, k + 1);
            current -= added;
            for (const auto& e : path) --uses[e];
        }
    };
    dfs(dfs, 0);
    return best;
}

std::pair<SinkSet, long long> perturb_to_yrsa(const SinkSet& s, long long k) {
    long long n = static_cast<long long>(s.size());
    if (n < 1) throw DomainError("InvalidInput", "perturbation needs at least one sink");
    long long n4 = n * n * n * n;
    SinkSet out;
    for (long long i = 0; i < n; ++i)
        out.sinks.push_back({s.sinks[i].x * n4, s.sinks[i].y * n4 + i + 1});
    return {out, k * n4 + n * n * n};
}

}  // namespace flipforge
