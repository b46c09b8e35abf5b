#include "flipforge/triangulation.hpp"

#include <algorithm>
#include <bitset>
#include <numeric>

namespace flipforge {

namespace {
constexpr int kMaxVertices = 256;
using AdjBits = std::bitset<kMaxVertices>;

std::vector<AdjBits> adjacency(const SimplePolygon& p, const std::vector<Diagonal>& diags) {
    int n = p.size();
    std::vector<AdjBits> adj(n);
    for (int i = 0; i < n; ++i) {
        adj[i].set((i + 1) % n);
        adj[(i + 1) % n].set(i);
    }
    for (const auto& [a, b] : diags) {
        adj[a].set(b);
        adj[b].set(a);
    }
    return adj;
}
}  // namespace

Triangulation::Triangulation(const SimplePolygon& polygon, std::vector<Diagonal> diagonals)
    : poly_(&polygon), diags_(std::move(diagonals)) {
    if (polygon.size() > kMaxVertices)
        throw DomainError("InvalidInput", "polygon too large");
    for (auto& d : diags_) d = make_diagonal(d.first, d.second);
    std::sort(diags_.begin(), diags_.end());
}

bool Triangulation::has_diagonal(const Diagonal& d) const {
    return std::binary_search(diags_.begin(), diags_.end(), make_diagonal(d.first, d.second));
}

bool Triangulation::has_edge(int i, int j) const {
    return poly_->boundary_adjacent(i, j) || has_diagonal(make_diagonal(i, j));
}

bool Triangulation::has_triangle(int a, int b, int c) const {
    return has_edge(a, b) && has_edge(b, c) && has_edge(a, c);
}

std::vector<std::array<int, 3>> Triangulation::triangles() const {
    // Every 3-clique of a polygon triangulation is a face.
    int n = poly_->size();
    auto adj = adjacency(*poly_, diags_);
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (!adj[a].test(b)) continue;
            AdjBits common = adj[a] & adj[b];
            for (int c = b + 1; c < n; ++c)
                if (common.test(c)) out.push_back({a, b, c});
        }
    }
    return out;
}

std::array<int, 2> Triangulation::apexes(const Diagonal& d) const {
    auto adj = adjacency(*poly_, diags_);
    AdjBits common = adj[d.first] & adj[d.second];
    std::array<int, 2> out{-1, -1};
    int found = 0;
    for (int c = 0; c < poly_->size(); ++c) {
        if (!common.test(c)) continue;
        if (found < 2) out[found] = c;
        ++found;
    }
    if (found != 2)
        throw DomainError("InvalidInput", "diagonal does not have exactly two apexes");
    return out;
}

bool Triangulation::flippable(const Diagonal& dd) const {
    Diagonal d = make_diagonal(dd.first, dd.second);
    if (!has_diagonal(d))
        throw DomainError("NotADiagonal", "diagonal not in triangulation");
    auto [c1, c2] = apexes(d);
    const ExactPoint& a = poly_->at(d.first);
    const ExactPoint& b = poly_->at(d.second);
    const ExactPoint& p1 = poly_->at(c1);
    const ExactPoint& p2 = poly_->at(c2);
    // Orient the quad CCW: with c_left strictly left of a->b, the cyclic
    // order (a, c_right, b, c_left) is counterclockwise.
    const ExactPoint* left = &p1;
    const ExactPoint* right = &p2;
    if (orientation(a, b, p1) != Orientation::CCW) std::swap(left, right);
    try {
        return is_strictly_convex_quad(a, *right, b, *left);
    } catch (const DomainError&) {
        return false;
    }
}

Diagonal Triangulation::opposite_diagonal(const Diagonal& d) const {
    auto [c1, c2] = apexes(make_diagonal(d.first, d.second));
    return make_diagonal(c1, c2);
}

Triangulation Triangulation::flip(const Diagonal& dd) const {
    Diagonal d = make_diagonal(dd.first, dd.second);
    if (!flippable(d)) throw DomainError("NotFlippable", "flip precondition violated");
    Diagonal nd = opposite_diagonal(d);
    std::vector<Diagonal> next;
    next.reserve(diags_.size());
    for (const auto& x : diags_)
        if (x != d) next.push_back(x);
    next.push_back(nd);
    return Triangulation(*poly_, std::move(next));
}

std::string Triangulation::canonical_key() const {
    std::string key;
    key.reserve(diags_.size() * 2);
    for (const auto& [a, b] : diags_) {
        key.push_back(static_cast<char>(a));
        key.push_back(static_cast<char>(b));
    }
    return key;
}

ValidationReport Triangulation::validate() const {
    ValidationReport rep;
    int n = poly_->size();
    if (static_cast<int>(diags_.size()) != n - 3)
        rep.fail("diagonal count " + std::to_string(diags_.size()) + " != n-3");
    for (std::size_t i = 0; i + 1 < diags_.size(); ++i)
        if (diags_[i] == diags_[i + 1]) rep.fail("duplicate diagonal");
    for (const auto& [a, b] : diags_) {
        if (a < 0 || b >= n || a == b) {
            rep.fail("diagonal index out of range");
            continue;
        }
        if (poly_->boundary_adjacent(a, b)) rep.fail("diagonal duplicates a boundary edge");
        if (!poly_->diagonal_ok(a, b))
            rep.fail("diagonal (" + std::to_string(a) + "," + std::to_string(b) +
                     ") not interior or crosses boundary");
    }
    for (std::size_t i = 0; i < diags_.size(); ++i) {
        for (std::size_t j = i + 1; j < diags_.size(); ++j) {
            const auto& [a, b] = diags_[i];
            const auto& [c, d] = diags_[j];
            if (segments_properly_intersect(poly_->at(a), poly_->at(b), poly_->at(c), poly_->at(d)))
                rep.fail("diagonals (" + std::to_string(a) + "," + std::to_string(b) + ") and (" +
                         std::to_string(c) + "," + std::to_string(d) + ") cross");
        }
    }
    if (rep.ok) {
        auto tris = triangles();
        if (static_cast<int>(tris.size()) != n - 2)
            rep.fail("face count " + std::to_string(tris.size()) + " != n-2");
    }
    return rep;
}

Triangulation fan_triangulation(const SimplePolygon& p, int apex) {
    int n = p.size();
    std::vector<Diagonal> diags;
    for (int v = 0; v < n; ++v)
        if (v != apex && !p.boundary_adjacent(apex, v)) diags.push_back(make_diagonal(apex, v));
    Triangulation t(p, std::move(diags));
    auto rep = t.validate();
    if (!rep.ok)
        throw DomainError("ApexNotVisible", "fan at vertex " + std::to_string(apex) + ": " +
                                               (rep.reasons.empty() ? "" : rep.reasons.front()));
    return t;
}

Triangulation ear_clipping_triangulation(const SimplePolygon& p) {
    int n = p.size();
    std::vector<int> ring(n);
    std::iota(ring.begin(), ring.end(), 0);
    std::vector<Diagonal> diags;
    while (ring.size() > 3) {
        int m = static_cast<int>(ring.size());
        bool clipped = false;
        for (int k = 0; k < m; ++k) {
            int prev = ring[(k + m - 1) % m];
            int cur = ring[k];
            int next = ring[(k + 1) % m];
            const ExactPoint& a = p.at(prev);
            const ExactPoint& b = p.at(cur);
            const ExactPoint& c = p.at(next);
            if (orientation(a, b, c) != Orientation::CCW) continue;
            bool blocked = false;
            for (int v : ring) {
                if (v == prev || v == cur || v == next) continue;
                const ExactPoint& q = p.at(v);
                if (point_in_open_triangle(q, a, b, c) || point_in_open_segment(q, a, c) ||
                    point_in_open_segment(q, a, b) || point_in_open_segment(q, b, c)) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;
            if (!p.boundary_adjacent(prev, next)) diags.push_back(make_diagonal(prev, next));
            ring.erase(ring.begin() + k);
            clipped = true;
            break;
        }
        if (!clipped) throw DomainError("InvalidInput", "ear clipping failed; polygon not simple?");
    }
    Triangulation t(p, std::move(diags));
    auto rep = t.validate();
    if (!rep.ok) throw DomainError("InvalidInput", "ear clipping produced invalid triangulation");
    return t;
}

Triangulation FlipSequence::replay(bool validate_each) const {
    Triangulation cur = start;
    for (const auto& d : flips) {
        try {
            cur = cur.flip(d);
        } catch (const DomainError& e) {
            throw DomainError("ReplayFailure", std::string("flip (") + std::to_string(d.first) +
                                                  "," + std::to_string(d.second) + "): " + e.what());
        }
        if (validate_each) {
            auto rep = cur.validate();
            if (!rep.ok) throw DomainError("ReplayFailure", "invalid intermediate triangulation");
        }
    }
    return cur;
}

std::vector<Triangulation> FlipSequence::states() const {
    std::vector<Triangulation> out;
    out.reserve(flips.size() + 1);
    out.push_back(start);
    for (const auto& d : flips) out.push_back(out.back().flip(d));
    return out;
}

}  // namespace flipforge
