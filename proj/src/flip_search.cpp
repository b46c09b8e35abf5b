#include "flipforge/flip_search.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>

namespace flipforge {

SearchBudget default_budget() {
    SearchBudget b;
    if (const char* env = std::getenv("FLIPFORGE_MAX_STATES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v >= 1) b.max_states = static_cast<std::size_t>(v);
    }
    return b;
}

std::vector<std::pair<Diagonal, Triangulation>> flip_neighbors(const Triangulation& t) {
    std::vector<std::pair<Diagonal, Triangulation>> out;
    for (const auto& d : t.diagonals())
        if (t.flippable(d)) out.emplace_back(d, t.flip(d));
    return out;
}

namespace {

using StateFilter = std::function<bool(const Triangulation&)>;

struct Node {
    Triangulation state;
    std::string parent;  // empty at the root
    Diagonal via{-1, -1};  // diagonal flipped in the parent to reach this state
    int depth = 0;
};

using Tree = std::map<std::string, Node>;

/// The diagonal of `from` whose flip yields `to` (they differ in one element).
Diagonal step_diagonal(const Triangulation& from, const Triangulation& to) {
    for (const auto& d : from.diagonals())
        if (!to.has_diagonal(d)) return d;
    throw DomainError("InvalidInput", "triangulations do not differ by one flip");
}

std::vector<Diagonal> path_from_root(const Tree& tree, const std::string& key) {
    std::vector<Diagonal> flips;
    std::string cur = key;
    while (!tree.at(cur).parent.empty()) {
        const Node& node = tree.at(cur);
        flips.push_back(node.via);
        cur = node.parent;
    }
    std::reverse(flips.begin(), flips.end());
    return flips;
}

FlipSequence build_witness(const Triangulation& a, const Tree& fwd, const Tree& bwd,
                           const std::string& meet) {
    FlipSequence seq{a, path_from_root(fwd, meet)};
    std::string cur = meet;
    while (!bwd.at(cur).parent.empty()) {
        const Node& node = bwd.at(cur);
        seq.flips.push_back(step_diagonal(node.state, bwd.at(node.parent).state));
        cur = node.parent;
    }
    return seq;
}

/// Expands one BFS level. Returns the new frontier; appends meet keys found
/// in the opposite tree.
std::vector<std::string> expand_level(Tree& tree, const std::vector<std::string>& frontier,
                                      const Tree& other, const StateFilter& blocked,
                                      std::size_t& states_expanded,
                                      std::vector<std::string>& meets) {
    std::vector<std::string> next;
    for (const auto& key : frontier) {
        const Node node = tree.at(key);
        ++states_expanded;
        for (const auto& [d, nb] : flip_neighbors(node.state)) {
            std::string nk = nb.canonical_key();
            if (tree.count(nk)) continue;
            if (blocked && blocked(nb)) continue;
            tree.emplace(nk, Node{nb, key, d, node.depth + 1});
            next.push_back(nk);
            if (other.count(nk)) meets.push_back(nk);
        }
    }
    std::sort(next.begin(), next.end());
    return next;
}

DistanceResult search(const Triangulation& a, const Triangulation& b, const SearchBudget& budget,
                      const StateFilter& blocked) {
    if (&a.polygon() != &b.polygon() && !(a.polygon().vertices() == b.polygon().vertices()))
        throw DomainError("InvalidInput", "triangulations of different polygons");
    DistanceResult res;
    std::string ka = a.canonical_key(), kb = b.canonical_key();
    if (ka == kb) {
        res.distance = 0;
        res.witness = FlipSequence{a, {}};
        return res;
    }

    Tree fwd, bwd;
    fwd.emplace(ka, Node{a, "", {-1, -1}, 0});
    bwd.emplace(kb, Node{b, "", {-1, -1}, 0});
    std::vector<std::string> ffront{ka}, bfront{kb};
    bool bidirectional = budget.mode == SearchMode::BidirectionalBfs;
    int fdepth = 0, bdepth = 0;
    std::vector<std::string> meets;

    while (meets.empty()) {
        if (ffront.empty() || bfront.empty()) return res;  // restricted graph disconnected
        if (fdepth + bdepth >= budget.max_depth ||
            res.states_expanded + ffront.size() > budget.max_states) {
            res.budget_exhausted = true;
            return res;
        }
        bool forward = !bidirectional || ffront.size() <= bfront.size();
        if (forward) {
            ffront = expand_level(fwd, ffront, bwd, blocked, res.states_expanded, meets);
            ++fdepth;
        } else {
            bfront = expand_level(bwd, bfront, fwd, blocked, res.states_expanded, meets);
            ++bdepth;
        }
    }

    int best = -1;
    std::string best_key;
    for (const auto& k : meets) {
        int total = fwd.at(k).depth + bwd.at(k).depth;
        if (best < 0 || total < best || (total == best && k < best_key)) {
            best = total;
            best_key = k;
        }
    }
    res.distance = best;
    res.witness = build_witness(a, fwd, bwd, best_key);
    return res;
}

bool has_forbidden_triangle(const Triangulation& t, const TrianglePredicate& forbidden) {
    for (const auto& tri : t.triangles())
        if (forbidden(tri[0], tri[1], tri[2])) return true;
    return false;
}

}  // namespace

DistanceResult flip_distance(const Triangulation& a, const Triangulation& b,
                             const SearchBudget& budget) {
    return search(a, b, budget, nullptr);
}

DistanceResult restricted_flip_distance(const Triangulation& a, const Triangulation& b,
                                        const TrianglePredicate& forbidden,
                                        const SearchBudget& budget) {
    if (has_forbidden_triangle(a, forbidden) || has_forbidden_triangle(b, forbidden))
        throw DomainError("InvalidInput", "endpoint contains a forbidden triangle");
    return search(a, b, budget, [&forbidden](const Triangulation& t) {
        return has_forbidden_triangle(t, forbidden);
    });
}

std::vector<Triangulation> enumerate_all_triangulations(const SimplePolygon& p, std::size_t cap) {
    if (cap < 1) throw DomainError("InvalidInput", "cap must be at least 1");
    Triangulation seed = ear_clipping_triangulation(p);
    std::map<std::string, Triangulation> seen;
    std::deque<Triangulation> queue;
    seen.emplace(seed.canonical_key(), seed);
    queue.push_back(seed);
    while (!queue.empty()) {
        Triangulation cur = queue.front();
        queue.pop_front();
        for (const auto& [d, nb] : flip_neighbors(cur)) {
            std::string k = nb.canonical_key();
            if (seen.count(k)) continue;
            if (seen.size() + 1 > cap)
                throw DomainError("CapExceeded", "more than " + std::to_string(cap) +
                                                     " triangulations");
            seen.emplace(k, nb);
            queue.push_back(nb);
        }
    }
    std::vector<Triangulation> out;
    out.reserve(seen.size());
    for (auto& [k, t] : seen) out.push_back(std::move(t));
    return out;
}

}  // namespace flipforge
