#pragma once

#include <functional>
#include <optional>

#include "flipforge/triangulation.hpp"

namespace flipforge {

enum class SearchMode { UnidirectionalBfs, BidirectionalBfs };

struct SearchBudget {
    int max_depth = 1 << 20;
    std::size_t max_states = 1'000'000;
    SearchMode mode = SearchMode::BidirectionalBfs;
};

/// Budget with max_states taken from FLIPFORGE_MAX_STATES when set.
SearchBudget default_budget();

struct DistanceResult {
    std::optional<int> distance;
    std::optional<FlipSequence> witness;
    std::size_t states_expanded = 0;
    bool budget_exhausted = false;
};

/// All one-flip neighbors, ordered by the flipped diagonal.
std::vector<std::pair<Diagonal, Triangulation>> flip_neighbors(const Triangulation& t);

/// Exact flip distance with witness. Absent distance means budget exhaustion
/// (the flip graph of a polygon is connected), except under a restriction,
/// where it can also mean the restricted graph is disconnected.
DistanceResult flip_distance(const Triangulation& a, const Triangulation& b,
                             const SearchBudget& budget = default_budget());

/// Predicate over a face (sorted vertex triple); true = state is forbidden.
using TrianglePredicate = std::function<bool(int, int, int)>;

/// Distance in the flip graph minus all states containing a forbidden
/// triangle. Throws InvalidInput if a or b violates the restriction.
DistanceResult restricted_flip_distance(const Triangulation& a, const Triangulation& b,
                                        const TrianglePredicate& forbidden,
                                        const SearchBudget& budget = default_budget());

/// BFS closure of the flip graph. Throws CapExceeded beyond cap states.
std::vector<Triangulation> enumerate_all_triangulations(const SimplePolygon& p, std::size_t cap);

}  // namespace flipforge
