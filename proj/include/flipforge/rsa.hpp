#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "flipforge/polygon.hpp"

namespace flipforge {

struct GridPoint {
    long long x = 0;
    long long y = 0;
    auto operator<=>(const GridPoint&) const = default;
};

/// Axis-parallel segment with integer endpoints, normalized a < b and
/// nonzero length.
struct Segment {
    GridPoint a, b;
    auto operator<=>(const Segment&) const = default;

    bool horizontal() const { return a.y == b.y; }
    long long length() const { return (b.x - a.x) + (b.y - a.y); }
};

/// Throws DegenerateInput on zero-length or skew input.
Segment make_segment(GridPoint p, GridPoint q);

struct SinkSet {
    std::vector<GridPoint> sinks;

    std::size_t size() const { return sinks.size(); }
};

/// Nonnegative, distinct; with yrsa also pairwise distinct y-coordinates.
ValidationReport validate_sinks(const SinkSet& s, bool yrsa);

struct Arborescence {
    std::vector<Segment> segments;  // sorted
};

long long length(const Arborescence& a);

/// All §2 RSA conditions: segments meet only at endpoints, the union is a
/// tree rooted at the origin, every edge points north or east away from the
/// root, every leaf is a sink and every sink is a segment endpoint.
ValidationReport validate_arborescence(const Arborescence& a, const SinkSet& s);

/// Merges axis-parallel edges into maximal segments, breaking at junctions,
/// direction changes, sinks, and the origin.
Arborescence arborescence_from_edges(const std::vector<Segment>& edges, const SinkSet& s);

/// Every segment lies on a grid line through a sink or the origin.
bool is_on_hanan_grid(const Arborescence& a, const SinkSet& s);

/// §2 slide of a vertical segment e to the right: translate a copy until it
/// hits a sink or segment endpoint, reroute around the swept rectangle,
/// prune dead branches. Throws PreconditionViolated.
Arborescence slide_right(const Arborescence& a, const SinkSet& s, const Segment& e);

/// Mirror image of slide_right for a horizontal segment.
Arborescence slide_up(const Arborescence& a, const SinkSet& s, const Segment& e);

/// Minimum-length RSA via bitmask DP over the Hanan grid. Deterministic.
/// Throws TooManySinks above the cap.
Arborescence solve_exact(const SinkSet& s, int max_sinks = 10);

/// Optimal length by exhaustive union of per-sink monotone Hanan paths.
/// Throws TooLarge when the enumeration would explode.
long long brute_force_oracle(const SinkSet& s);

/// Theorem 2 map: sink (x_i, y_i) -> (x_i N^4, y_i N^4 + i), budget
/// k -> k N^4 + N^3. The image is a YRSA instance.
std::pair<SinkSet, long long> perturb_to_yrsa(const SinkSet& s, long long k);

}  // namespace flipforge
