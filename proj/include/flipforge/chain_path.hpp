#pragma once

#include <set>

#include "flipforge/rsa.hpp"
#include "flipforge/triangulation.hpp"

namespace flipforge {

/// Monotone lattice path c_1 .. c_m starting at the root (1,1); consecutive
/// points differ by one unit step north or east.
struct ChainPath {
    std::vector<GridPoint> points;

    const GridPoint& b() const { return points.back(); }
    bool at_root() const { return points.size() == 1; }
    bool operator==(const ChainPath&) const = default;
};

enum class FlipClass { ExtendNorth, ExtendEast, Shorten, BendFlip, Other };

/// Chain size g of a polygon shaped <l_1..l_g, p, u_g..u_1>, identified by
/// its labels. Throws WrongPolygon.
int plus_chain_size(const SimplePolygon& p);

/// The chain edges (u_v, l_w) of T in crossing order, mapped to (v, w).
/// Throws WrongPolygon.
ChainPath chain_path_of(const Triangulation& t);

/// The unique triangulation whose chain path is cp: one chain edge per path
/// point, everything right of the last one fanned at the apex.
/// Throws PathOutOfRange.
Triangulation triangulation_of(const ChainPath& cp, const SimplePolygon& p);

/// Effect of flipping d on the chain path. Throws NotADiagonal/NotFlippable.
FlipClass classify_flip(const Triangulation& t, const Diagonal& d);

/// Unit grid segments plus unit boxes (stored by lower-left corner).
struct Trace {
    std::set<Segment> edges;
    std::set<GridPoint> boxes;

    bool operator==(const Trace&) const = default;
};

/// Connected, contains the root (1,1) unless empty, x- and y-monotone path
/// to the root from every grid point, no edge coincides with a box side.
ValidationReport validate_trace(const Trace& r);

/// Inserts a box and drops any edge coinciding with one of its sides.
void add_box(Trace& r, const GridPoint& lower_left);

/// True iff q is an edge endpoint or box corner of r.
bool trace_covers(const Trace& r, const GridPoint& q);

/// Accumulates the edges of extend flips and the boxes of bend flips over a
/// sequence that starts and ends at the root chain path; edges coinciding
/// with box sides are removed at the end. Throws NotATraversal.
Trace trace_of(const FlipSequence& seq);

/// 2 per edge; 1 plus the number of boundary sides per box.
long long cost(const Trace& r);

/// A box-free trace covering the same sinks with no larger cost. Sinks are
/// in trace coordinates and must have even coordinates (throws
/// OddSinkCoordinate). Local rewrites first; if they stall, a verified
/// exact-solver fallback replaces the trace.
Trace eliminate_boxes(const Trace& r, const SinkSet& scaled);

/// Union of shortest root-to-sink paths in a box-free trace, translated by
/// (-1,-1) so the root becomes the origin. Throws SinkNotCovered.
Arborescence shortest_path_tree(const Trace& r, const SinkSet& scaled);

/// True iff some state of seq contains the triangle
/// u_{beta x} l_{beta y} l_{beta y + 1}.
bool visits(const FlipSequence& seq, const GridPoint& sink, int beta);

}  // namespace flipforge
