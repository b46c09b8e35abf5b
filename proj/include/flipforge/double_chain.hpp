#pragma once

#include "flipforge/triangulation.hpp"

namespace flipforge {

/// Two flat, nearly-parallel chains of n vertices each, curving away from
/// each other just enough that any quadrilateral on three same-chain
/// vertices is non-convex.
struct DoubleChain {
    int n = 0;
    std::vector<ExactPoint> upper;  // u_1 .. u_n, left to right
    std::vector<ExactPoint> lower;  // l_1 .. l_n
};

/// Canonical coordinates: u_i = (i-1, H + (i-1-c)^2/Q) with c = (n-1)/2,
/// lower chain mirrored, H = n^2, Q = 16 n^3.
DoubleChain build_double_chain(int n);

/// Same shape with explicit half-gap H and flatness Q (larger Q = flatter).
DoubleChain build_double_chain(int n, const Rat& H, const Rat& Q);

/// Both §3 invariants, checked by exact predicates.
ValidationReport validate_double_chain(const DoubleChain& d);

/// Boundary <l_1..l_n, u_n..u_1> with labels "l1".."ln", "un".."u1".
SimplePolygon polygon_PD(const DoubleChain& d);

/// Boundary <l_1..l_n, p, u_n..u_1>; p labeled "p". Throws PointNotInKernel
/// unless p is in the flip-kernel and strictly right of directed line l_n u_n.
SimplePolygon polygon_PDp(const DoubleChain& d, const ExactPoint& p);

/// A canonical valid apex choice, (n, 0).
ExactPoint default_apex(const DoubleChain& d);

/// Closed intersection of the four kernel half-planes.
bool kernel_contains(const DoubleChain& d, const ExactPoint& q);

/// W = W_1 ∪ W_n, the union of the two boundary wedges.
bool hourglass_contains(const DoubleChain& d, const ExactPoint& q);

enum class ChainVariant { PD, PDp };

/// (T_u, T_l): the triangulation fanning out of u_1 and its mirror.
std::pair<Triangulation, Triangulation> extreme_triangulations(const SimplePolygon& p,
                                                               ChainVariant variant);

/// The 4n-4 schedule from T_u to T_l of P_D^p: lift every chain-triangle
/// apex to p, then lower every apex onto the other chain. Throws
/// ConstructionFailed if the schedule does not replay to T_l.
FlipSequence explicit_pdp_sequence(const SimplePolygon& pdp);

}  // namespace flipforge
