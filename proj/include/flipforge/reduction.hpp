#pragma once

#include <array>

#include "flipforge/double_chain.hpp"
#include "flipforge/rsa.hpp"

namespace flipforge {

struct ReductionParams {
    int beta = 0;  // even, >= 2
    int d = 0;     // >= 2
    bool override_allowed = false;
};

/// beta = 2N, d = nN on the smallest 1-based n x n grid holding the sinks
/// (n >= 2; a gadget needs the lower edge l_{beta y} l_{beta y + 1}).
ReductionParams default_params(const SinkSet& s);

/// The grid size n used by default_params.
int grid_size(const SinkSet& s);

struct SinkGadget {
    GridPoint sink;
    /// World coordinates; chain roles follow the canonical template:
    /// upper ends at l_{beta y}, lower at l_{beta y + 1}.
    DoubleChain chain;
    int l_s = -1;        // polygon index of l_{beta y}
    int l_s_prime = -1;  // polygon index of l_{beta y + 1}
    int u_s = -1;        // polygon index of u_{beta x}
    std::array<Rat, 4> bin;  // xmin, xmax, ymin, ymax bounding the gadget
    SimplePolygon sub_polygon;     // P_{D_s}^{u_s}, labels l1..ld, p, ud..u1
    std::vector<int> sub_to_big;   // sub-polygon index -> polygon index
};

struct PolyFlipInstance {
    SimplePolygon polygon;  // P_D*
    std::vector<Diagonal> t1_diagonals, t2_diagonals;
    long long budget_l = 0;
    ReductionParams params;
    std::vector<SinkGadget> gadgets;  // sorted by sink y
    int z = -1;                       // index of the apex vertex (label "p")

    SinkSet sinks;  // original instance
    long long k = 0;
    int n = 0;
    DoubleChain big;  // the beta*n double chain

    Triangulation T1() const { return Triangulation(polygon, t1_diagonals); }
    Triangulation T2() const { return Triangulation(polygon, t2_diagonals); }
    /// P_D^+: the big chain plus apex, without the gadgets.
    SimplePolygon plus_polygon() const { return polygon_PDp(big, polygon.at(z)); }
};

/// The gadget chain for one sink: a det-positive affine image of the
/// canonical flat double chain whose mouth spans l_{beta y} l_{beta y+1}
/// and whose axis point (x_q, 0) maps exactly onto u_{beta x}.
/// Indices into the full polygon are filled in by build_instance.
/// Throws GadgetPlacementFailed.
SinkGadget embed_gadget_coordinates(const DoubleChain& big, const GridPoint& sink,
                                    const ReductionParams& params);

/// Full Theorem 4 instance: P_D*, z-fan + extreme-gadget triangulations
/// T1/T2, and budget l = 2 beta k + (4d-2) N. Throws DuplicateYCoordinate,
/// GadgetPlacementFailed, InvalidInput (nonpositive sink coordinates or
/// k < 1, or non-default params without override_allowed).
PolyFlipInstance build_instance(const SinkSet& s, long long k, const ReductionParams& params);
PolyFlipInstance build_instance(const SinkSet& s, long long k);

/// All structural checks: polygon simplicity, vertex count, T1/T2 validity,
/// z-fan shape, per-gadget double-chain validity, kernel membership and
/// hourglass uniqueness of u_s, bin disjointness, budget formula.
ValidationReport verify_instance(const PolyFlipInstance& inst);

/// Largest numerator/denominator bit length over all polygon coordinates.
std::size_t coordinate_bits(const PolyFlipInstance& inst);

}  // namespace flipforge
