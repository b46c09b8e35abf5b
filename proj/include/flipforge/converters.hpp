#pragma once

#include <memory>

#include "flipforge/chain_path.hpp"
#include "flipforge/reduction.hpp"

namespace flipforge {

/// How the flips of a decomposed sequence distributed over the projections.
/// Every flip lands in exactly one bucket.
struct DecomposeDiagnostics {
    long long projected_plus = 0;  // flips surviving in sigma1
    long long projected_sink = 0;  // flips surviving in some sigma_s
    long long silent = 0;          // flips affecting no projection
};

/// Projections of a flip sequence on P_D* onto P_D^+ and the gadget
/// polygons. sigma1 lives on plus_poly (owned here); per_sink[i] lives on
/// inst.gadgets[i].sub_polygon, so inst must outlive this object.
struct Decomposition {
    std::shared_ptr<SimplePolygon> plus_poly;
    FlipSequence sigma1;
    std::vector<FlipSequence> per_sink;
    DecomposeDiagnostics diag;
};

/// Depth-first schedule: walk A on the beta-scaled grid, opening each sink
/// gadget on arrival (1 flip east, the 4d-4 gadget schedule, 1 flip back),
/// padded at the root to exactly 2*beta*length(A) + (4d-2)*N flips.
/// Replays from T1 to T2 and visits every sink. Throws InvalidArborescence,
/// ReplayFailure.
FlipSequence rsa_to_flips(const Arborescence& a, const PolyFlipInstance& inst);

/// Projects each state of seq; consecutive distinct projections differ by
/// one flip, and no flip moves two projections. Requires seq to run from T1
/// to T2 with |seq| < (d-1)^2 (else BudgetTooLarge). Throws InvalidInput,
/// ConstructionFailed.
Decomposition decompose_flip_sequence(const FlipSequence& seq, const PolyFlipInstance& inst);

/// Full pipeline: decompose, trace sigma1, eliminate boxes, shortest-path
/// tree, snap to the scaled Hanan grid, contract coordinates back to the
/// n x n grid. Returns a valid arborescence for inst's sink set. Throws
/// BudgetTooLarge, PipelineFailure (with the failing stage in the message).
Arborescence flips_to_rsa(const FlipSequence& seq, const PolyFlipInstance& inst);

}  // namespace flipforge
