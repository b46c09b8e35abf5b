#include "flipforge/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace flipforge {

namespace {

std::string lbl(const char* prefix, long long i) { return prefix + std::to_string(i); }

long long rat_ceil(const Rat& q) {
    mpz_class z;
    mpz_cdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return z.get_si();
}

// strictly inside the wedge at chain end [i0, i1]
bool strictly_in_wedge(const DoubleChain& c, int i0, int i1, const ExactPoint& q) {
    return orientation(c.upper[i0], c.upper[i1], q) == Orientation::CW &&
           orientation(c.lower[i0], c.lower[i1], q) == Orientation::CCW;
}

bool strictly_in_hourglass(const DoubleChain& c, const ExactPoint& q) {
    int n = c.n;
    return strictly_in_wedge(c, 0, 1, q) || strictly_in_wedge(c, n - 2, n - 1, q);
}

}  // namespace

int grid_size(const SinkSet& s) {
    long long n = 2;
    for (const auto& p : s.sinks) n = std::max({n, p.x, p.y + 1});
    return static_cast<int>(n);
}

ReductionParams default_params(const SinkSet& s) {
    int big_n = static_cast<int>(s.size());
    return {2 * big_n, grid_size(s) * big_n, false};
}

SinkGadget embed_gadget_coordinates(const DoubleChain& big, const GridPoint& sink,
                                    const ReductionParams& params) {
    int beta = params.beta, d = params.d;
    long long j = beta * sink.y;  // gadget replaces l_j l_{j+1}
    if (sink.x < 1 || sink.y < 1 || beta * sink.x > big.n || j + 1 > big.n)
        throw DomainError("GadgetPlacementFailed", "sink outside the reachable grid");
    ExactPoint p0 = big.lower[j - 1];            // l_{beta y}
    ExactPoint p1 = big.lower[j];                // l_{beta y + 1}
    ExactPoint a = big.upper[beta * sink.x - 1];  // u_{beta x}
    ExactPoint m{(p0.x + p1.x) / 2, (p0.y + p1.y) / 2};

    Rat span = abs(a.x - m.x) + abs(a.y - m.y);
    long long K = 8 * (rat_ceil(span) + 1);
    long long xq = (d - 1) * (K + 1);
    Rat hc = rat(static_cast<long>(d) * d);
    Rat qc = rat(std::max<long long>(16LL * d * d * d, 8LL * d * (xq + 1)));
    DoubleChain canon = build_double_chain(d, hc, qc);
    Rat h = hc + rat(d - 1) * (d - 1) / (4 * qc);  // mouth half-gap

    ExactPoint ex{(a.x - m.x) / rat((d - 1) * K),
                  (a.y - m.y) / rat((d - 1) * K)};
    ExactPoint ey{(p0.x - p1.x) / (2 * h), (p0.y - p1.y) / (2 * h)};
    auto map = [&](const ExactPoint& c) {
        Rat dx = c.x - (d - 1);
        return ExactPoint{m.x + dx * ex.x + c.y * ey.x, m.y + dx * ex.y + c.y * ey.y};
    };

    SinkGadget g;
    g.sink = sink;
    g.chain.n = d;
    for (int i = 0; i < d; ++i) {
        g.chain.upper.push_back(map(canon.upper[i]));
        g.chain.lower.push_back(map(canon.lower[i]));
    }
    // exactness of the three anchor correspondences
    if (!(g.chain.upper[d - 1] == p0 && g.chain.lower[d - 1] == p1 &&
          map({rat(xq), rat(0)}) == a))
        throw DomainError("GadgetPlacementFailed", "affine map misses its anchors");
    if (!kernel_contains(g.chain, a) || !strictly_in_hourglass(g.chain, a))
        throw DomainError("GadgetPlacementFailed", "u_s not inside the gadget kernel");
    try {
        g.sub_polygon = polygon_PDp(g.chain, a);
    } catch (const DomainError& e) {
        throw DomainError("GadgetPlacementFailed", e.what());
    }

    auto& [xmin, xmax, ymin, ymax] = g.bin;
    xmin = xmax = p0.x;
    ymin = ymax = p0.y;
    for (const auto& side : {g.chain.upper, g.chain.lower})
        for (const auto& pt : side) {
            xmin = std::min(xmin, pt.x);
            xmax = std::max(xmax, pt.x);
            ymin = std::min(ymin, pt.y);
            ymax = std::max(ymax, pt.y);
        }
    return g;
}

PolyFlipInstance build_instance(const SinkSet& s, long long k) {
    return build_instance(s, k, default_params(s));
}

PolyFlipInstance build_instance(const SinkSet& s, long long k, const ReductionParams& params) {
    if (k < 1) throw DomainError("InvalidInput", "budget parameter k must be at least 1");
    if (s.sinks.empty()) throw DomainError("InvalidInput", "need at least one sink");
    for (const auto& p : s.sinks)
        if (p.x < 1 || p.y < 1)
            throw DomainError("InvalidInput", "reduction needs sinks with positive coordinates");
    {
        std::set<long long> ys;
        for (const auto& p : s.sinks)
            if (!ys.insert(p.y).second)
                throw DomainError("DuplicateYCoordinate", "YRSA sinks need distinct y");
    }
    ReductionParams defaults = default_params(s);
    if ((params.beta != defaults.beta || params.d != defaults.d) && !params.override_allowed)
        throw DomainError("InvalidInput", "non-default parameters require override_allowed");
    if (params.beta < 2 || params.beta % 2 != 0 || params.d < 2)
        throw DomainError("InvalidInput", "need even beta >= 2 and d >= 2");

    PolyFlipInstance inst;
    inst.params = params;
    inst.sinks = s;
    inst.k = k;
    inst.n = grid_size(s);
    int big_n = static_cast<int>(s.size());
    int beta = params.beta, d = params.d, g = beta * inst.n;
    inst.big = build_double_chain(g);
    inst.budget_l = 2LL * beta * k + (4LL * d - 2) * big_n;

    std::vector<GridPoint> order = s.sinks;
    std::sort(order.begin(), order.end(),
              [](const GridPoint& a, const GridPoint& b) { return a.y < b.y; });
    for (const auto& sink : order)
        inst.gadgets.push_back(embed_gadget_coordinates(inst.big, sink, params));

    // assemble P_D*: lower chain with gadget detours, apex, upper chain
    std::vector<ExactPoint> verts;
    std::vector<std::string> labels;
    std::vector<int> big_l(g + 1, -1), big_u(g + 1, -1);
    std::map<long long, int> gadget_at;  // beta*y -> gadget index
    for (std::size_t i = 0; i < inst.gadgets.size(); ++i)
        gadget_at[beta * inst.gadgets[i].sink.y] = static_cast<int>(i);
    std::vector<std::vector<int>> up_idx(inst.gadgets.size()), lo_idx(inst.gadgets.size());
    for (int j = 1; j <= g; ++j) {
        big_l[j] = static_cast<int>(verts.size());
        verts.push_back(inst.big.lower[j - 1]);
        labels.push_back(lbl("l", j));
        auto it = gadget_at.find(j);
        if (it == gadget_at.end()) continue;
        // detour below edge l_j l_{j+1}: gadget upper chain backward, then
        // lower chain forward; the chain-end vertices reuse l_j and l_{j+1}
        SinkGadget& gad = inst.gadgets[it->second];
        up_idx[it->second].assign(d, -1);
        lo_idx[it->second].assign(d, -1);
        up_idx[it->second][d - 1] = big_l[j];
        for (int i = d - 1; i >= 1; --i) {
            up_idx[it->second][i - 1] = static_cast<int>(verts.size());
            verts.push_back(gad.chain.upper[i - 1]);
            labels.push_back("s" + std::to_string(it->second) + "u" + std::to_string(i));
        }
        for (int i = 1; i <= d - 1; ++i) {
            lo_idx[it->second][i - 1] = static_cast<int>(verts.size());
            verts.push_back(gad.chain.lower[i - 1]);
            labels.push_back("s" + std::to_string(it->second) + "l" + std::to_string(i));
        }
    }
    inst.z = static_cast<int>(verts.size());
    verts.push_back(default_apex(inst.big));
    labels.push_back("p");
    for (int i = g; i >= 1; --i) {
        big_u[i] = static_cast<int>(verts.size());
        verts.push_back(inst.big.upper[i - 1]);
        labels.push_back(lbl("u", i));
    }
    inst.polygon = SimplePolygon(std::move(verts), std::move(labels));

    for (std::size_t gi = 0; gi < inst.gadgets.size(); ++gi) {
        SinkGadget& gad = inst.gadgets[gi];
        long long j = beta * gad.sink.y;
        gad.l_s = big_l[j];
        gad.l_s_prime = big_l[j + 1];
        lo_idx[gi][d - 1] = gad.l_s_prime;
        gad.u_s = big_u[beta * gad.sink.x];
        // sub-polygon order: l_1..l_d, p, u_d..u_1 (chain roles of gad.chain)
        gad.sub_to_big.clear();
        for (int i = 1; i <= d; ++i) gad.sub_to_big.push_back(lo_idx[gi][i - 1]);
        gad.sub_to_big.push_back(gad.u_s);
        for (int i = d; i >= 1; --i) gad.sub_to_big.push_back(up_idx[gi][i - 1]);
    }

    // T1/T2: fan at z on the big chain, extreme triangulations per gadget
    auto base = [&]() {
        std::vector<Diagonal> diags;
        for (int t = 1; t <= g - 1; ++t) {
            diags.push_back(make_diagonal(inst.z, big_u[t]));
            diags.push_back(make_diagonal(inst.z, big_l[t]));
        }
        return diags;
    };
    inst.t1_diagonals = base();
    inst.t2_diagonals = base();
    for (const auto& gad : inst.gadgets) {
        auto [tu, tl] = extreme_triangulations(gad.sub_polygon, ChainVariant::PDp);
        for (const auto& diag : tu.diagonals())
            inst.t1_diagonals.push_back(
                make_diagonal(gad.sub_to_big[diag.first], gad.sub_to_big[diag.second]));
        for (const auto& diag : tl.diagonals())
            inst.t2_diagonals.push_back(
                make_diagonal(gad.sub_to_big[diag.first], gad.sub_to_big[diag.second]));
    }
    std::sort(inst.t1_diagonals.begin(), inst.t1_diagonals.end());
    std::sort(inst.t2_diagonals.begin(), inst.t2_diagonals.end());
    return inst;
}

ValidationReport verify_instance(const PolyFlipInstance& inst) {
    ValidationReport rep;
    const SimplePolygon& poly = inst.polygon;
    int big_n = static_cast<int>(inst.sinks.size());
    int beta = inst.params.beta, d = inst.params.d, g = beta * inst.n;

    if (inst.params.beta < 2 || inst.params.beta % 2 != 0) rep.fail("beta must be even, >= 2");
    if (inst.params.d < 2) rep.fail("d must be >= 2");
    ReductionParams defaults = default_params(inst.sinks);
    if ((inst.params.beta != defaults.beta || inst.params.d != defaults.d) &&
        !inst.params.override_allowed)
        rep.fail("non-default parameters without override_allowed");

    if (poly.size() != 2 * g + 1 + big_n * (2 * d - 2)) rep.fail("vertex count formula violated");
    auto prep = poly.validate();
    for (const auto& r : prep.reasons) rep.fail("polygon: " + r);

    if (inst.budget_l != 2LL * beta * inst.k + (4LL * d - 2) * big_n)
        rep.fail("budget formula violated");

    for (const auto& t : {inst.T1(), inst.T2()}) {
        auto trep = t.validate();
        for (const auto& r : trep.reasons) rep.fail("triangulation: " + r);
    }
    if (!rep.ok) return rep;

    Triangulation t1 = inst.T1(), t2 = inst.T2();
    for (int t = 1; t <= g - 1; ++t) {
        int u = poly.index_of_label(lbl("u", t)), l = poly.index_of_label(lbl("l", t));
        if (u < 0 || l < 0 ||
            !t1.has_diagonal(make_diagonal(inst.z, u)) ||
            !t1.has_diagonal(make_diagonal(inst.z, l)) ||
            !t2.has_diagonal(make_diagonal(inst.z, u)) ||
            !t2.has_diagonal(make_diagonal(inst.z, l)))
            rep.fail("z-fan diagonal missing at position " + std::to_string(t));
    }

    for (std::size_t gi = 0; gi < inst.gadgets.size(); ++gi) {
        const SinkGadget& gad = inst.gadgets[gi];
        std::string tag = "gadget " + std::to_string(gi) + ": ";
        auto crep = validate_double_chain(gad.chain);
        for (const auto& r : crep.reasons) rep.fail(tag + r);
        const ExactPoint& us = poly.at(gad.u_s);
        if (!kernel_contains(gad.chain, us)) rep.fail(tag + "u_s outside the flip-kernel");
        if (!strictly_in_hourglass(gad.chain, us)) rep.fail(tag + "u_s outside the hourglass");
        std::set<int> own(gad.sub_to_big.begin(), gad.sub_to_big.end());
        for (int v = 0; v < poly.size(); ++v)
            if (!own.count(v) && strictly_in_hourglass(gad.chain, poly.at(v)))
                rep.fail(tag + "vertex " + poly.label(v) + " inside the hourglass");
        auto [tu, tl] = extreme_triangulations(gad.sub_polygon, ChainVariant::PDp);
        for (const auto& diag : tu.diagonals())
            if (!t1.has_diagonal(
                    make_diagonal(gad.sub_to_big[diag.first], gad.sub_to_big[diag.second])))
                rep.fail(tag + "T1 is not upper-extreme");
        for (const auto& diag : tl.diagonals())
            if (!t2.has_diagonal(
                    make_diagonal(gad.sub_to_big[diag.first], gad.sub_to_big[diag.second])))
                rep.fail(tag + "T2 is not lower-extreme");
        for (std::size_t gj = gi + 1; gj < inst.gadgets.size(); ++gj) {
            const auto& a = gad.bin;
            const auto& b = inst.gadgets[gj].bin;
            if (!(a[1] < b[0] || b[1] < a[0] || a[3] < b[2] || b[3] < a[2]))
                rep.fail(tag + "bin overlaps gadget " + std::to_string(gj));
        }
    }
    return rep;
}

std::size_t coordinate_bits(const PolyFlipInstance& inst) {
    std::size_t bits = 0;
    for (const auto& v : inst.polygon.vertices())
        bits = std::max({bits, rat_bits(v.x), rat_bits(v.y)});
    return bits;
}

}  // namespace flipforge
