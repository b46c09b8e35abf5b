#include "flipforge/double_chain.hpp"

namespace flipforge {

namespace {

std::string lbl(const char* chain, int i) { return chain + std::to_string(i); }

// q weakly below the directed line a->b, where a is left of b.
bool weakly_below(const ExactPoint& a, const ExactPoint& b, const ExactPoint& q) {
    return orientation(a, b, q) != Orientation::CCW;
}
bool weakly_above(const ExactPoint& a, const ExactPoint& b, const ExactPoint& q) {
    return orientation(a, b, q) != Orientation::CW;
}

int label_index(const SimplePolygon& p, const std::string& l) {
    int i = p.index_of_label(l);
    if (i < 0) throw DomainError("InvalidInput", "polygon lacks labeled vertex " + l);
    return i;
}

}  // namespace

DoubleChain build_double_chain(int n, const Rat& H, const Rat& Q) {
    if (n < 2) throw DomainError("InvalidInput", "chain needs at least 2 vertices");
    DoubleChain d;
    d.n = n;
    Rat c = Rat(n - 1) / 2;
    for (int i = 0; i < n; ++i) {
        Rat x(i);
        Rat bulge = (x - c) * (x - c) / Q;
        d.upper.push_back({x, H + bulge});
        d.lower.push_back({x, -H - bulge});
    }
    return d;
}

DoubleChain build_double_chain(int n) {
    Rat nn(n);
    return build_double_chain(n, nn * nn, 16 * nn * nn * nn);
}

ValidationReport validate_double_chain(const DoubleChain& d) {
    ValidationReport rep;
    int n = d.n;
    if (static_cast<int>(d.upper.size()) != n || static_cast<int>(d.lower.size()) != n) {
        rep.fail("chain length mismatch");
        return rep;
    }
    SimplePolygon pd = polygon_PD(d);
    auto prep = pd.validate();
    if (!prep.ok) {
        for (const auto& r : prep.reasons) rep.fail("P_D: " + r);
        return rep;
    }
    // cross-chain visibility: every l_i u_j is a boundary edge or a diagonal
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int li = i, uj = 2 * n - 1 - j;
            if (!pd.boundary_adjacent(li, uj) && !pd.diagonal_ok(li, uj))
                rep.fail("l" + std::to_string(i + 1) + " does not see u" + std::to_string(j + 1));
        }
    // three same-chain vertices plus one of the other chain: never convex
    auto check_triples = [&](const std::vector<ExactPoint>& same,
                             const std::vector<ExactPoint>& other, const char* name) {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    for (int o = 0; o < n; ++o)
                        if (points_in_convex_position(same[a], same[b], same[c], other[o]))
                            rep.fail(std::string("convex quad on ") + name + " triple " +
                                     std::to_string(a + 1) + "," + std::to_string(b + 1) + "," +
                                     std::to_string(c + 1) + " + " + std::to_string(o + 1));
    };
    check_triples(d.upper, d.lower, "upper");
    check_triples(d.lower, d.upper, "lower");
    return rep;
}

SimplePolygon polygon_PD(const DoubleChain& d) {
    std::vector<ExactPoint> v;
    std::vector<std::string> labels;
    for (int i = 0; i < d.n; ++i) {
        v.push_back(d.lower[i]);
        labels.push_back(lbl("l", i + 1));
    }
    for (int i = d.n - 1; i >= 0; --i) {
        v.push_back(d.upper[i]);
        labels.push_back(lbl("u", i + 1));
    }
    return SimplePolygon(std::move(v), std::move(labels));
}

SimplePolygon polygon_PDp(const DoubleChain& d, const ExactPoint& p) {
    if (!kernel_contains(d, p) ||
        orientation(d.lower[d.n - 1], d.upper[d.n - 1], p) != Orientation::CW)
        throw DomainError("PointNotInKernel", "apex not in flip-kernel right of l_n u_n");
    std::vector<ExactPoint> v;
    std::vector<std::string> labels;
    for (int i = 0; i < d.n; ++i) {
        v.push_back(d.lower[i]);
        labels.push_back(lbl("l", i + 1));
    }
    v.push_back(p);
    labels.push_back("p");
    for (int i = d.n - 1; i >= 0; --i) {
        v.push_back(d.upper[i]);
        labels.push_back(lbl("u", i + 1));
    }
    SimplePolygon poly(std::move(v), std::move(labels));
    auto rep = poly.validate();
    if (!rep.ok) throw DomainError("PointNotInKernel", "apex breaks polygon simplicity");
    return poly;
}

ExactPoint default_apex(const DoubleChain& d) { return {Rat(d.n), Rat(0)}; }

bool kernel_contains(const DoubleChain& d, const ExactPoint& q) {
    int n = d.n;
    return weakly_below(d.upper[0], d.upper[1], q) &&
           weakly_below(d.upper[n - 2], d.upper[n - 1], q) &&
           weakly_above(d.lower[0], d.lower[1], q) &&
           weakly_above(d.lower[n - 2], d.lower[n - 1], q);
}

bool hourglass_contains(const DoubleChain& d, const ExactPoint& q) {
    int n = d.n;
    bool w1 = weakly_below(d.upper[0], d.upper[1], q) && weakly_above(d.lower[0], d.lower[1], q);
    bool wn = weakly_below(d.upper[n - 2], d.upper[n - 1], q) &&
              weakly_above(d.lower[n - 2], d.lower[n - 1], q);
    return w1 || wn;
}

std::pair<Triangulation, Triangulation> extreme_triangulations(const SimplePolygon& p,
                                                               ChainVariant variant) {
    int size = p.size();
    int n = variant == ChainVariant::PD ? size / 2 : (size - 1) / 2;
    auto u = [&](int i) { return label_index(p, lbl("u", i)); };
    auto l = [&](int i) { return label_index(p, lbl("l", i)); };
    std::vector<Diagonal> tu, tl;
    for (int j = 2; j <= n; ++j) {
        tu.push_back(make_diagonal(u(1), l(j)));
        tl.push_back(make_diagonal(l(1), u(j)));
    }
    for (int i = 2; i <= n - 1; ++i) {
        tu.push_back(make_diagonal(u(i), l(n)));
        tl.push_back(make_diagonal(l(i), u(n)));
    }
    if (variant == ChainVariant::PDp) {
        tu.push_back(make_diagonal(u(n), l(n)));
        tl.push_back(make_diagonal(u(n), l(n)));
    }
    return {Triangulation(p, std::move(tu)), Triangulation(p, std::move(tl))};
}

FlipSequence explicit_pdp_sequence(const SimplePolygon& pdp) {
    int n = (pdp.size() - 1) / 2;
    auto u = [&](int i) { return label_index(pdp, lbl("u", i)); };
    auto l = [&](int i) { return label_index(pdp, lbl("l", i)); };
    int p = label_index(pdp, "p");
    auto [tu, tl] = extreme_triangulations(pdp, ChainVariant::PDp);

    std::vector<Diagonal> flips;
    for (int i = n; i >= 2; --i) flips.push_back(make_diagonal(u(i), l(n)));
    for (int j = n; j >= 2; --j) flips.push_back(make_diagonal(u(1), l(j)));
    for (int i = 1; i <= n - 1; ++i) flips.push_back(make_diagonal(u(i), p));
    for (int j = 1; j <= n - 1; ++j) flips.push_back(make_diagonal(l(j), p));

    FlipSequence seq{tu, std::move(flips)};
    try {
        Triangulation end = seq.replay(true);
        if (end.canonical_key() != tl.canonical_key())
            throw DomainError("ConstructionFailed", "schedule does not end at T_l");
    } catch (const DomainError& e) {
        if (e.kind() == "ConstructionFailed") throw;
        throw DomainError("ConstructionFailed", e.what());
    }
    return seq;
}

}  // namespace flipforge
