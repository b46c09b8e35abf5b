#include "flipforge/geometry.hpp"

namespace flipforge {

Rat cross(const ExactPoint& p, const ExactPoint& q, const ExactPoint& r) {
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

Orientation orientation(const ExactPoint& p, const ExactPoint& q, const ExactPoint& r) {
    switch (sign(cross(p, q, r))) {
        case 1: return Orientation::CCW;
        case -1: return Orientation::CW;
        default: return Orientation::Collinear;
    }
}

bool is_strictly_convex_quad(const ExactPoint& a, const ExactPoint& b,
                             const ExactPoint& c, const ExactPoint& d) {
    const ExactPoint* pts[4] = {&a, &b, &c, &d};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (*pts[i] == *pts[j])
                throw DomainError("DegenerateInput", "coincident quad vertices");
    for (int i = 0; i < 4; ++i) {
        if (orientation(*pts[i], *pts[(i + 1) % 4], *pts[(i + 2) % 4]) != Orientation::CCW)
            return false;
    }
    return true;
}

bool points_in_convex_position(const ExactPoint& a, const ExactPoint& b,
                               const ExactPoint& c, const ExactPoint& d) {
    // Try both cyclic orders that keep 'a' first; one of them is the hull
    // order iff the points are in strictly convex position.
    auto convex_either_way = [](const ExactPoint& p, const ExactPoint& q,
                                const ExactPoint& r, const ExactPoint& s) {
        try {
            return is_strictly_convex_quad(p, q, r, s) || is_strictly_convex_quad(p, s, r, q);
        } catch (const DomainError&) {
            return false;
        }
    };
    return convex_either_way(a, b, c, d) || convex_either_way(a, c, b, d) ||
           convex_either_way(a, b, d, c);
}

bool point_in_open_segment(const ExactPoint& q, const ExactPoint& a, const ExactPoint& b) {
    if (orientation(a, b, q) != Orientation::Collinear) return false;
    if (a.x != b.x) return (q.x > a.x) != (q.x > b.x) && q.x != a.x && q.x != b.x;
    return (q.y > a.y) != (q.y > b.y) && q.y != a.y && q.y != b.y;
}

bool point_in_open_triangle(const ExactPoint& q, const ExactPoint& a,
                            const ExactPoint& b, const ExactPoint& c) {
    int s1 = sign(cross(a, b, q));
    int s2 = sign(cross(b, c, q));
    int s3 = sign(cross(c, a, q));
    return s1 != 0 && s1 == s2 && s2 == s3;
}

bool segments_properly_intersect(const ExactPoint& p1, const ExactPoint& p2,
                                 const ExactPoint& q1, const ExactPoint& q2) {
    int o1 = sign(cross(p1, p2, q1));
    int o2 = sign(cross(p1, p2, q2));
    int o3 = sign(cross(q1, q2, p1));
    int o4 = sign(cross(q1, q2, p2));

    if (o1 * o2 < 0 && o3 * o4 < 0) return true;

    // A T-junction or shared endpoint never makes the *interiors* meet, so
    // the only remaining positive case is collinear overlap.
    if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
        // All collinear: check 1D overlap of interiors.
        auto lo = [](const ExactPoint& u, const ExactPoint& v) { return u.x < v.x || (u.x == v.x && u.y < v.y); };
        const ExactPoint *a = &p1, *b = &p2, *c = &q1, *d = &q2;
        if (lo(*b, *a)) std::swap(a, b);
        if (lo(*d, *c)) std::swap(c, d);
        const ExactPoint* lo_end = lo(*a, *c) ? c : a;
        const ExactPoint* hi_end = lo(*b, *d) ? b : d;
        return lo(*lo_end, *hi_end);
    }
    return false;
}

}  // namespace flipforge
