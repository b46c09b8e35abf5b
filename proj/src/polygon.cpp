#include "flipforge/polygon.hpp"

namespace flipforge {

SimplePolygon::SimplePolygon(std::vector<ExactPoint> vertices, std::vector<std::string> labels)
    : vertices_(std::move(vertices)), labels_(std::move(labels)) {
    if (labels_.empty()) labels_.resize(vertices_.size());
    if (labels_.size() != vertices_.size())
        throw DomainError("InvalidInput", "label count != vertex count");
}

int SimplePolygon::index_of_label(const std::string& l) const {
    for (int i = 0; i < size(); ++i)
        if (labels_[i] == l) return i;
    return -1;
}

bool SimplePolygon::boundary_adjacent(int i, int j) const {
    int n = size();
    return (i + 1) % n == j || (j + 1) % n == i;
}

ValidationReport SimplePolygon::validate() const {
    ValidationReport rep;
    int n = size();
    if (n < 3) {
        rep.fail("fewer than 3 vertices");
        return rep;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (vertices_[i] == vertices_[j])
                rep.fail("coincident vertices " + std::to_string(i) + "," + std::to_string(j));

    // Non-adjacent boundary edges must not intersect at all; adjacent ones
    // only at the shared vertex.
    for (int i = 0; i < n; ++i) {
        const ExactPoint& a1 = vertices_[i];
        const ExactPoint& a2 = vertices_[(i + 1) % n];
        for (int j = i + 1; j < n; ++j) {
            const ExactPoint& b1 = vertices_[j];
            const ExactPoint& b2 = vertices_[(j + 1) % n];
            if (segments_properly_intersect(a1, a2, b1, b2))
                rep.fail("edges " + std::to_string(i) + " and " + std::to_string(j) + " cross");
            bool adjacent_edges = (j == (i + 1) % n) || ((j + 1) % n == i);
            if (!adjacent_edges) {
                if (point_in_open_segment(b1, a1, a2) || point_in_open_segment(b2, a1, a2) ||
                    point_in_open_segment(a1, b1, b2) || point_in_open_segment(a2, b1, b2) ||
                    b1 == a1 || b1 == a2 || b2 == a1 || b2 == a2)
                    rep.fail("edges " + std::to_string(i) + " and " + std::to_string(j) + " touch");
            }
        }
    }

    // CCW orientation via signed area.
    Rat area2 = 0;
    for (int i = 0; i < n; ++i) {
        const ExactPoint& p = vertices_[i];
        const ExactPoint& q = vertices_[(i + 1) % n];
        area2 += p.x * q.y - q.x * p.y;
    }
    if (sign(area2) <= 0) rep.fail("boundary not counterclockwise");
    return rep;
}

bool SimplePolygon::contains_open(const ExactPoint& q) const {
    int n = size();
    for (int i = 0; i < n; ++i) {
        const ExactPoint& a = vertices_[i];
        const ExactPoint& b = vertices_[(i + 1) % n];
        if (q == a || point_in_open_segment(q, a, b)) return false;
    }
    // Crossing number with a rightward ray and half-open edge rule.
    int crossings = 0;
    for (int i = 0; i < n; ++i) {
        const ExactPoint& a = vertices_[i];
        const ExactPoint& b = vertices_[(i + 1) % n];
        if ((a.y > q.y) != (b.y > q.y)) {
            Rat xint = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (xint > q.x) ++crossings;
        }
    }
    return crossings % 2 == 1;
}

bool SimplePolygon::diagonal_ok(int i, int j) const {
    int n = size();
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) return false;
    if (boundary_adjacent(i, j)) return false;
    const ExactPoint& a = vertices_[i];
    const ExactPoint& b = vertices_[j];
    for (int k = 0; k < n; ++k) {
        const ExactPoint& e1 = vertices_[k];
        const ExactPoint& e2 = vertices_[(k + 1) % n];
        if (k == i || k == j || (k + 1) % n == i || (k + 1) % n == j) {
            // Edge shares an endpoint with the diagonal; only an interior
            // overlap can go wrong and the vertex-in-segment check below
            // covers the collinear case.
        } else if (segments_properly_intersect(a, b, e1, e2)) {
            return false;
        }
        if (k != i && k != j && point_in_open_segment(vertices_[k], a, b)) return false;
    }
    ExactPoint mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
    return contains_open(mid);
}

}  // namespace flipforge
