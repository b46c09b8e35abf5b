#pragma once

#include <stdexcept>
#include <string>

#include "flipforge/rat.hpp"

namespace flipforge {

/// Domain error carrying a machine-readable kind ("NotFlippable",
/// "PointNotInKernel", ...) next to the human-readable message.
class DomainError : public std::runtime_error {
  public:
    DomainError(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

  private:
    std::string kind_;
};

struct ExactPoint {
    Rat x;
    Rat y;

    bool operator==(const ExactPoint&) const = default;
};

enum class Orientation { CW = -1, Collinear = 0, CCW = 1 };

/// Sign of the 2x2 determinant of (q - p, r - p).
Orientation orientation(const ExactPoint& p, const ExactPoint& q, const ExactPoint& r);

/// Exact twice-signed-area determinant, when the sign alone is not enough.
Rat cross(const ExactPoint& p, const ExactPoint& q, const ExactPoint& r);

/// a,b,c,d in cyclic order. True iff every consecutive triple turns CCW;
/// any collinear triple means not strictly convex. Throws DegenerateInput
/// on coincident points.
bool is_strictly_convex_quad(const ExactPoint& a, const ExactPoint& b,
                             const ExactPoint& c, const ExactPoint& d);

/// Four distinct points in strictly convex position, in any order.
bool points_in_convex_position(const ExactPoint& a, const ExactPoint& b,
                               const ExactPoint& c, const ExactPoint& d);

/// True iff the open interiors of segments (p1,p2) and (q1,q2) intersect.
/// Touching at an endpoint does not count; collinear overlap does.
bool segments_properly_intersect(const ExactPoint& p1, const ExactPoint& p2,
                                 const ExactPoint& q1, const ExactPoint& q2);

/// True iff q lies strictly inside segment (a,b).
bool point_in_open_segment(const ExactPoint& q, const ExactPoint& a, const ExactPoint& b);

/// True iff q lies strictly inside triangle (a,b,c).
bool point_in_open_triangle(const ExactPoint& q, const ExactPoint& a,
                            const ExactPoint& b, const ExactPoint& c);

}  // namespace flipforge
