#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flipforge/polygon.hpp"

namespace flipforge {

/// Unordered vertex-index pair, stored with first < second.
using Diagonal = std::pair<int, int>;

inline Diagonal make_diagonal(int i, int j) {
    return i < j ? Diagonal{i, j} : Diagonal{j, i};
}

/// A triangulation of a simple polygon as a set of non-crossing diagonals.
/// Persistent value: flip() returns a new triangulation. The polygon must
/// outlive every triangulation referencing it.
class Triangulation {
  public:
    Triangulation(const SimplePolygon& polygon, std::vector<Diagonal> diagonals);

    const SimplePolygon& polygon() const { return *poly_; }
    const std::vector<Diagonal>& diagonals() const { return diags_; }

    bool has_diagonal(const Diagonal& d) const;
    /// Boundary edge or diagonal.
    bool has_edge(int i, int j) const;
    bool has_triangle(int a, int b, int c) const;

    /// All checks from the module invariants; never throws, reports reasons.
    ValidationReport validate() const;

    /// The faces, as sorted index triples in lexicographic order.
    std::vector<std::array<int, 3>> triangles() const;

    /// The two triangle apexes adjacent to a diagonal.
    std::array<int, 2> apexes(const Diagonal& d) const;

    /// Throws NotADiagonal if d is not in the triangulation.
    bool flippable(const Diagonal& d) const;

    /// The diagonal that replaces d when flipped (quad's other diagonal).
    Diagonal opposite_diagonal(const Diagonal& d) const;

    /// Throws NotFlippable.
    Triangulation flip(const Diagonal& d) const;

    /// Injective, order-independent encoding of the diagonal set.
    std::string canonical_key() const;

    bool operator==(const Triangulation& o) const { return poly_ == o.poly_ && diags_ == o.diags_; }

  private:
    const SimplePolygon* poly_;
    std::vector<Diagonal> diags_;  // sorted
};

/// Throws ApexNotVisible if the fan is not a valid triangulation.
Triangulation fan_triangulation(const SimplePolygon& p, int apex);

/// Some valid triangulation of p (BFS seed for enumeration).
Triangulation ear_clipping_triangulation(const SimplePolygon& p);

struct FlipSequence {
    Triangulation start;
    std::vector<Diagonal> flips;  // diagonal removed at each step

    std::size_t size() const { return flips.size(); }

    /// Applies all flips; throws ReplayFailure if any step is not flippable.
    /// With validate_each, runs the full validator after every step.
    Triangulation replay(bool validate_each = false) const;

    /// Every intermediate triangulation, including start and end.
    std::vector<Triangulation> states() const;
};

}  // namespace flipforge
