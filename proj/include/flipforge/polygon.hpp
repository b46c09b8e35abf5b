#pragma once

#include <string>
#include <vector>

#include "flipforge/geometry.hpp"

namespace flipforge {

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> reasons;

    void fail(const std::string& why) {
        ok = false;
        reasons.push_back(why);
    }
};

/// A simple polygon given by its CCW boundary cycle. Immutable after
/// construction; triangulations reference it by pointer.
class SimplePolygon {
  public:
    SimplePolygon() = default;
    explicit SimplePolygon(std::vector<ExactPoint> vertices,
                           std::vector<std::string> labels = {});

    int size() const { return static_cast<int>(vertices_.size()); }
    const ExactPoint& at(int i) const { return vertices_[i]; }
    const std::vector<ExactPoint>& vertices() const { return vertices_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[i]; }

    /// -1 if no vertex carries the label.
    int index_of_label(const std::string& l) const;

    bool boundary_adjacent(int i, int j) const;

    /// Distinct vertices, simple boundary, CCW orientation.
    ValidationReport validate() const;

    /// Strict interior test (boundary points are outside).
    bool contains_open(const ExactPoint& q) const;

    /// True iff (i,j) is a valid diagonal: non-adjacent, interior to the
    /// polygon, crossing no boundary edge, passing through no vertex.
    bool diagonal_ok(int i, int j) const;

  private:
    std::vector<ExactPoint> vertices_;
    std::vector<std::string> labels_;
};

}  // namespace flipforge
