#pragma once

#include <string>

#include "flipforge/chain_path.hpp"

namespace flipforge {

/// Deterministic standalone SVG documents. Rational coordinates are only
/// rounded at render time.
std::string render_svg(const SimplePolygon& p);
std::string render_svg(const Triangulation& t);
std::string render_svg(const Trace& r);
std::string render_svg(const Arborescence& a);

}  // namespace flipforge
