#pragma once

#include <iosfwd>
#include <string>

#include "flipforge/chain_path.hpp"
#include "flipforge/reduction.hpp"

namespace flipforge {

/// "polygon <n>" then n lines "x y [label]", rationals as "num/den".
void write_polygon(std::ostream& os, const SimplePolygon& p);
SimplePolygon read_polygon(std::istream& is);

/// "triangulation <polygon-file> <m>" then m lines "i j".
void write_triangulation(std::ostream& os, const Triangulation& t,
                         const std::string& polygon_file);
struct TriangulationFile {
    std::string polygon_file;
    std::vector<Diagonal> diagonals;
};
TriangulationFile read_triangulation(std::istream& is);

/// "flips <k>" then k lines "i j".
void write_flips(std::ostream& os, const std::vector<Diagonal>& flips);
std::vector<Diagonal> read_flips(std::istream& is);

/// "yrsa <N> <k>" then N lines "x y".
void write_yrsa(std::ostream& os, const SinkSet& s, long long k);
std::pair<SinkSet, long long> read_yrsa(std::istream& is);

/// "rsa <m>" then m lines "x1 y1 x2 y2".
void write_arborescence(std::ostream& os, const Arborescence& a);
Arborescence read_arborescence(std::istream& is);

/// "trace" then "edge x1 y1 x2 y2" / "box x y" lines.
void write_trace(std::ostream& os, const Trace& r);
Trace read_trace(std::istream& is);

/// Whole-file helpers. Throw IoError.
std::string slurp(const std::string& path);
void spit(const std::string& path, const std::string& content);

/// FNV-1a of the file content, as 16 hex digits.
std::string content_checksum(const std::string& content);

/// Writes polygon.txt, t1.txt, t2.txt, and manifest.json into dir. The
/// manifest records the source YRSA instance and parameters so the instance
/// can be rebuilt deterministically, plus per-file checksums.
void write_instance_dir(const std::string& dir, const PolyFlipInstance& inst);

/// Rebuilds the instance from manifest.json in dir and checks that the
/// stored files still match their checksums. Throws IoError, ManifestMismatch.
PolyFlipInstance read_instance_dir(const std::string& dir);

}  // namespace flipforge
