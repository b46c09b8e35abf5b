#include "flipforge/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace flipforge {

namespace {

using nlohmann::json;

std::istream& expect_word(std::istream& is, const std::string& want) {
    std::string got;
    if (!(is >> got) || got != want)
        throw DomainError("ParseError", "expected '" + want + "', got '" + got + "'");
    return is;
}

long long read_ll(std::istream& is, const char* what) {
    long long v;
    if (!(is >> v)) throw DomainError("ParseError", std::string("expected ") + what);
    return v;
}

}  // namespace

void write_polygon(std::ostream& os, const SimplePolygon& p) {
    os << "polygon " << p.size() << "\n";
    for (int i = 0; i < p.size(); ++i) {
        os << rat_to_string(p.at(i).x) << " " << rat_to_string(p.at(i).y);
        if (!p.label(i).empty()) os << " " << p.label(i);
        os << "\n";
    }
}

SimplePolygon read_polygon(std::istream& is) {
    expect_word(is, "polygon");
    long long n = read_ll(is, "vertex count");
    std::string rest;
    std::getline(is, rest);
    std::vector<ExactPoint> verts;
    std::vector<std::string> labels;
    for (long long i = 0; i < n; ++i) {
        std::string line;
        if (!std::getline(is, line)) throw DomainError("ParseError", "truncated polygon file");
        std::istringstream ls(line);
        std::string xs, ys, label;
        if (!(ls >> xs >> ys)) throw DomainError("ParseError", "bad vertex line: " + line);
        ls >> label;
        try {
            verts.push_back({rat_from_string(xs), rat_from_string(ys)});
        } catch (const std::invalid_argument& e) {
            throw DomainError("ParseError", e.what());
        }
        labels.push_back(label);
    }
    return SimplePolygon(std::move(verts), std::move(labels));
}

void write_triangulation(std::ostream& os, const Triangulation& t,
                         const std::string& polygon_file) {
    os << "triangulation " << polygon_file << " " << t.diagonals().size() << "\n";
    for (const auto& d : t.diagonals()) os << d.first << " " << d.second << "\n";
}

TriangulationFile read_triangulation(std::istream& is) {
    expect_word(is, "triangulation");
    TriangulationFile f;
    if (!(is >> f.polygon_file)) throw DomainError("ParseError", "missing polygon file name");
    long long m = read_ll(is, "diagonal count");
    for (long long i = 0; i < m; ++i) {
        int a = static_cast<int>(read_ll(is, "diagonal endpoint"));
        int b = static_cast<int>(read_ll(is, "diagonal endpoint"));
        f.diagonals.push_back(make_diagonal(a, b));
    }
    return f;
}

void write_flips(std::ostream& os, const std::vector<Diagonal>& flips) {
    os << "flips " << flips.size() << "\n";
    for (const auto& d : flips) os << d.first << " " << d.second << "\n";
}

std::vector<Diagonal> read_flips(std::istream& is) {
    expect_word(is, "flips");
    long long k = read_ll(is, "flip count");
    std::vector<Diagonal> flips;
    for (long long i = 0; i < k; ++i) {
        int a = static_cast<int>(read_ll(is, "flip endpoint"));
        int b = static_cast<int>(read_ll(is, "flip endpoint"));
        flips.push_back(make_diagonal(a, b));
    }
    return flips;
}

void write_yrsa(std::ostream& os, const SinkSet& s, long long k) {
    os << "yrsa " << s.size() << " " << k << "\n";
    for (const auto& p : s.sinks) os << p.x << " " << p.y << "\n";
}

std::pair<SinkSet, long long> read_yrsa(std::istream& is) {
    expect_word(is, "yrsa");
    long long n = read_ll(is, "sink count"), k = read_ll(is, "budget");
    SinkSet s;
    for (long long i = 0; i < n; ++i) {
        long long x = read_ll(is, "sink x"), y = read_ll(is, "sink y");
        s.sinks.push_back({x, y});
    }
    return {s, k};
}

void write_arborescence(std::ostream& os, const Arborescence& a) {
    os << "rsa " << a.segments.size() << "\n";
    for (const auto& e : a.segments)
        os << e.a.x << " " << e.a.y << " " << e.b.x << " " << e.b.y << "\n";
}

Arborescence read_arborescence(std::istream& is) {
    expect_word(is, "rsa");
    long long m = read_ll(is, "segment count");
    Arborescence a;
    for (long long i = 0; i < m; ++i) {
        long long x1 = read_ll(is, "x1"), y1 = read_ll(is, "y1");
        long long x2 = read_ll(is, "x2"), y2 = read_ll(is, "y2");
        a.segments.push_back(make_segment({x1, y1}, {x2, y2}));
    }
    std::sort(a.segments.begin(), a.segments.end());
    return a;
}

void write_trace(std::ostream& os, const Trace& r) {
    os << "trace\n";
    for (const auto& e : r.edges)
        os << "edge " << e.a.x << " " << e.a.y << " " << e.b.x << " " << e.b.y << "\n";
    for (const auto& b : r.boxes) os << "box " << b.x << " " << b.y << "\n";
}

Trace read_trace(std::istream& is) {
    expect_word(is, "trace");
    Trace r;
    std::string kind;
    while (is >> kind) {
        if (kind == "edge") {
            long long x1 = read_ll(is, "x1"), y1 = read_ll(is, "y1");
            long long x2 = read_ll(is, "x2"), y2 = read_ll(is, "y2");
            r.edges.insert(make_segment({x1, y1}, {x2, y2}));
        } else if (kind == "box") {
            long long x = read_ll(is, "box x"), y = read_ll(is, "box y");
            r.boxes.insert({x, y});
        } else {
            throw DomainError("ParseError", "unknown trace element: " + kind);
        }
    }
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DomainError("IoError", "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("IoError", "cannot write " + path);
    f << content;
    if (!f) throw DomainError("IoError", "write failed for " + path);
}

std::string content_checksum(const std::string& content) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : content) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_instance_dir(const std::string& dir, const PolyFlipInstance& inst) {
    std::filesystem::create_directories(dir);
    auto path = [&](const char* name) { return dir + "/" + name; };

    std::ostringstream poly, t1, t2;
    write_polygon(poly, inst.polygon);
    write_triangulation(t1, inst.T1(), "polygon.txt");
    write_triangulation(t2, inst.T2(), "polygon.txt");
    spit(path("polygon.txt"), poly.str());
    spit(path("t1.txt"), t1.str());
    spit(path("t2.txt"), t2.str());

    json m;
    m["yrsa"]["k"] = inst.k;
    for (const auto& s : inst.sinks.sinks) m["yrsa"]["sinks"].push_back({s.x, s.y});
    m["params"] = {{"beta", inst.params.beta},
                   {"d", inst.params.d},
                   {"override", inst.params.override_allowed}};
    m["provenance"] = inst.params.override_allowed ? "override" : "default";
    m["N"] = inst.sinks.size();
    m["n"] = inst.n;
    m["budget_l"] = inst.budget_l;
    m["coordinate_bits"] = coordinate_bits(inst);
    m["files"] = {{"polygon", "polygon.txt"}, {"t1", "t1.txt"}, {"t2", "t2.txt"}};
    m["checksums"] = {{"polygon.txt", content_checksum(poly.str())},
                      {"t1.txt", content_checksum(t1.str())},
                      {"t2.txt", content_checksum(t2.str())}};
    spit(path("manifest.json"), m.dump(2) + "\n");
}

PolyFlipInstance read_instance_dir(const std::string& dir) {
    json m;
    try {
        m = json::parse(slurp(dir + "/manifest.json"));
    } catch (const json::exception& e) {
        throw DomainError("ParseError", std::string("manifest: ") + e.what());
    }
    SinkSet s;
    for (const auto& p : m.at("yrsa").at("sinks"))
        s.sinks.push_back({p.at(0).get<long long>(), p.at(1).get<long long>()});
    long long k = m.at("yrsa").at("k").get<long long>();
    ReductionParams params{m.at("params").at("beta").get<int>(),
                           m.at("params").at("d").get<int>(),
                           m.at("params").at("override").get<bool>()};
    PolyFlipInstance inst = build_instance(s, k, params);
    if (inst.budget_l != m.at("budget_l").get<long long>())
        throw DomainError("ManifestMismatch", "budget_l does not match the parameters");
    for (const auto& [file, sum] : m.at("checksums").items())
        if (content_checksum(slurp(dir + "/" + file)) != sum.get<std::string>())
            throw DomainError("ManifestMismatch", file + " changed since the manifest was written");
    return inst;
}

}  // namespace flipforge
