#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "flipforge/double_chain.hpp"
#include "flipforge/io.hpp"
#include "flipforge/svg.hpp"

using namespace flipforge;

namespace {

std::string tmp_dir(const char* name) {
    auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

size_t count_occurrences(const std::string& hay, const std::string& needle) {
    size_t n = 0;
    for (size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("polygon file roundtrip") {
    auto chain = build_double_chain(3);
    auto poly = polygon_PDp(chain, default_apex(chain));
    std::ostringstream os;
    write_polygon(os, poly);
    std::istringstream is(os.str());
    auto back = read_polygon(is);
    REQUIRE(back.size() == poly.size());
    for (int i = 0; i < poly.size(); ++i) {
        CHECK(back.at(i).x == poly.at(i).x);
        CHECK(back.at(i).y == poly.at(i).y);
        CHECK(back.label(i) == poly.label(i));
    }
    std::ostringstream os2;
    write_polygon(os2, back);
    CHECK(os2.str() == os.str());
}

TEST_CASE("triangulation file roundtrip") {
    auto chain = build_double_chain(3);
    auto poly = polygon_PD(chain);
    auto [tu, tl] = extreme_triangulations(poly, ChainVariant::PD);
    std::ostringstream os;
    write_triangulation(os, tu, "pd3.txt");
    std::istringstream is(os.str());
    auto f = read_triangulation(is);
    CHECK(f.polygon_file == "pd3.txt");
    CHECK(f.diagonals == tu.diagonals());
    CHECK(Triangulation(poly, f.diagonals).canonical_key() == tu.canonical_key());
}

TEST_CASE("flips file roundtrip") {
    std::vector<Diagonal> flips{make_diagonal(0, 2), make_diagonal(5, 1), make_diagonal(3, 7)};
    std::ostringstream os;
    write_flips(os, flips);
    std::istringstream is(os.str());
    CHECK(read_flips(is) == flips);
}

TEST_CASE("yrsa file roundtrip") {
    SinkSet s;
    s.sinks = {{1, 2}, {3, 1}};
    std::ostringstream os;
    write_yrsa(os, s, 7);
    std::istringstream is(os.str());
    auto [back, k] = read_yrsa(is);
    CHECK(back.sinks == s.sinks);
    CHECK(k == 7);
}

TEST_CASE("rsa file roundtrip") {
    Arborescence a;
    a.segments = {make_segment({0, 0}, {2, 0}), make_segment({2, 0}, {2, 2})};
    std::sort(a.segments.begin(), a.segments.end());
    std::ostringstream os;
    write_arborescence(os, a);
    std::istringstream is(os.str());
    CHECK(read_arborescence(is).segments == a.segments);
}

TEST_CASE("trace file roundtrip") {
    Trace r;
    r.edges.insert(make_segment({1, 1}, {2, 1}));
    r.edges.insert(make_segment({2, 1}, {2, 2}));
    r.boxes.insert({1, 1});
    std::ostringstream os;
    write_trace(os, r);
    std::istringstream is(os.str());
    auto back = read_trace(is);
    CHECK(back.edges == r.edges);
    CHECK(back.boxes == r.boxes);
}

TEST_CASE("parse errors carry the ParseError kind") {
    std::istringstream bad_header("polygone 3\n");
    CHECK_THROWS_WITH_AS(read_polygon(bad_header), doctest::Contains("expected"), DomainError);
    std::istringstream truncated("polygon 2\n0 0\n");
    try {
        read_polygon(truncated);
        FAIL("should have thrown");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "ParseError");
    }
    std::istringstream bad_rat("polygon 1\n1/0 2\n");
    try {
        read_polygon(bad_rat);
        FAIL("should have thrown");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "ParseError");
    }
}

TEST_CASE("instance directory roundtrip") {
    SinkSet s;
    s.sinks = {{1, 1}};
    auto inst = build_instance(s, 2, {2, 2, true});
    auto dir = tmp_dir("flipforge_inst");
    write_instance_dir(dir, inst);
    CHECK(std::filesystem::exists(dir + "/manifest.json"));
    CHECK(std::filesystem::exists(dir + "/polygon.txt"));

    auto back = read_instance_dir(dir);
    CHECK(back.budget_l == inst.budget_l);
    CHECK(back.polygon.size() == inst.polygon.size());
    CHECK(back.T1().canonical_key() == inst.T1().canonical_key());
    CHECK(back.T2().canonical_key() == inst.T2().canonical_key());
    CHECK(back.sinks.sinks == s.sinks);
}

TEST_CASE("instance directory detects tampering") {
    SinkSet s;
    s.sinks = {{1, 1}};
    auto inst = build_instance(s, 2, {2, 2, true});
    auto dir = tmp_dir("flipforge_inst_tamper");
    write_instance_dir(dir, inst);
    spit(dir + "/t1.txt", slurp(dir + "/t1.txt") + "9 9\n");
    try {
        read_instance_dir(dir);
        FAIL("should have thrown");
    } catch (const DomainError& e) {
        CHECK(e.kind() == "ManifestMismatch");
    }
}

TEST_CASE("svg output is deterministic and structured") {
    auto chain = build_double_chain(3);
    auto poly = polygon_PD(chain);
    auto [tu, tl] = extreme_triangulations(poly, ChainVariant::PD);

    auto svg1 = render_svg(tu);
    auto svg2 = render_svg(tu);
    CHECK(svg1 == svg2);
    CHECK(svg1.starts_with("<svg"));
    CHECK(svg1.find("</svg>") != std::string::npos);
    // n=3 double chain has 3 diagonals in the upper extreme triangulation
    CHECK(count_occurrences(svg1, "steelblue") == 3);

    Trace r;
    r.edges.insert(make_segment({1, 1}, {2, 1}));
    r.boxes.insert({1, 1});
    auto tsvg = render_svg(r);
    CHECK(tsvg.find("<rect") != std::string::npos);
    CHECK(tsvg.find("crimson") != std::string::npos);

    Arborescence a;
    a.segments = {make_segment({0, 0}, {1, 0})};
    CHECK(render_svg(a).find("<line") != std::string::npos);
    CHECK(render_svg(poly) == render_svg(poly));
}
