#include "flipforge/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace flipforge {

namespace {

constexpr double kWidth = 800, kHeight = 600, kMargin = 40;

struct Viewport {
    double minx = 0, miny = 0, scale = 1;

    double x(double wx) const { return kMargin + (wx - minx) * scale; }
    // SVG y grows downward
    double y(double wy) const { return kHeight - kMargin - (wy - miny) * scale; }
};

Viewport fit(double minx, double miny, double maxx, double maxy) {
    double w = std::max(maxx - minx, 1e-9), h = std::max(maxy - miny, 1e-9);
    double s = std::min((kWidth - 2 * kMargin) / w, (kHeight - 2 * kMargin) / h);
    return {minx, miny, s};
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

void open_doc(std::ostringstream& os) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
       << "\" height=\"" << kHeight << "\">\n";
}

void line(std::ostringstream& os, const Viewport& v, double x1, double y1, double x2,
          double y2, const char* stroke, double width) {
    os << "<line x1=\"" << num(v.x(x1)) << "\" y1=\"" << num(v.y(y1)) << "\" x2=\""
       << num(v.x(x2)) << "\" y2=\"" << num(v.y(y2)) << "\" stroke=\"" << stroke
       << "\" stroke-width=\"" << num(width) << "\"/>\n";
}

void dot(std::ostringstream& os, const Viewport& v, double x, double y, const char* fill) {
    os << "<circle cx=\"" << num(v.x(x)) << "\" cy=\"" << num(v.y(y))
       << "\" r=\"3\" fill=\"" << fill << "\"/>\n";
}

Viewport fit_polygon(const SimplePolygon& p) {
    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    for (const auto& q : p.vertices()) {
        minx = std::min(minx, q.x.get_d());
        maxx = std::max(maxx, q.x.get_d());
        miny = std::min(miny, q.y.get_d());
        maxy = std::max(maxy, q.y.get_d());
    }
    return fit(minx, miny, maxx, maxy);
}

void draw_polygon(std::ostringstream& os, const Viewport& v, const SimplePolygon& p) {
    for (int i = 0; i < p.size(); ++i) {
        const auto& a = p.at(i);
        const auto& b = p.at((i + 1) % p.size());
        line(os, v, a.x.get_d(), a.y.get_d(), b.x.get_d(), b.y.get_d(), "black", 1.5);
    }
    for (const auto& q : p.vertices()) dot(os, v, q.x.get_d(), q.y.get_d(), "black");
}

}  // namespace

std::string render_svg(const SimplePolygon& p) {
    std::ostringstream os;
    open_doc(os);
    Viewport v = fit_polygon(p);
    draw_polygon(os, v, p);
    os << "</svg>\n";
    return os.str();
}

std::string render_svg(const Triangulation& t) {
    std::ostringstream os;
    open_doc(os);
    const SimplePolygon& p = t.polygon();
    Viewport v = fit_polygon(p);
    for (const auto& d : t.diagonals()) {
        const auto& a = p.at(d.first);
        const auto& b = p.at(d.second);
        line(os, v, a.x.get_d(), a.y.get_d(), b.x.get_d(), b.y.get_d(), "steelblue", 1.0);
    }
    draw_polygon(os, v, p);
    os << "</svg>\n";
    return os.str();
}

std::string render_svg(const Trace& r) {
    std::ostringstream os;
    open_doc(os);
    long long minx = 0, miny = 0, maxx = 2, maxy = 2;
    for (const auto& e : r.edges) {
        maxx = std::max({maxx, e.b.x});
        maxy = std::max({maxy, e.b.y});
    }
    for (const auto& b : r.boxes) {
        maxx = std::max(maxx, b.x + 1);
        maxy = std::max(maxy, b.y + 1);
    }
    Viewport v = fit(0, 0, static_cast<double>(maxx), static_cast<double>(maxy));
    for (const auto& b : r.boxes) {
        double x = static_cast<double>(b.x), y = static_cast<double>(b.y);
        os << "<rect x=\"" << num(v.x(x)) << "\" y=\"" << num(v.y(y + 1)) << "\" width=\""
           << num(v.scale) << "\" height=\"" << num(v.scale) << "\" fill=\"lightgray\"/>\n";
        // boundary sides: box sides not shared with a neighboring box
        if (!r.boxes.count({b.x - 1, b.y})) line(os, v, x, y, x, y + 1, "crimson", 1.5);
        if (!r.boxes.count({b.x + 1, b.y}))
            line(os, v, x + 1, y, x + 1, y + 1, "crimson", 1.5);
        if (!r.boxes.count({b.x, b.y - 1})) line(os, v, x, y, x + 1, y, "crimson", 1.5);
        if (!r.boxes.count({b.x, b.y + 1}))
            line(os, v, x, y + 1, x + 1, y + 1, "crimson", 1.5);
    }
    for (const auto& e : r.edges)
        line(os, v, static_cast<double>(e.a.x), static_cast<double>(e.a.y),
             static_cast<double>(e.b.x), static_cast<double>(e.b.y), "black", 2.0);
    dot(os, v, 1, 1, "black");
    os << "</svg>\n";
    return os.str();
}

std::string render_svg(const Arborescence& a) {
    std::ostringstream os;
    open_doc(os);
    long long maxx = 1, maxy = 1;
    for (const auto& e : a.segments) {
        maxx = std::max(maxx, e.b.x);
        maxy = std::max(maxy, e.b.y);
    }
    Viewport v = fit(0, 0, static_cast<double>(maxx), static_cast<double>(maxy));
    for (const auto& e : a.segments)
        line(os, v, static_cast<double>(e.a.x), static_cast<double>(e.a.y),
             static_cast<double>(e.b.x), static_cast<double>(e.b.y), "black", 2.0);
    dot(os, v, 0, 0, "black");
    os << "</svg>\n";
    return os.str();
}

}  // namespace flipforge
