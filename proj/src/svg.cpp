#include "gnet/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gnet {

namespace {

struct View {
    double cx = 0, cy = 0, scale = 1, half = 300;
    // math coordinates to pixels; y flips here and nowhere else
    Vec2 px(Vec2 p) const { return {half + (p.x - cx) * scale, half - (p.y - cy) * scale}; }
};

std::string num(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3f", x);
    return b;
}

Vec2 image(const Surface& s, Point p) {
    if (s.kind == SurfaceKind::Spherical) {
        Vec3 v = sphere_vec(p);
        return {v.x, v.y};
    }
    return p;
}

std::string line(const View& V, Vec2 a, Vec2 b) {
    Vec2 p = V.px(a), q = V.px(b);
    return "<line x1=\"" + num(p.x) + "\" y1=\"" + num(p.y) + "\" x2=\"" + num(q.x) + "\" y2=\"" + num(q.y) +
           "\"/>\n";
}

// Poincare geodesic: arc of the circle through p, q and the inverse of p
std::string hyperbolic_edge(const View& V, Vec2 p, Vec2 q) {
    if (std::abs(cross(p, q)) < 1e-12) return line(V, p, q);
    Vec2 a = p.norm2() > q.norm2() ? p : q;
    Vec2 ai = a / a.norm2();
    // circumcentre of p, q, ai
    Vec2 b = q - p, c = ai - p;
    double d = 2 * cross(b, c);
    Vec2 o = p + Vec2{c.y * b.norm2() - b.y * c.norm2(), b.x * c.norm2() - c.x * b.norm2()} / d;
    double r = (p - o).norm();
    int sweep = cross(p - o, q - o) > 0 ? 0 : 1;
    Vec2 s = V.px(p), t = V.px(q);
    return "<path d=\"M " + num(s.x) + " " + num(s.y) + " A " + num(r * V.scale) + " " + num(r * V.scale) +
           " 0 0 " + std::to_string(sweep) + " " + num(t.x) + " " + num(t.y) + "\"/>\n";
}

std::string sphere_edge(const View& V, const Surface& s, Point p, Point q) {
    std::string d = "<polyline points=\"";
    const int n = 32;
    for (int i = 0; i <= n; ++i) {
        Vec2 x = V.px(image(s, geodesic_lerp(s, p, q, double(i) / n)));
        d += num(x.x) + "," + num(x.y) + (i < n ? " " : "");
    }
    return d + "\"/>\n";
}

} // namespace

std::string render_svg(const Net& net, const SvgOptions& opt) {
    const Surface& S = net.surface();
    View V;
    V.half = opt.size / 2.0;
    if (S.kind == SurfaceKind::Flat) {
        double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
        for (const auto& v : net.vertices()) {
            x0 = std::min(x0, v.pos.x), x1 = std::max(x1, v.pos.x);
            y0 = std::min(y0, v.pos.y), y1 = std::max(y1, v.pos.y);
        }
        double span = std::max({x1 - x0, y1 - y0, 1e-9});
        V.cx = (x0 + x1) / 2, V.cy = (y0 + y1) / 2;
        V.scale = 0.9 * opt.size / span;
    } else {
        V.scale = 0.95 * V.half; // unit disc
    }

    std::string o = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(opt.size) +
         "\" height=\"" + std::to_string(opt.size) + "\" viewBox=\"0 0 " + std::to_string(opt.size) + " " +
         std::to_string(opt.size) + "\">\n";
    o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (S.kind != SurfaceKind::Flat) {
        Vec2 c = V.px({0, 0});
        o += "<circle class=\"boundary\" cx=\"" + num(c.x) + "\" cy=\"" + num(c.y) + "\" r=\"" + num(V.scale) +
             "\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
    }

    o += "<g class=\"edges\" stroke=\"black\" stroke-width=\"1.5\" fill=\"none\">\n";
    for (auto [a, b] : net.edges()) {
        Point p = net.pos(a), q = net.pos(b);
        switch (S.kind) {
        case SurfaceKind::Flat: o += line(V, p, q); break;
        case SurfaceKind::Hyperbolic: o += hyperbolic_edge(V, p, q); break;
        case SurfaceKind::Spherical: o += sphere_edge(V, S, p, q); break;
        }
    }
    o += "</g>\n";

    auto rep = classify_vertices(net, opt.tol);
    if (opt.imbalance_glyphs) {
        o += "<g class=\"imbalance\" stroke=\"#c00\" stroke-width=\"1\">\n";
        for (int v = 0; v < net.num_vertices(); ++v) {
            const auto& e = rep.entries[v];
            if (e.norm <= opt.tol) continue;
            Vec2 p = image(S, net.pos(v));
            // glyph length is a quarter of the canvas unit per unit imbalance
            o += line(V, p, p + e.vec * (0.25 / std::max(1.0, e.norm)) * (S.kind == SurfaceKind::Flat ? 1.0 : 0.5));
        }
        o += "</g>\n";
    }

    o += "<g class=\"vertices\" stroke=\"black\" stroke-width=\"1.2\">\n";
    for (int v = 0; v < net.num_vertices(); ++v) {
        Vec2 c = V.px(image(S, net.pos(v)));
        bool bal = rep.is_balanced(v);
        o += std::string("<circle class=\"") + (bal ? "balanced" : "unbalanced") + "\" cx=\"" + num(c.x) +
             "\" cy=\"" + num(c.y) + "\" r=\"4\" fill=\"" + (bal ? "black" : "white") + "\"/>\n";
    }
    o += "</g>\n";
    if (opt.labels) {
        o += "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"11\">\n";
        for (int v = 0; v < net.num_vertices(); ++v) {
            Vec2 c = V.px(image(S, net.pos(v)));
            o += "<text x=\"" + num(c.x + 6) + "\" y=\"" + num(c.y - 6) + "\">" + net.id(v) + "</text>\n";
        }
        o += "</g>\n";
    }
    return o + "</svg>\n";
}

} // namespace gnet
