#include "gnet/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace gnet {

const char* to_string(SurfaceKind k) {
    switch (k) {
    case SurfaceKind::Flat: return "flat";
    case SurfaceKind::Hyperbolic: return "hyperbolic";
    case SurfaceKind::Spherical: return "spherical";
    }
    return "?";
}

SurfaceKind parse_surface_kind(const std::string& s) {
    if (s == "flat") return SurfaceKind::Flat;
    if (s == "hyperbolic") return SurfaceKind::Hyperbolic;
    if (s == "spherical") return SurfaceKind::Spherical;
    throw Error(ErrorKind::SchemaError, "unknown surface kind '" + s + "'");
}

Surface Surface::hyperbolic(double K) {
    if (!(K < 0)) throw Error(ErrorKind::PreconditionViolated, "hyperbolic curvature must be negative");
    return {SurfaceKind::Hyperbolic, K};
}

Surface Surface::spherical(double K) {
    if (!(K > 0)) throw Error(ErrorKind::PreconditionViolated, "spherical curvature must be positive");
    return {SurfaceKind::Spherical, K};
}

Surface Surface::make(SurfaceKind kind, double K) {
    switch (kind) {
    case SurfaceKind::Flat:
        if (K != 0) throw Error(ErrorKind::PreconditionViolated, "flat surface needs curvature 0");
        return flat();
    case SurfaceKind::Hyperbolic: return hyperbolic(K);
    case SurfaceKind::Spherical: return spherical(K);
    }
    return flat();
}

double Surface::scale() const { return curved() ? 1.0 / std::sqrt(std::abs(curvature)) : 1.0; }

// ---- sphere helpers ----

Vec3 sphere_vec(Point p) {
    double lon = p.x, th = p.y;
    return {std::sin(th) * std::cos(lon), std::sin(th) * std::sin(lon), std::cos(th)};
}

Point sphere_coords(Vec3 v) {
    double n = v.norm();
    double z = std::clamp(v.z / n, -1.0, 1.0);
    double lon = std::atan2(v.y, v.x);
    return {lon, std::acos(z)};
}

namespace {

// Frame transported from the pole along the meridian; smooth over the open
// hemisphere and equal to the x/y axes at the pole.
void sphere_frame(Point p, Vec3& e1, Vec3& e2) {
    double lon = p.x, th = p.y;
    double cl = std::cos(lon), sl = std::sin(lon);
    Vec3 er{std::cos(th) * cl, std::cos(th) * sl, -std::sin(th)};
    Vec3 ep{-sl, cl, 0};
    e1 = er * cl - ep * sl;
    e2 = er * sl + ep * cl;
}

// Moebius map sending z to 0
Vec2 mobius_to0(Vec2 z, Vec2 w) { return cdiv(w - z, Vec2{1, 0} - cmul(conj(z), w)); }
Vec2 mobius_from0(Vec2 z, Vec2 u) { return cdiv(u + z, Vec2{1, 0} + cmul(conj(z), u)); }

double orient_planar(Vec2 a, Vec2 b, Vec2 c) {
    Vec2 ab = b - a;
    double l = ab.norm();
    return l > 0 ? cross(ab, c - a) / l : 0.0;
}

double orient_sphere(Vec3 a, Vec3 b, Vec3 c) {
    Vec3 n = cross(a, b);
    double l = n.norm();
    return l > 0 ? dot(n, c) / l : 0.0;
}

} // namespace

bool in_chart(const Surface& s, Point p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
    switch (s.kind) {
    case SurfaceKind::Flat: return true;
    case SurfaceKind::Hyperbolic: return p.norm2() < 1.0;
    case SurfaceKind::Spherical: return p.y >= -1e-15 && p.y <= kPi / 2 + 1e-12;
    }
    return false;
}

void check_point(const Surface& s, Point p) {
    if (!in_chart(s, p))
        throw Error(ErrorKind::OutOfChart, "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                                               ") outside the " + to_string(s.kind) + " chart");
}

double distance(const Surface& s, Point p, Point q) {
    switch (s.kind) {
    case SurfaceKind::Flat: return (q - p).norm();
    case SurfaceKind::Hyperbolic: {
        double r = mobius_to0(p, q).norm();
        return 2.0 * s.scale() * std::atanh(std::min(r, 1.0 - 1e-16));
    }
    case SurfaceKind::Spherical: {
        Vec3 a = sphere_vec(p), b = sphere_vec(q);
        return s.scale() * std::atan2(cross(a, b).norm(), dot(a, b));
    }
    }
    return 0;
}

double direction(const Surface& s, Point p, Point q) {
    switch (s.kind) {
    case SurfaceKind::Flat: return wrap_2pi((q - p).arg());
    case SurfaceKind::Hyperbolic: return wrap_2pi(mobius_to0(p, q).arg());
    case SurfaceKind::Spherical: {
        Vec3 a = sphere_vec(p), b = sphere_vec(q), e1, e2;
        sphere_frame(p, e1, e2);
        Vec3 t = b - a * dot(a, b);
        return wrap_2pi(std::atan2(dot(t, e2), dot(t, e1)));
    }
    }
    return 0;
}

Point exp_map(const Surface& s, Point base, double theta, double len) {
    switch (s.kind) {
    case SurfaceKind::Flat: return base + polar(len, theta);
    case SurfaceKind::Hyperbolic: {
        double r = std::tanh(len / (2.0 * s.scale()));
        return mobius_from0(base, polar(r, theta));
    }
    case SurfaceKind::Spherical: {
        Vec3 a = sphere_vec(base), e1, e2;
        sphere_frame(base, e1, e2);
        double ang = len / s.scale();
        Vec3 t = e1 * std::cos(theta) + e2 * std::sin(theta);
        return sphere_coords(a * std::cos(ang) + t * std::sin(ang));
    }
    }
    return base;
}

Point geodesic_lerp(const Surface& s, Point p, Point q, double t) {
    if (s.kind == SurfaceKind::Flat) return p + (q - p) * t;
    return exp_map(s, p, direction(s, p, q), t * distance(s, p, q));
}

GeodesicSegment geodesic_connect(const Surface& s, Point p, Point q) {
    check_point(s, p);
    check_point(s, q);
    double len = distance(s, p, q);
    if (!(len > 0)) throw Error(ErrorKind::CoincidentPoints, "segment endpoints coincide");
    if (s.kind == SurfaceKind::Spherical && len >= (kPi - 1e-9) * s.scale())
        throw Error(ErrorKind::AntipodalPoints, "endpoints are (nearly) antipodal");
    GeodesicSegment g;
    g.p = p;
    g.q = q;
    g.length = len;
    g.at_p = {p, direction(s, p, q)};
    g.at_q = {q, direction(s, q, p)};
    return g;
}

double angle_ccw(const TangentDir& d1, const TangentDir& d2) {
    if ((d1.base - d2.base).norm() > 1e-12)
        throw Error(ErrorKind::MismatchedBasePoint, "tangent directions live at different points");
    return angle_ccw(d1.theta, d2.theta);
}

Point from_klein(Vec2 k) { return k / (1.0 + std::sqrt(std::max(0.0, 1.0 - k.norm2()))); }

Vec2 planar(const Surface& s, Point p) {
    switch (s.kind) {
    case SurfaceKind::Flat: return p;
    case SurfaceKind::Hyperbolic: return p * (2.0 / (1.0 + p.norm2()));
    case SurfaceKind::Spherical: break;
    }
    throw Error(ErrorKind::UnsupportedSurface, "no straight-line planar image of the spherical chart");
}

double shoelace(const std::vector<Vec2>& poly) {
    double a = 0;
    for (size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
    return 0.5 * a;
}

bool point_in_polygon(Vec2 p, const std::vector<Vec2>& poly) {
    bool in = false;
    for (size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Vec2 &a = poly[i], &b = poly[j];
        if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
    }
    return in;
}

bool segments_cross(const Surface& s, Point a, Point b, Point c, Point d, double tol) {
    double o1, o2, o3, o4;
    if (s.kind == SurfaceKind::Spherical) {
        Vec3 A = sphere_vec(a), B = sphere_vec(b), C = sphere_vec(c), D = sphere_vec(d);
        if (dot(A + B, C + D) <= 0) return false;
        o1 = orient_sphere(A, B, C);
        o2 = orient_sphere(A, B, D);
        o3 = orient_sphere(C, D, A);
        o4 = orient_sphere(C, D, B);
    } else {
        Vec2 A = planar(s, a), B = planar(s, b), C = planar(s, c), D = planar(s, d);
        o1 = orient_planar(A, B, C);
        o2 = orient_planar(A, B, D);
        o3 = orient_planar(C, D, A);
        o4 = orient_planar(C, D, B);
    }
    auto strict = [tol](double x, double y) { return (x > tol && y < -tol) || (x < -tol && y > tol); };
    return strict(o1, o2) && strict(o3, o4);
}

bool point_on_segment(const Surface& s, Point p, Point a, Point b, double tol) {
    if (s.kind == SurfaceKind::Spherical) {
        Vec3 A = sphere_vec(a), B = sphere_vec(b), P = sphere_vec(p);
        if (std::abs(orient_sphere(A, B, P)) > tol) return false;
        Vec3 n = cross(A, B);
        return dot(cross(A, P), n) > tol * tol && dot(cross(P, B), n) > tol * tol && dot(P, A + B) > 0;
    }
    Vec2 A = planar(s, a), B = planar(s, b), P = planar(s, p);
    if (std::abs(orient_planar(A, B, P)) > tol) return false;
    Vec2 ab = B - A;
    double t = dot(P - A, ab) / ab.norm2();
    double eps = tol / ab.norm();
    return t > eps && t < 1 - eps;
}

bool segments_conflict(const Surface& s, Point a, Point b, Point c, Point d, double tol) {
    auto same = [](Point x, Point y) { return x == y; };
    int shared = same(a, c) + same(a, d) + same(b, c) + same(b, d);
    if (shared >= 2) return true; // duplicate edge
    if (segments_cross(s, a, b, c, d, tol)) return true;
    if (!same(c, a) && !same(c, b) && point_on_segment(s, c, a, b, tol)) return true;
    if (!same(d, a) && !same(d, b) && point_on_segment(s, d, a, b, tol)) return true;
    if (!same(a, c) && !same(a, d) && point_on_segment(s, a, c, d, tol)) return true;
    if (!same(b, c) && !same(b, d) && point_on_segment(s, b, c, d, tol)) return true;
    return false;
}

double polygon_area(const Surface& s, const std::vector<Point>& poly) {
    const size_t n = poly.size();
    if (n < 3) throw Error(ErrorKind::PreconditionViolated, "polygon needs at least 3 vertices");
    for (const auto& p : poly) check_point(s, p);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_conflict(s, poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
                throw Error(ErrorKind::SelfIntersectingPolygon, "edges " + std::to_string(i) + " and " +
                                                                    std::to_string(j) + " meet");
        }

    if (s.kind == SurfaceKind::Flat) return std::abs(shoelace(poly));

    std::vector<Point> P = poly;
    if (s.kind == SurfaceKind::Hyperbolic) {
        std::vector<Vec2> k;
        for (auto p : P) k.push_back(planar(s, p));
        if (shoelace(k) < 0) std::reverse(P.begin(), P.end());
    }
    // interior angles assuming ccw order
    double sum = 0;
    for (size_t i = 0; i < n; ++i) {
        Point prev = P[(i + n - 1) % n], cur = P[i], next = P[(i + 1) % n];
        sum += angle_ccw(direction(s, cur, next), direction(s, cur, prev));
    }
    double flat_sum = (double(n) - 2.0) * kPi;
    double K = std::abs(s.curvature);
    if (s.kind == SurfaceKind::Hyperbolic) return (flat_sum - sum) / K;
    double a = (sum - flat_sum) / K;
    return std::min(a, 4.0 * kPi / K - a);
}

} // namespace gnet
