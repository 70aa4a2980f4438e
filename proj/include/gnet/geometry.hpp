#pragma once

#include <string>
#include <vector>

#include "gnet/error.hpp"
#include "gnet/vec2.hpp"

namespace gnet {

enum class SurfaceKind { Flat, Hyperbolic, Spherical };

const char* to_string(SurfaceKind k);
SurfaceKind parse_surface_kind(const std::string& s);

// Flat: Cartesian chart. Hyperbolic: Poincare disk, |z| < 1, metric scaled so the
// curvature is K. Spherical: (longitude, colatitude), closed upper hemisphere.
struct Surface {
    SurfaceKind kind = SurfaceKind::Flat;
    double curvature = 0.0;

    static Surface flat() { return {SurfaceKind::Flat, 0.0}; }
    static Surface hyperbolic(double K = -1.0);
    static Surface spherical(double K = 1.0);
    static Surface make(SurfaceKind kind, double K);

    bool curved() const { return kind != SurfaceKind::Flat; }
    // 1/sqrt|K|; 1 on the flat plane
    double scale() const;
    double default_tol() const { return curved() ? 1e-8 : 1e-9; }
    bool operator==(const Surface&) const = default;
};

using Point = Vec2;

struct TangentDir {
    Point base;
    double theta = 0; // [0, 2pi), ccw from the frame's first axis
};

struct GeodesicSegment {
    Point p, q;
    double length = 0;
    TangentDir at_p, at_q; // initial directions, pointing into the segment
};

bool in_chart(const Surface& s, Point p);
void check_point(const Surface& s, Point p);

double distance(const Surface& s, Point p, Point q);
// direction at p of the geodesic towards q, in the orthonormal frame at p
double direction(const Surface& s, Point p, Point q);
// endpoint of the geodesic leaving `base` at angle theta, after arclength len
Point exp_map(const Surface& s, Point base, double theta, double len);
// point a fraction t of the way from p to q
Point geodesic_lerp(const Surface& s, Point p, Point q, double t);

GeodesicSegment geodesic_connect(const Surface& s, Point p, Point q);

double angle_ccw(const TangentDir& d1, const TangentDir& d2);
// same thing for bare angles
inline double angle_ccw(double th1, double th2) { return wrap_2pi(th2 - th1); }

double polygon_area(const Surface& s, const std::vector<Point>& poly);

// Image where geodesics are straight lines: identity (Flat), Klein model (Hyperbolic).
// Spherical charts have no such image on the closed hemisphere.
Vec2 planar(const Surface& s, Point p);
Point from_klein(Vec2 k);
Vec3 sphere_vec(Point lon_colat);
Point sphere_coords(Vec3 v);

double shoelace(const std::vector<Vec2>& poly);
bool point_in_polygon(Vec2 p, const std::vector<Vec2>& poly);

// proper crossing of (a,b) and (c,d): interiors meet in a single point
bool segments_cross(const Surface& s, Point a, Point b, Point c, Point d, double tol = 1e-12);
// p lies on the open geodesic segment (a,b)
bool point_on_segment(const Surface& s, Point p, Point a, Point b, double tol = 1e-10);
// distinct segments meet somewhere other than a shared endpoint
bool segments_conflict(const Surface& s, Point a, Point b, Point c, Point d, double tol = 1e-10);

} // namespace gnet
