#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "gnet/net.hpp"

namespace gt {

using namespace gnet;

// free centre "O" at `c`, fixed leaves "L0".. at the given directions (degrees)
inline Net star(const std::vector<double>& degs, double r = 1.0, Surface s = Surface::flat(), Point c = {0, 0}) {
    std::vector<Vertex> vs{{"O", c, Role::Free}};
    std::vector<std::pair<int, int>> es;
    for (size_t i = 0; i < degs.size(); ++i) {
        Point p = c + polar(r, rad(degs[i]));
        vs.push_back({"L" + std::to_string(i), p, Role::Fixed});
        es.emplace_back(0, int(i) + 1);
    }
    return Net(s, vs, es);
}

inline Net fermat_tree() {
    const double s3 = std::sqrt(3.0);
    // equilateral, circumradius 1, centre at the origin
    return Net(Surface::flat(),
               {{"P1", {1, 0}, Role::Fixed}, {"P2", {-0.5, s3 / 2}, Role::Fixed}, {"P3", {-0.5, -s3 / 2}, Role::Fixed},
                {"F", {0, 0}, Role::Free}},
               {{0, 3}, {1, 3}, {2, 3}});
}

inline Net triangle() {
    return Net(Surface::flat(), {{"A", {0, 0}, Role::Fixed}, {"B", {1, 0}, Role::Fixed}, {"C", {0.5, 0.8}, Role::Fixed}},
               {{0, 1}, {1, 2}, {2, 0}});
}

// hyperbolic distance for K = -1 straight from the Poincare disk formula
inline double poincare_dist(Vec2 p, Vec2 q) {
    return std::acosh(1 + 2 * (p - q).norm2() / ((1 - p.norm2()) * (1 - q.norm2())));
}

// great-circle distance from the spherical law of cosines, (lon, colat) input
inline double sphere_dist(Vec2 p, Vec2 q) {
    double c = std::cos(p.y) * std::cos(q.y) + std::sin(p.y) * std::sin(q.y) * std::cos(p.x - q.x);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

// interior angle sum of a geodesic triangle from its side lengths
inline double hyperbolic_angle_sum(double a, double b, double c) {
    auto ang = [](double opp, double x, double y) {
        return std::acos((std::cosh(x) * std::cosh(y) - std::cosh(opp)) / (std::sinh(x) * std::sinh(y)));
    };
    return ang(a, b, c) + ang(b, c, a) + ang(c, a, b);
}

inline Vec2 random_disk_point(std::mt19937_64& rng, double rmax) {
    std::uniform_real_distribution<double> U(0, 1);
    return polar(rmax * std::sqrt(U(rng)), kTwoPi * U(rng));
}

} // namespace gt
