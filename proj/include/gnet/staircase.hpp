#pragma once

#include <string>
#include <vector>

#include "gnet/vec2.hpp"

namespace gnet {

enum class RegionClass { Interior, Boundary, Corner, Outside };
const char* to_string(RegionClass c);

// Region between the leftwards and rightwards staircases of unit quarter
// circles anchored at (m, 0).
RegionClass in_region(Vec2 p, int m, double tol = 1e-9);

// e(C, theta) = (C cos theta, sin theta)
inline Vec2 unit_e(int C, double theta) { return {C * std::cos(theta), std::sin(theta)}; }

struct ArcFactReport {
    int samples = 0;
    int outside = 0;      // (i)
    int corner = 0;       // (ii): corner hit for theta > 0
    int not_interior = 0; // (iii): start not a corner, yet some theta > 0 not interior
    bool ok() const { return outside == 0 && corner == 0 && not_interior == 0; }
};

ArcFactReport arc_fact_check(Vec2 start, int C, double theta_max, int m, int samples, double tol = 1e-9);

struct SumWalk {
    int R = 0, L = 0, m = 0;
    std::vector<int> C;
    std::vector<double> theta;
    std::vector<Vec2> s; // s_0 .. s_j
    Vec2 b;              // the lone lower vector, rotated frame
};

struct SumWalkReport {
    SumWalk walk;
    bool all_in_region = false;
    bool final_interior = false;
    bool m_zero = false;
    bool angle_ok = false;   // angle(s, +y) in (-30, 30) deg
    bool consistent = false; // s_j = -b
    double angle_to_y = 0;
    std::vector<std::string> issues;
    bool ok() const { return all_in_region && final_interior && m_zero && angle_ok && consistent; }
};

// dirs: edge directions of a balanced vertex (any order)
SumWalkReport sum_walk_verify(const std::vector<double>& dirs, double tol = 1e-8);

} // namespace gnet
