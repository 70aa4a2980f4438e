#pragma once

#include <map>
#include <string>

#include "gnet/net.hpp"
#include "gnet/relax.hpp"

namespace gnet {

Net build_fermat_net(const Surface& s, Point p1, Point p2, Point p3);

struct Fig2Params {
    double R = 2; // radius of the arc about P
    double r = 1; // radius of the arc about Q
    double d = 5; // |PQ|
};

struct Census {
    int unbalanced = 0, balanced = 0;
    std::map<int, int> balanced_by_degree;
    double max_imbalance = 0; // over balanced vertices
};

Census census(const Net& net, double tol = 1e-8);

struct Fig2Result {
    Net net;
    Census census;
    double zxa = 0;            // radians
    std::map<std::string, Point> named; // P, Q, A, C, X, Z, B1..B3, Y1..Y3, L, N, M
    int crossings = 0;         // pairwise proper crossings before merging
};

Fig2Result build_fig2_net(const Fig2Params& p = {});

struct HemisphereResult {
    Net net;
    double colatitude = 0; // of the triangle
    double area = 0;
    double angles[3] = {0, 0, 0}; // interior angles at A, B, C
};

// lift_eps > 0 moves X, Y, Z up from the equator to colatitude pi/2 - lift_eps
HemisphereResult build_hemisphere_net(double lift_eps = 0);

} // namespace gnet
