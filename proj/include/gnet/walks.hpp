#pragma once

#include <string>
#include <vector>

#include "gnet/net.hpp"

namespace gnet {

struct DirEdge {
    int from = -1, to = -1;
    DirEdge rev() const { return {to, from}; }
    bool operator==(const DirEdge&) const = default;
};

struct Walk {
    std::vector<DirEdge> steps;

    bool empty() const { return steps.empty(); }
    size_t size() const { return steps.size(); }
    bool closed() const { return !steps.empty() && steps.back().to == steps.front().from; }
    int start() const { return steps.front().from; }
    int end() const { return steps.back().to; }
    // visited vertices, start first; a closed walk does not repeat its start
    std::vector<int> vertices() const;
    Walk reversed() const;
};

// vertex sequence -> walk; `closed` appends the edge back to the first vertex
Walk walk_through(const Net& net, const std::vector<int>& verts, bool closed = false);
Walk walk_through(const Net& net, const std::vector<std::string>& ids, bool closed = false);
Walk concat(const Walk& a, const Walk& b);

// Signed, left positive, in (-pi, pi]; a backtrack is exactly +pi.
double turn_angle(const Net& net, DirEdge in, DirEdge out);
// closed: one turn per step, turn k sits between steps[k-1] and steps[k]
// open: turns between consecutive steps only
std::vector<double> turn_angles(const Net& net, const Walk& w);
double total_turn(const Net& net, const Walk& w);

struct Backtrack {
    int pass = -1;   // step index of the reversing edge
    int depth = 1;   // number of edges folded onto themselves
    DirEdge e, a, f; // e * a * ... * (-a) * f
    bool admissible = false;
    std::string reason;
};

struct Crossing {
    int pass_i = -1, pass_j = -1;
    int shared = 0; // edges common to both strands
    int p = -1, q = -1;
    std::string order; // ccw order of the bounding edges, e.g. "abcd"
    bool transversal = false;
    bool abdc = false; // order the theory says never occurs
};

struct WalkClassification {
    bool closed = false;
    bool simple = false;
    bool essentially_simple = false;
    bool counterclockwise = false;
    bool repeated_directed_edge = false;
    std::vector<Backtrack> backtracks;
    std::vector<Crossing> crossings;
};

WalkClassification classify(const Net& net, const Walk& w);

double gauss_bonnet_residual(const Net& net, const Walk& w);

// Faces of the (sub)graph, each traced with the face on its right. The outer
// face is the one of maximal signed area in the straight-line planar image.
struct Face {
    std::vector<DirEdge> steps;
    double signed_area = 0;
};
std::vector<Face> faces(const Net& net, const std::vector<char>& edge_mask);
std::vector<Face> faces(const Net& net);
int outer_face(const std::vector<Face>& fs);

Walk circumference(const Net& net);

// the circumference properties a net with balanced vertices must have
struct CircumferenceReport {
    Walk walk;
    WalkClassification cls;
    std::vector<int> visits;             // per vertex, how often the walk leaves it
    std::vector<int> unbalanced_missing;  // unbalanced vertices never visited
    std::vector<int> unbalanced_repeated; // visited more than once
    std::vector<int> nonnegative_turns;   // balanced vertices with turn >= 0
    int unbalanced_visited = 0;
    bool ok() const {
        return cls.essentially_simple && unbalanced_missing.empty() && unbalanced_repeated.empty() &&
               nonnegative_turns.empty() && unbalanced_visited > 0;
    }
};

CircumferenceReport circumference_check(const Net& net, double tol = 1e-8);

struct EscapeResult {
    std::string case_name; // "u=w", "nonpositive-at-v", "reached-w", "left-hull", "guard"
    Walk gamma;
    bool reached_w = false;
    double turn_abcd = 0;    // along a*b*c*d
    double turn_gamma = 0;   // along a*gamma*d, when gamma reaches w
    double bound_value = 0;  // combined(b) - 180 for u=w
    bool certified = false;  // turn_abcd <= 60 deg + tol
    bool path_independent = true;
    // gamma' through v, when a*gamma*d has a positive turn somewhere
    Walk gamma_prime;
    double turn_gamma_prime = 0;
    bool gamma_prime_essentially_simple = true;
    int steps = 0;
};

EscapeResult escape_path(const Net& net, DirEdge a, DirEdge b, DirEdge c, DirEdge d, double tol = 1e-8);

struct CpiReport {
    bool conditions_met = false;
    std::vector<std::string> failed; // "a", "b", "c"
    double turn1 = 0, turn2 = 0, diff = 0;
    bool equal = false;
};

CpiReport conditional_path_independence_check(const Net& net, const Walk& path1, const Walk& path2, DirEdge e,
                                               DirEdge f, double tol = 1e-9);

} // namespace gnet
