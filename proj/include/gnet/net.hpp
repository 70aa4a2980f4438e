#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gnet/geometry.hpp"

namespace gnet {

enum class Role { Fixed, Free };

struct Vertex {
    std::string id;
    Point pos;
    Role role = Role::Free;
};

// one incident edge as seen from a vertex
struct Spoke {
    int nbr = -1;
    int edge = -1;
    double theta = 0;
};

enum class Validation {
    Full,  // connected, simple, embedded, in chart, distinct directions; throws
    Light, // simple and in chart only; rotation degeneracy is recorded, not thrown
};

class Net {
public:
    Net() = default;
    Net(Surface s, std::vector<Vertex> vs, std::vector<std::pair<int, int>> es,
        Validation v = Validation::Full);

    static Net from_ids(Surface s, std::vector<Vertex> vs,
                        const std::vector<std::pair<std::string, std::string>>& es,
                        Validation v = Validation::Full);

    const Surface& surface() const { return surf_; }
    int num_vertices() const { return int(verts_.size()); }
    int num_edges() const { return int(edges_.size()); }
    const std::vector<Vertex>& vertices() const { return verts_; }
    const Vertex& vertex(int v) const { return verts_.at(v); }
    Point pos(int v) const { return verts_[v].pos; }
    const std::string& id(int v) const { return verts_[v].id; }
    bool fixed(int v) const { return verts_[v].role == Role::Fixed; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    int index(const std::string& id) const;
    bool has(const std::string& id) const { return ids_.count(id) != 0; }
    int degree(int v) const { return int(rot_[v].size()); }
    // ccw by direction angle
    const std::vector<Spoke>& rotation(int v) const { return rot_[v]; }
    int edge_between(int u, int v) const;
    // position of neighbour w in the rotation at v, -1 if not adjacent
    int slot(int v, int w) const;
    double theta(int v, int w) const;
    double edge_length(int e) const;

    Vec2 imbalance_vector(int v) const;
    bool degenerate_rotation() const { return degenerate_; }

    // same topology, new positions
    Net moved(const std::vector<Point>& pos, Validation v = Validation::Light) const;
    std::vector<Point> positions() const;

    // throws NetInvariantViolated / NetDegenerate on failure
    void validate_full(double tol = 1e-10) const;
    bool connected() const;
    bool embedded(double tol = 1e-10) const;

private:
    void build(Validation v);

    Surface surf_;
    std::vector<Vertex> verts_;
    std::vector<std::pair<int, int>> edges_;
    std::map<std::string, int> ids_;
    std::vector<std::vector<Spoke>> rot_;
    bool degenerate_ = false;
};

enum class VertexClass { Balanced, Unbalanced };

struct ImbalanceEntry {
    int vertex = -1;
    Vec2 vec;
    double norm = 0;
    int degree = 0;
    VertexClass cls = VertexClass::Unbalanced;
    // labelled fixed in the input but numerically balanced
    bool fixed_but_balanced = false;
};

struct ImbalanceReport {
    double tol = 1e-8;
    std::vector<ImbalanceEntry> entries;

    int balanced() const;
    int unbalanced() const { return int(entries.size()) - balanced(); }
    bool is_balanced(int v) const { return entries.at(v).cls == VertexClass::Balanced; }
    double max_balanced_imbalance() const;
    std::map<int, int> balanced_degree_census() const;
};

ImbalanceEntry imbalance(const Net& net, int v);
ImbalanceEntry imbalance(const Net& net, const std::string& id);
ImbalanceReport classify_vertices(const Net& net, double tol = 1e-8);

struct CombinedAngle {
    int vertex = -1;
    int a = -1, b = -1, c = -1; // neighbour vertices, a,b,c ccw consecutive
    double alpha = 0, gamma = 0, combined = 0;
};

CombinedAngle combined_angle(const Net& net, int v, int b_nbr);
std::vector<CombinedAngle> combined_angles(const Net& net, int v);
// combined angles on a bare ccw-sorted direction list; entry i is centred on dirs[i]
std::vector<double> combined_angles(const std::vector<double>& sorted_dirs);
// degree 3: 240, degree 4: 180, above: 180 + 2 asin(1/(n-1)) (strict)
double combined_bound(int degree);

struct LemmaViolation {
    std::string lemma; // "gap", "straight-line", "combined", "odd-degree", "flanking", "first-turn", "second-turn"
    std::string detail;
};

// tol is angular (radians)
std::vector<LemmaViolation> check_local_lemmas(const std::vector<double>& dirs, double tol = 1e-7);
std::vector<LemmaViolation> check_local_lemmas(const Net& net, int v, double tol = 1e-7);
std::vector<LemmaViolation> check_turn_lemmas(const std::vector<double>& dirs, double tol = 1e-7);

struct HullReport {
    std::vector<int> hull;         // unbalanced vertices on the hull, ccw
    std::vector<int> not_interior; // balanced vertices not strictly inside
    int balanced = 0, unbalanced = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

HullReport convex_hull_check(const Net& net, double tol = 1e-8);

struct PruneResult {
    std::vector<Net> components;
    std::vector<std::string> isolated_vertices;
    std::vector<std::pair<std::string, std::string>> removed_edges;
    // isolated vertices are not nets
    bool all_valid() const { return isolated_vertices.empty(); }
};

PruneResult prune_irrelevant_edges(const Net& net, double tol = 1e-8);

} // namespace gnet
