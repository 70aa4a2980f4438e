#include "gnet/net.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace gnet {

namespace {
constexpr double kRotationTol = 1e-9;
}

Net::Net(Surface s, std::vector<Vertex> vs, std::vector<std::pair<int, int>> es, Validation v)
    : surf_(s), verts_(std::move(vs)), edges_(std::move(es)) {
    build(v);
}

Net Net::from_ids(Surface s, std::vector<Vertex> vs,
                  const std::vector<std::pair<std::string, std::string>>& es, Validation v) {
    std::map<std::string, int> ids;
    for (int i = 0; i < int(vs.size()); ++i) ids[vs[i].id] = i;
    std::vector<std::pair<int, int>> idx;
    for (const auto& [a, b] : es) {
        auto ia = ids.find(a), ib = ids.find(b);
        if (ia == ids.end()) throw Error(ErrorKind::UnknownVertex, a);
        if (ib == ids.end()) throw Error(ErrorKind::UnknownVertex, b);
        idx.emplace_back(ia->second, ib->second);
    }
    return Net(s, std::move(vs), std::move(idx), v);
}

void Net::build(Validation v) {
    const int n = num_vertices();
    ids_.clear();
    for (int i = 0; i < n; ++i) {
        if (!ids_.emplace(verts_[i].id, i).second)
            throw Error(ErrorKind::NetInvariantViolated, "duplicate vertex id '" + verts_[i].id + "'");
        if (!in_chart(surf_, verts_[i].pos))
            throw Error(ErrorKind::NetInvariantViolated, "chart: vertex '" + verts_[i].id + "' outside chart");
    }
    rot_.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (int e = 0; e < num_edges(); ++e) {
        auto [a, b] = edges_[e];
        if (a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorKind::UnknownVertex, "edge endpoint index");
        if (a == b) throw Error(ErrorKind::NetInvariantViolated, "simple-graph: loop at '" + verts_[a].id + "'");
        if (!seen.emplace(std::min(a, b), std::max(a, b)).second)
            throw Error(ErrorKind::NetInvariantViolated,
                        "simple-graph: duplicate edge " + verts_[a].id + "-" + verts_[b].id);
        if (verts_[a].pos == verts_[b].pos)
            throw Error(ErrorKind::NetInvariantViolated,
                        "embedded: edge " + verts_[a].id + "-" + verts_[b].id + " has coincident endpoints");
        rot_[a].push_back({b, e, direction(surf_, verts_[a].pos, verts_[b].pos)});
        rot_[b].push_back({a, e, direction(surf_, verts_[b].pos, verts_[a].pos)});
    }
    degenerate_ = false;
    for (int i = 0; i < n; ++i) {
        auto& r = rot_[i];
        std::sort(r.begin(), r.end(), [](const Spoke& x, const Spoke& y) { return x.theta < y.theta; });
        for (size_t k = 0; k < r.size() && r.size() > 1; ++k) {
            double gap = angle_ccw(r[k].theta, r[(k + 1) % r.size()].theta);
            if (gap < kRotationTol || gap > kTwoPi - kRotationTol) {
                degenerate_ = true;
                if (v == Validation::Full)
                    throw Error(ErrorKind::NetDegenerate, "two edges at '" + verts_[i].id + "' share a direction");
            }
        }
    }
    if (v == Validation::Full) validate_full();
}

void Net::validate_full(double tol) const {
    if (!connected()) throw Error(ErrorKind::NetInvariantViolated, "connected: net is disconnected");
    if (!embedded(tol)) throw Error(ErrorKind::NetInvariantViolated, "embedded: edges intersect");
}

bool Net::connected() const {
    if (verts_.empty()) return true;
    std::vector<char> seen(verts_.size(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (const auto& s : rot_[u])
            if (!seen[s.nbr]) {
                seen[s.nbr] = 1;
                ++count;
                q.push(s.nbr);
            }
    }
    return count == num_vertices();
}

bool Net::embedded(double tol) const {
    for (int e = 0; e < num_edges(); ++e) {
        auto [a, b] = edges_[e];
        for (int f = e + 1; f < num_edges(); ++f) {
            auto [c, d] = edges_[f];
            if (segments_conflict(surf_, pos(a), pos(b), pos(c), pos(d), tol)) return false;
        }
        // vertices lying on an edge they do not belong to
        for (int w = 0; w < num_vertices(); ++w)
            if (w != a && w != b && rot_[w].empty() && point_on_segment(surf_, pos(w), pos(a), pos(b), tol))
                return false;
    }
    return true;
}

int Net::index(const std::string& id) const {
    auto it = ids_.find(id);
    if (it == ids_.end()) throw Error(ErrorKind::UnknownVertex, "no vertex '" + id + "'");
    return it->second;
}

int Net::slot(int v, int w) const {
    const auto& r = rot_[v];
    for (int k = 0; k < int(r.size()); ++k)
        if (r[k].nbr == w) return k;
    return -1;
}

int Net::edge_between(int u, int v) const {
    int k = slot(u, v);
    return k < 0 ? -1 : rot_[u][k].edge;
}

double Net::theta(int v, int w) const {
    int k = slot(v, w);
    if (k < 0) throw Error(ErrorKind::NonAdjacentEdges, verts_[v].id + " and " + verts_[w].id + " not adjacent");
    return rot_[v][k].theta;
}

double Net::edge_length(int e) const {
    auto [a, b] = edges_[e];
    return distance(surf_, pos(a), pos(b));
}

Vec2 Net::imbalance_vector(int v) const {
    Vec2 s;
    for (const auto& sp : rot_[v]) s += polar(1.0, sp.theta);
    return s;
}

Net Net::moved(const std::vector<Point>& p, Validation v) const {
    std::vector<Vertex> vs = verts_;
    for (size_t i = 0; i < vs.size(); ++i) vs[i].pos = p[i];
    return Net(surf_, std::move(vs), edges_, v);
}

std::vector<Point> Net::positions() const {
    std::vector<Point> p;
    p.reserve(verts_.size());
    for (const auto& v : verts_) p.push_back(v.pos);
    return p;
}

// ---- imbalance ----

int ImbalanceReport::balanced() const {
    return int(std::count_if(entries.begin(), entries.end(),
                             [](const ImbalanceEntry& e) { return e.cls == VertexClass::Balanced; }));
}

double ImbalanceReport::max_balanced_imbalance() const {
    double m = 0;
    for (const auto& e : entries)
        if (e.cls == VertexClass::Balanced) m = std::max(m, e.norm);
    return m;
}

std::map<int, int> ImbalanceReport::balanced_degree_census() const {
    std::map<int, int> c;
    for (const auto& e : entries)
        if (e.cls == VertexClass::Balanced) ++c[e.degree];
    return c;
}

ImbalanceEntry imbalance(const Net& net, int v) {
    if (v < 0 || v >= net.num_vertices()) throw Error(ErrorKind::UnknownVertex, "index " + std::to_string(v));
    ImbalanceEntry e;
    e.vertex = v;
    e.vec = net.imbalance_vector(v);
    e.norm = e.vec.norm();
    e.degree = net.degree(v);
    return e;
}

ImbalanceEntry imbalance(const Net& net, const std::string& id) { return imbalance(net, net.index(id)); }

ImbalanceReport classify_vertices(const Net& net, double tol) {
    ImbalanceReport r;
    r.tol = tol;
    for (int v = 0; v < net.num_vertices(); ++v) {
        ImbalanceEntry e = imbalance(net, v);
        e.cls = (e.degree >= 3 && e.norm <= tol) ? VertexClass::Balanced : VertexClass::Unbalanced;
        e.fixed_but_balanced = e.cls == VertexClass::Balanced && net.fixed(v);
        r.entries.push_back(e);
    }
    return r;
}

// ---- combined angles ----

std::vector<double> combined_angles(const std::vector<double>& d) {
    const size_t n = d.size();
    std::vector<double> out(n);
    for (size_t i = 0; i < n; ++i) {
        double a = d[(i + n - 1) % n], b = d[i], c = d[(i + 1) % n];
        out[i] = angle_ccw(a, b) + angle_ccw(b, c);
    }
    return out;
}

CombinedAngle combined_angle(const Net& net, int v, int b_nbr) {
    int n = net.degree(v);
    if (n < 3) throw Error(ErrorKind::DegreeTooSmall, net.id(v) + " has degree " + std::to_string(n));
    int k = net.slot(v, b_nbr);
    if (k < 0) throw Error(ErrorKind::NonAdjacentEdges, "edge not incident to " + net.id(v));
    const auto& r = net.rotation(v);
    const Spoke &a = r[(k + n - 1) % n], &b = r[k], &c = r[(k + 1) % n];
    CombinedAngle ca;
    ca.vertex = v;
    ca.a = a.nbr;
    ca.b = b.nbr;
    ca.c = c.nbr;
    ca.alpha = angle_ccw(a.theta, b.theta);
    ca.gamma = angle_ccw(b.theta, c.theta);
    ca.combined = ca.alpha + ca.gamma;
    return ca;
}

std::vector<CombinedAngle> combined_angles(const Net& net, int v) {
    std::vector<CombinedAngle> out;
    for (const auto& s : net.rotation(v)) out.push_back(combined_angle(net, v, s.nbr));
    return out;
}

double combined_bound(int n) {
    if (n == 3) return rad(240);
    if (n == 4) return kPi;
    return kPi + 2.0 * std::asin(1.0 / (n - 1));
}

namespace {

std::string fmt_deg(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g deg", deg(r));
    return buf;
}

std::vector<double> sorted_dirs(const Net& net, int v) {
    std::vector<double> d;
    for (const auto& s : net.rotation(v)) d.push_back(s.theta);
    return d;
}

} // namespace

std::vector<LemmaViolation> check_local_lemmas(const std::vector<double>& dirs_in, double tol) {
    std::vector<double> d = dirs_in;
    for (auto& x : d) x = wrap_2pi(x);
    std::sort(d.begin(), d.end());
    const int n = int(d.size());
    std::vector<LemmaViolation> out;
    if (n < 3) {
        out.push_back({"degree", "degree " + std::to_string(n) + " < 3"});
        return out;
    }
    for (int i = 0; i < n; ++i) {
        double gap = angle_ccw(d[i], d[(i + 1) % n]);
        if (gap >= kPi - tol) out.push_back({"gap", "gap " + fmt_deg(gap) + " after edge " + std::to_string(i)});
    }
    for (int i = 0; i < n; ++i) {
        int left = 0, right = 0;
        for (int j = 0; j < n; ++j) {
            double a = angle_ccw(d[i], d[j]);
            if (a > tol && a < kPi - tol) ++left;
            else if (a > kPi + tol && a < kTwoPi - tol) ++right;
        }
        if (!left || !right)
            out.push_back({"straight-line", "line along edge " + std::to_string(i) + " has an empty side"});
    }
    auto comb = combined_angles(d);
    bool big = false;
    for (int i = 0; i < n; ++i) {
        double c = comb[i];
        bool bad = n == 3 ? std::abs(c - rad(240)) > tol
                 : n == 4 ? std::abs(c - kPi) > tol
                          : c >= combined_bound(n) - tol;
        if (bad) out.push_back({"combined", "edge " + std::to_string(i) + ": " + fmt_deg(c)});
        if (n >= 5 && c >= kPi) {
            big = true;
            double alpha = angle_ccw(d[(i + n - 1) % n], d[i]), gamma = angle_ccw(d[i], d[(i + 1) % n]);
            for (double x : {alpha, gamma})
                if (!(x > rad(60) - tol && x < rad(120) + tol))
                    out.push_back({"flanking", "edge " + std::to_string(i) + ": flanking angle " + fmt_deg(x)});
        }
    }
    if (big && n % 2 == 0)
        out.push_back({"odd-degree", "degree " + std::to_string(n) + " with a combined angle of 180 deg or more"});
    return out;
}

std::vector<LemmaViolation> check_local_lemmas(const Net& net, int v, double tol) {
    return check_local_lemmas(sorted_dirs(net, v), tol);
}

// First right turn from edge i (coming in along it) leaves along i+1, second along i+2.
std::vector<LemmaViolation> check_turn_lemmas(const std::vector<double>& dirs_in, double tol) {
    std::vector<double> d = dirs_in;
    for (auto& x : d) x = wrap_2pi(x);
    std::sort(d.begin(), d.end());
    const int n = int(d.size());
    std::vector<LemmaViolation> out;
    if (n < 3) return out;
    auto turn = [&](int in, int outk) { return wrap_pi(d[outk] - d[in] - kPi); };
    for (int i = 0; i < n; ++i) {
        int b = (i + 1) % n, c = (i + 2) % n;
        double t1 = turn(i, b);
        if (!(t1 < 0)) out.push_back({"first-turn", "turn " + fmt_deg(t1) + " from edge " + std::to_string(i)});
        double t2 = turn(i, c);
        if (t2 > tol) {
            if (t2 > rad(60) + tol)
                out.push_back({"second-turn", "turn " + fmt_deg(t2) + " from edge " + std::to_string(i)});
            for (double f : {turn(i, b), turn(b, c)})
                if (!(f > -rad(120) - tol && f <= -rad(60) + tol))
                    out.push_back({"second-turn", "flanking first turn " + fmt_deg(f)});
        }
    }
    return out;
}

// ---- convex hull ----

namespace {

std::vector<int> hull_ccw(const std::vector<Vec2>& p, const std::vector<int>& idx) {
    std::vector<int> v = idx;
    std::sort(v.begin(), v.end(), [&](int a, int b) {
        return p[a].x < p[b].x || (p[a].x == p[b].x && p[a].y < p[b].y);
    });
    if (v.size() < 3) return v;
    std::vector<int> h(2 * v.size());
    size_t k = 0;
    auto turn = [&](int o, int a, int b) { return cross(p[a] - p[o], p[b] - p[o]); };
    for (size_t i = 0; i < v.size(); ++i) {
        while (k >= 2 && turn(h[k - 2], h[k - 1], v[i]) <= 0) --k;
        h[k++] = v[i];
    }
    for (size_t i = v.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && turn(h[k - 2], h[k - 1], v[i]) <= 0) --k;
        h[k++] = v[i];
    }
    h.resize(k - 1);
    return h;
}

} // namespace

HullReport convex_hull_check(const Net& net, double tol) {
    if (net.surface().kind == SurfaceKind::Spherical)
        throw Error(ErrorKind::UnsupportedSurface, "convex hull check needs a flat or hyperbolic net");
    auto rep = classify_vertices(net, tol);
    std::vector<Vec2> p;
    for (int v = 0; v < net.num_vertices(); ++v) p.push_back(planar(net.surface(), net.pos(v)));
    std::vector<int> unb, bal;
    for (int v = 0; v < net.num_vertices(); ++v) (rep.is_balanced(v) ? bal : unb).push_back(v);
    HullReport h;
    h.balanced = int(bal.size());
    h.unbalanced = int(unb.size());
    h.hull = hull_ccw(p, unb);
    for (int b : bal) {
        bool inside = h.hull.size() >= 3;
        for (size_t i = 0; inside && i < h.hull.size(); ++i) {
            Vec2 a = p[h.hull[i]], c = p[h.hull[(i + 1) % h.hull.size()]];
            Vec2 ac = c - a;
            if (cross(ac, p[b] - a) / ac.norm() <= 1e-12) inside = false;
        }
        if (!inside) {
            h.not_interior.push_back(b);
            h.violations.push_back("balanced vertex '" + net.id(b) + "' not strictly inside the hull");
        }
    }
    if (h.balanced >= 1 && h.unbalanced < 3)
        h.violations.push_back(std::to_string(h.balanced) + " balanced vertices but only " +
                               std::to_string(h.unbalanced) + " unbalanced");
    return h;
}

// ---- pruning ----

PruneResult prune_irrelevant_edges(const Net& net, double tol) {
    const Surface& s = net.surface();
    std::vector<Vertex> vs = net.vertices();
    std::vector<std::pair<int, int>> es = net.edges();
    PruneResult out;
    for (;;) {
        Net cur(s, vs, es, Validation::Light);
        auto rep = classify_vertices(cur, tol);
        std::vector<std::pair<int, int>> keep;
        for (auto e : es) {
            if (!rep.is_balanced(e.first) && !rep.is_balanced(e.second))
                out.removed_edges.emplace_back(vs[e.first].id, vs[e.second].id);
            else
                keep.push_back(e);
        }
        if (keep.size() == es.size()) break;
        es = std::move(keep);
    }
    // split into components
    const int n = int(vs.size());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : es) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    int nc = 0;
    for (int i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<int> stack{i};
        comp[i] = nc;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[u])
                if (comp[w] < 0) {
                    comp[w] = nc;
                    stack.push_back(w);
                }
        }
        ++nc;
    }
    for (int c = 0; c < nc; ++c) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (comp[i] == c) members.push_back(i);
        if (members.size() == 1) {
            out.isolated_vertices.push_back(vs[members[0]].id);
            continue;
        }
        std::vector<int> remap(n, -1);
        std::vector<Vertex> cv;
        for (int m : members) {
            remap[m] = int(cv.size());
            cv.push_back(vs[m]);
        }
        std::vector<std::pair<int, int>> ce;
        for (auto [a, b] : es)
            if (comp[a] == c) ce.emplace_back(remap[a], remap[b]);
        out.components.emplace_back(s, std::move(cv), std::move(ce), Validation::Light);
    }
    return out;
}

} // namespace gnet
