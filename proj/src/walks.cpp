#include "gnet/walks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace gnet {

std::vector<int> Walk::vertices() const {
    std::vector<int> v;
    if (steps.empty()) return v;
    v.push_back(steps.front().from);
    for (const auto& s : steps) v.push_back(s.to);
    if (closed()) v.pop_back();
    return v;
}

Walk Walk::reversed() const {
    Walk r;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) r.steps.push_back(it->rev());
    return r;
}

Walk walk_through(const Net& net, const std::vector<int>& verts, bool closed) {
    Walk w;
    auto add = [&](int a, int b) {
        if (net.edge_between(a, b) < 0)
            throw Error(ErrorKind::NonAdjacentEdges, net.id(a) + " and " + net.id(b) + " are not joined");
        w.steps.push_back({a, b});
    };
    for (size_t i = 0; i + 1 < verts.size(); ++i) add(verts[i], verts[i + 1]);
    if (closed && verts.size() >= 2) add(verts.back(), verts.front());
    return w;
}

Walk walk_through(const Net& net, const std::vector<std::string>& ids, bool closed) {
    std::vector<int> v;
    for (const auto& s : ids) v.push_back(net.index(s));
    return walk_through(net, v, closed);
}

Walk concat(const Walk& a, const Walk& b) {
    if (!a.empty() && !b.empty() && a.end() != b.start())
        throw Error(ErrorKind::NonAdjacentEdges, "walks do not join");
    Walk w = a;
    w.steps.insert(w.steps.end(), b.steps.begin(), b.steps.end());
    return w;
}

double turn_angle(const Net& net, DirEdge in, DirEdge out) {
    if (in.to != out.from) throw Error(ErrorKind::NonAdjacentEdges, "outgoing edge does not start where incoming ends");
    int v = in.to;
    if (net.slot(v, in.from) < 0 || net.slot(v, out.to) < 0)
        throw Error(ErrorKind::NonAdjacentEdges, "edge not in net at " + net.id(v));
    if (out.to == in.from) return kPi;
    double t = wrap_pi(net.theta(v, out.to) - net.theta(v, in.from) - kPi);
    if (std::abs(t) >= kPi - 1e-12)
        throw Error(ErrorKind::NetDegenerate, "straight reversal at " + net.id(v) + " that is not a backtrack");
    return t;
}

std::vector<double> turn_angles(const Net& net, const Walk& w) {
    std::vector<double> t;
    const size_t L = w.size();
    if (w.closed()) {
        for (size_t k = 0; k < L; ++k) t.push_back(turn_angle(net, w.steps[(k + L - 1) % L], w.steps[k]));
    } else {
        for (size_t k = 1; k < L; ++k) t.push_back(turn_angle(net, w.steps[k - 1], w.steps[k]));
    }
    return t;
}

double total_turn(const Net& net, const Walk& w) {
    double s = 0;
    for (double t : turn_angles(net, w)) s += t;
    return s;
}

// ---- faces ----

std::vector<Face> faces(const Net& net, const std::vector<char>& mask) {
    const int n = net.num_vertices();
    // masked rotation
    std::vector<std::vector<int>> rot(n);
    for (int v = 0; v < n; ++v)
        for (const auto& s : net.rotation(v))
            if (mask[s.edge]) rot[v].push_back(s.nbr);
    auto next_of = [&](int v, int from) {
        const auto& r = rot[v];
        for (size_t k = 0; k < r.size(); ++k)
            if (r[k] == from) return r[(k + 1) % r.size()];
        return -1;
    };
    std::vector<Vec2> pl(n);
    for (int v = 0; v < n; ++v) pl[v] = planar(net.surface(), net.pos(v));

    std::set<std::pair<int, int>> used;
    std::vector<Face> out;
    for (int e = 0; e < net.num_edges(); ++e) {
        if (!mask[e]) continue;
        auto [a0, b0] = net.edges()[e];
        for (DirEdge start : {DirEdge{a0, b0}, DirEdge{b0, a0}}) {
            if (used.count({start.from, start.to})) continue;
            Face f;
            DirEdge cur = start;
            do {
                used.insert({cur.from, cur.to});
                f.steps.push_back(cur);
                f.signed_area += 0.5 * cross(pl[cur.from], pl[cur.to]);
                cur = {cur.to, next_of(cur.to, cur.from)};
            } while (!(cur == start) && f.steps.size() <= size_t(2 * net.num_edges()));
            out.push_back(std::move(f));
        }
    }
    return out;
}

std::vector<Face> faces(const Net& net) { return faces(net, std::vector<char>(net.num_edges(), 1)); }

int outer_face(const std::vector<Face>& fs) {
    int best = -1;
    for (int i = 0; i < int(fs.size()); ++i)
        if (best < 0 || fs[i].signed_area > fs[best].signed_area) best = i;
    return best;
}

Walk circumference(const Net& net) {
    if (net.surface().kind == SurfaceKind::Spherical)
        throw Error(ErrorKind::UnsupportedSurface, "no unbounded face on the spherical chart");
    if (net.num_edges() == 0) return {};
    auto fs = faces(net);
    const Face& outer = fs[outer_face(fs)];
    // lowest, then leftmost vertex lies on the outer face
    int s = -1;
    Vec2 best;
    for (const auto& st : outer.steps) {
        Vec2 p = planar(net.surface(), net.pos(st.from));
        if (s < 0 || p.y < best.y || (p.y == best.y && p.x < best.x)) {
            s = st.from;
            best = p;
        }
    }
    size_t k0 = 0;
    while (outer.steps[k0].from != s) ++k0;
    Walk w;
    for (size_t k = 0; k < outer.steps.size(); ++k) w.steps.push_back(outer.steps[(k0 + k) % outer.steps.size()]);
    return w;
}

CircumferenceReport circumference_check(const Net& net, double tol) {
    CircumferenceReport r;
    r.walk = circumference(net);
    r.visits.assign(net.num_vertices(), 0);
    if (r.walk.empty()) return r;
    r.cls = classify(net, r.walk);
    for (const auto& st : r.walk.steps) ++r.visits[st.from];
    auto rep = classify_vertices(net, tol);
    for (int v = 0; v < net.num_vertices(); ++v) {
        if (rep.is_balanced(v)) continue;
        if (r.visits[v] == 0) r.unbalanced_missing.push_back(v);
        else ++r.unbalanced_visited;
        if (r.visits[v] > 1) r.unbalanced_repeated.push_back(v);
    }
    auto turns = turn_angles(net, r.walk);
    for (size_t k = 0; k < turns.size(); ++k) {
        int v = r.walk.steps[k].from;
        if (rep.is_balanced(v) && turns[k] >= 0) r.nonnegative_turns.push_back(v);
    }
    return r;
}

// ---- classification ----

namespace {

struct Indexer {
    const Walk& w;
    bool closed;
    long L;
    bool valid(long k) const { return closed || (k >= 0 && k < L); }
    DirEdge at(long k) const { return w.steps[size_t(((k % L) + L) % L)]; }
};

std::string cyc_from_a(std::string s) {
    auto p = s.find('a');
    return s.substr(p) + s.substr(0, p);
}

} // namespace

WalkClassification classify(const Net& net, const Walk& w) {
    WalkClassification c;
    c.closed = w.closed();
    const long L = long(w.size());
    if (L == 0) return c;
    Indexer S{w, c.closed, L};

    std::set<std::pair<int, int>> seen;
    for (const auto& s : w.steps)
        if (!seen.insert({s.from, s.to}).second) c.repeated_directed_edge = true;

    // passes: interior vertex visits
    std::vector<long> passes;
    for (long k = c.closed ? 0 : 1; k < L; ++k) passes.push_back(k);
    auto pass_vertex = [&](long k) { return S.at(k).from; };

    // folds
    for (long k : passes) {
        DirEdge in = S.at(k - 1), out = S.at(k);
        if (!(out == in.rev())) continue;
        long J = 1;
        while (S.valid(k - 1 - J) && S.valid(k + J) && (!c.closed || 2 * (J + 1) + 2 <= L) &&
               S.at(k + J) == S.at(k - 1 - J).rev())
            ++J;
        Backtrack b;
        b.pass = int(k);
        b.depth = int(J);
        if (!S.valid(k - 1 - J) || !S.valid(k + J)) {
            b.reason = "fold reaches the end of the walk";
            c.backtracks.push_back(b);
            continue;
        }
        b.e = S.at(k - 1 - J);
        b.a = S.at(k - J);
        b.f = S.at(k + J);
        int x = b.e.to;
        if (b.f == b.e.rev()) {
            b.reason = "f = -e";
        } else {
            double back = net.theta(x, b.e.from);
            double ta = angle_ccw(back, net.theta(x, b.a.to));
            double tf = angle_ccw(back, net.theta(x, b.f.to));
            b.admissible = ta < tf;
            if (!b.admissible) b.reason = "a lies left of e*f";
        }
        c.backtracks.push_back(b);
    }

    // self-meetings
    std::map<int, std::vector<long>> at_vertex;
    for (long k : passes) at_vertex[pass_vertex(k)].push_back(k);
    auto linked = [&](long i, long j) { return S.at(i) == S.at(j - 1).rev(); };
    for (const auto& [v, ks] : at_vertex) {
        for (long i : ks)
            for (long j : ks) {
                if (i == j) continue;
                bool lij = linked(i, j), lji = linked(j, i);
                Crossing x;
                x.pass_i = int(i);
                x.pass_j = int(j);
                x.p = v;
                if (!lij && !lji) {
                    if (j < i) continue;
                    x.q = v;
                    double ta = net.theta(v, S.at(i - 1).from), tb = net.theta(v, S.at(i).to);
                    double tc = net.theta(v, S.at(j - 1).from), td = net.theta(v, S.at(j).to);
                    if (ta == tb || tc == td) {
                        x.order = "touch";
                        c.crossings.push_back(x);
                        continue;
                    }
                    std::vector<std::pair<double, char>> o{{0.0, 'a'},
                                                           {angle_ccw(ta, tb), 'b'},
                                                           {angle_ccw(ta, tc), 'c'},
                                                           {angle_ccw(ta, td), 'd'}};
                    std::sort(o.begin(), o.end());
                    for (auto& [ang, ch] : o) x.order += ch;
                } else if (lij) {
                    if (lji) continue; // not the start of the shared stretch
                    long n = 0;
                    while (n <= L && S.valid(i + n) && S.valid(j - 1 - n) && S.at(i + n) == S.at(j - 1 - n).rev()) ++n;
                    if (c.closed) {
                        long D = (((j - 1 - i) % L) + L) % L;
                        if (2 * n >= D + 1) continue; // a fold, handled above
                    } else if (j > i && 2 * n >= j - i) {
                        continue;
                    }
                    x.shared = int(n);
                    if (!S.valid(i + n) || !S.valid(j - 1 - n)) {
                        x.order = "end";
                        c.crossings.push_back(x);
                        continue;
                    }
                    DirEdge e1 = S.at(i), en = S.at(i + n - 1);
                    int q = en.to;
                    x.q = q;
                    double rq = net.theta(q, en.from), rp = net.theta(v, e1.to);
                    std::vector<std::pair<double, char>> atq{{angle_ccw(rq, net.theta(q, S.at(i + n).to)), 'b'},
                                                             {angle_ccw(rq, net.theta(q, S.at(j - 1 - n).from)), 'c'}};
                    std::vector<std::pair<double, char>> atp{{angle_ccw(rp, net.theta(v, S.at(i - 1).from)), 'a'},
                                                             {angle_ccw(rp, net.theta(v, S.at(j).to)), 'd'}};
                    std::sort(atq.begin(), atq.end());
                    std::sort(atp.begin(), atp.end());
                    std::string s;
                    for (auto& [ang, ch] : atq) s += ch;
                    for (auto& [ang, ch] : atp) s += ch;
                    x.order = cyc_from_a(s);
                } else {
                    continue; // seen from the other ordered pair
                }
                x.abdc = x.order == "abdc";
                x.transversal = !(x.order == "abcd" || x.order == "adcb" || x.order == "touch" || x.order == "end");
                c.crossings.push_back(x);
            }
    }

    bool backtracks_ok = std::all_of(c.backtracks.begin(), c.backtracks.end(),
                                     [](const Backtrack& b) { return b.admissible; });
    bool crossings_ok = std::none_of(c.crossings.begin(), c.crossings.end(),
                                     [](const Crossing& x) { return x.transversal; });
    std::vector<int> vs = w.vertices();
    std::set<int> uniq(vs.begin(), vs.end());
    c.simple = uniq.size() == vs.size() && c.backtracks.empty() && (!c.closed || L >= 3);
    c.essentially_simple = !c.repeated_directed_edge && backtracks_ok && crossings_ok;

    if (c.closed && net.surface().kind != SurfaceKind::Spherical) {
        std::vector<char> mask(net.num_edges(), 0);
        for (const auto& s : w.steps) mask[net.edge_between(s.from, s.to)] = 1;
        auto fs = faces(net, mask);
        const Face& outer = fs[outer_face(fs)];
        std::set<std::pair<int, int>> out_set;
        for (const auto& s : outer.steps) out_set.insert({s.from, s.to});
        bool ok = true, touches = false;
        for (const auto& s : w.steps) {
            bool fwd = out_set.count({s.from, s.to}) != 0, bwd = out_set.count({s.to, s.from}) != 0;
            if (fwd) touches = true;
            if (bwd && !fwd) ok = false;
        }
        c.counterclockwise = ok && touches;
    }
    return c;
}

double gauss_bonnet_residual(const Net& net, const Walk& w) {
    if (!w.closed()) throw Error(ErrorKind::NotClosed, "walk does not return to its start");
    if (net.surface().kind == SurfaceKind::Spherical)
        throw Error(ErrorKind::UnsupportedSurface, "turn-angle residual needs a planar chart");
    auto c = classify(net, w);
    if (!c.essentially_simple) throw Error(ErrorKind::NotEssentiallySimple, "walk is not essentially simple");
    if (!c.counterclockwise) throw Error(ErrorKind::PreconditionViolated, "walk is not counterclockwise");
    return total_turn(net, w) - kTwoPi;
}

// ---- escape path ----

namespace {

bool in_triangle(Vec2 p, Vec2 a, Vec2 b, Vec2 c, double tol) {
    double o = cross(b - a, c - a);
    if (std::abs(o) < 1e-15) {
        // degenerate hull: segment
        Vec2 lo = a, hi = b;
        for (Vec2 q : {a, b, c})
            if ((q - a).norm() > (hi - lo).norm()) hi = q;
        Vec2 d = hi - lo;
        double l = d.norm();
        if (l == 0) return (p - a).norm() <= tol;
        double t = dot(p - lo, d) / (l * l);
        return std::abs(cross(d, p - lo)) / l <= tol && t >= -tol && t <= 1 + tol;
    }
    double s = o > 0 ? 1 : -1;
    auto side = [&](Vec2 u, Vec2 v) { return s * cross(v - u, p - u) / (v - u).norm(); };
    return side(a, b) >= -tol && side(b, c) >= -tol && side(c, a) >= -tol;
}

DirEdge right_turn(const Net& net, DirEdge in, int which) {
    int x = in.to;
    int k = net.slot(x, in.from);
    const auto& r = net.rotation(x);
    return {x, r[(k + which) % r.size()].nbr};
}

} // namespace

EscapeResult escape_path(const Net& net, DirEdge a, DirEdge b, DirEdge c, DirEdge d, double tol) {
    if (net.surface().kind == SurfaceKind::Spherical)
        throw Error(ErrorKind::UnsupportedSurface, "escape path needs a planar chart");
    auto fail = [](const std::string& what) { throw Error(ErrorKind::PreconditionViolated, what); };
    for (DirEdge e : {a, b, c, d})
        if (net.edge_between(e.from, e.to) < 0) fail("edge is not in the net");
    if (a.to != b.from || b.to != c.from || c.to != d.from) fail("edges do not form a path a*b*c*d");
    const int u = b.from, v = b.to, w = c.to;
    if (a == b.rev() || c == d.rev()) fail("a = -b or c = -d");
    auto rep = classify_vertices(net, 1e-8);
    if (!rep.is_balanced(u) || !rep.is_balanced(w)) fail("u or w is not balanced");
    if (!(right_turn(net, a, 1) == b)) fail("a*b is not the first right turn");
    if (!(right_turn(net, c, 1) == d)) fail("c*d is not the first right turn");
    const Surface& s = net.surface();
    Vec2 pu = planar(s, net.pos(u)), pv = planar(s, net.pos(v)), pw = planar(s, net.pos(w));
    for (int x = 0; x < net.num_vertices(); ++x)
        if (x != v && !rep.is_balanced(x) && in_triangle(planar(s, net.pos(x)), pu, pv, pw, 1e-12))
            fail("hull of u, v, w contains unbalanced vertex " + net.id(x));

    EscapeResult r;
    const double t_ab = turn_angle(net, a, b), t_bc = turn_angle(net, b, c), t_cd = turn_angle(net, c, d);
    r.turn_abcd = t_ab + t_bc + t_cd;

    if (u == w) {
        r.case_name = "u=w";
        auto ca = combined_angle(net, u, v);
        r.bound_value = ca.combined - kPi;
        r.certified = r.turn_abcd <= rad(60) + tol && std::abs(r.bound_value - r.turn_abcd) <= tol;
        return r;
    }
    if (t_bc <= 0) {
        r.case_name = "nonpositive-at-v";
        r.gamma.steps = {b, c};
        r.certified = r.turn_abcd <= rad(60) + tol;
        return r;
    }

    const int guard = 4 * net.num_edges();
    DirEdge cur = right_turn(net, a, 2);
    r.gamma.steps.push_back(cur);
    r.case_name = "guard";
    for (r.steps = 1; r.steps <= guard; ++r.steps) {
        int x = cur.to;
        if (x == w) {
            r.case_name = "reached-w";
            r.reached_w = true;
            break;
        }
        if (!in_triangle(planar(s, net.pos(x)), pu, pv, pw, 1e-12)) {
            r.case_name = "left-hull";
            break;
        }
        DirEdge nxt = right_turn(net, cur, 1);
        if (nxt.to == v) nxt = right_turn(net, cur, 2);
        cur = nxt;
        r.gamma.steps.push_back(cur);
    }
    if (!r.reached_w) {
        r.certified = r.turn_abcd <= rad(60) + tol;
        return r;
    }

    Walk full;
    full.steps.push_back(a);
    full.steps.insert(full.steps.end(), r.gamma.steps.begin(), r.gamma.steps.end());
    full.steps.push_back(d);
    auto turns = turn_angles(net, full);
    for (double t : turns) r.turn_gamma += t;
    r.path_independent = std::abs(r.turn_gamma - r.turn_abcd) <= tol;
    r.certified = r.turn_abcd <= rad(60) + tol;

    // gamma': detour through v between the first and last positive turns
    int first = -1, last = -1;
    for (int k = 0; k < int(turns.size()); ++k)
        if (turns[k] > 0) {
            if (first < 0) first = k;
            last = k;
        }
    if (first >= 0) {
        // turn k sits at the start of full.steps[k+1]
        int x = full.steps[first + 1].from, y = full.steps[last + 1].from;
        if (net.edge_between(x, v) >= 0 && net.edge_between(v, y) >= 0) {
            Walk gp;
            for (int k = 1; k <= first; ++k) gp.steps.push_back(full.steps[k]);
            gp.steps.push_back({x, v});
            gp.steps.push_back({v, y});
            for (int k = last + 1; k < int(full.steps.size()) - 1; ++k) gp.steps.push_back(full.steps[k]);
            r.gamma_prime = gp;
            Walk fp;
            fp.steps.push_back(a);
            fp.steps.insert(fp.steps.end(), gp.steps.begin(), gp.steps.end());
            fp.steps.push_back(d);
            r.turn_gamma_prime = total_turn(net, fp);
            r.gamma_prime_essentially_simple = classify(net, fp).essentially_simple;
        } else {
            r.gamma_prime_essentially_simple = false;
        }
    }
    return r;
}

// ---- conditional path independence ----

namespace {

bool lies_outside(const Net& net, const std::vector<char>& base, DirEdge e) {
    std::vector<char> m = base;
    m[net.edge_between(e.from, e.to)] = 1;
    auto fs = faces(net, m);
    const Face& outer = fs[outer_face(fs)];
    for (const auto& s : outer.steps)
        if (s == e || s == e.rev()) return true;
    return false;
}

double along(const Net& net, DirEdge e, const Walk& p, DirEdge f) {
    Walk w;
    w.steps.push_back(e);
    w.steps.insert(w.steps.end(), p.steps.begin(), p.steps.end());
    w.steps.push_back(f);
    return total_turn(net, w);
}

// simple once admissible folds are cancelled
bool simple_mod_backtracks(const Net& net, DirEdge e, const Walk& p, DirEdge f) {
    Walk w;
    w.steps.push_back(e);
    w.steps.insert(w.steps.end(), p.steps.begin(), p.steps.end());
    w.steps.push_back(f);
    auto c = classify(net, w);
    for (const auto& b : c.backtracks)
        if (!b.admissible) return false;
    std::vector<DirEdge> st;
    for (const auto& s : p.steps) {
        if (!st.empty() && st.back() == s.rev()) st.pop_back();
        else st.push_back(s);
    }
    std::set<int> vs;
    if (st.empty()) return true;
    vs.insert(st.front().from);
    for (const auto& s : st)
        if (!vs.insert(s.to).second) return false;
    return true;
}

} // namespace

CpiReport conditional_path_independence_check(const Net& net, const Walk& p1, const Walk& p2, DirEdge e, DirEdge f,
                                               double tol) {
    if (net.surface().kind != SurfaceKind::Flat)
        throw Error(ErrorKind::UnsupportedSurface, "path independence is checked on the flat plane only");
    if (p1.empty() || p2.empty() || p1.start() != p2.start() || p1.end() != p2.end())
        throw Error(ErrorKind::PreconditionViolated, "paths must share start and end vertices");
    if (e.to != p1.start() || f.from != p1.end())
        throw Error(ErrorKind::PreconditionViolated, "e must end at the start, f must leave the end");

    CpiReport r;
    r.turn1 = along(net, e, p1, f);
    r.turn2 = along(net, e, p2, f);
    r.diff = r.turn1 - r.turn2;
    r.equal = std::abs(r.diff) <= tol;

    Walk loop = concat(p1, p2.reversed());
    std::vector<char> mask(net.num_edges(), 0);
    for (const auto& s : loop.steps) mask[net.edge_between(s.from, s.to)] = 1;
    std::set<int> ends{e.from, e.to};
    bool share = ends.count(f.from) || ends.count(f.to);
    if (share || !lies_outside(net, mask, e) || !lies_outside(net, mask, f)) r.failed.push_back("a");
    if (!simple_mod_backtracks(net, e, p1, f) || !simple_mod_backtracks(net, e, p2, f)) r.failed.push_back("b");
    auto cl = classify(net, loop);
    bool crossings_ok = !cl.repeated_directed_edge &&
                        std::none_of(cl.crossings.begin(), cl.crossings.end(),
                                     [](const Crossing& x) { return x.transversal; });
    if (!crossings_ok) r.failed.push_back("c");
    r.conditions_met = r.failed.empty();
    return r;
}

} // namespace gnet
