#include "gnet/relax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gnet {

const char* to_string(RelaxStatus s) {
    switch (s) {
    case RelaxStatus::Converged: return "converged";
    case RelaxStatus::Degenerated: return "degenerated";
    case RelaxStatus::MaxItersExceeded: return "max-iters";
    }
    return "?";
}

namespace {

double length_at(const Surface& s, const std::vector<std::pair<int, int>>& edges, const std::vector<Point>& p) {
    double L = 0;
    for (auto [a, b] : edges) L += distance(s, p[a], p[b]);
    return L;
}

std::string degeneracy(const Net& net, const std::vector<int>& free, const RelaxParams& P) {
    for (int e = 0; e < net.num_edges(); ++e) {
        auto [a, b] = net.edges()[e];
        if ((!net.fixed(a) || !net.fixed(b)) && net.edge_length(e) < P.collision_eps)
            return "vertex collision: " + net.id(a) + " meets " + net.id(b);
    }
    if (net.degenerate_rotation()) return "parallel incident edges";
    for (int v : free) {
        const auto& r = net.rotation(v);
        if (r.size() != 3) continue;
        for (int i = 0; i < 3; ++i)
            if (std::abs(angle_ccw(r[i].theta, r[(i + 1) % 3].theta) - kPi) < P.antialign_eps)
                return "degree-3 vertex " + net.id(v) + " went straight through";
    }
    return {};
}

} // namespace

double total_length(const Net& net) {
    double L = 0;
    for (int e = 0; e < net.num_edges(); ++e) L += net.edge_length(e);
    return L;
}

Vec2 length_gradient(const Net& net, int v, double collision_eps) {
    if (v < 0 || v >= net.num_vertices()) throw Error(ErrorKind::UnknownVertex, "index " + std::to_string(v));
    for (const auto& s : net.rotation(v))
        if (net.edge_length(s.edge) < collision_eps)
            throw Error(ErrorKind::VertexCollision, net.id(v) + " is too close to " + net.id(s.nbr));
    return -net.imbalance_vector(v);
}

RelaxResult relax(const Net& net0, const RelaxParams& P) {
    const Surface& S = net0.surface();
    std::vector<int> free;
    int nfixed = 0;
    for (int v = 0; v < net0.num_vertices(); ++v) {
        if (net0.fixed(v)) ++nfixed;
        else free.push_back(v);
    }
    if (P.check_preconditions) {
        if (nfixed < 1) throw Error(ErrorKind::PreconditionViolated, "relaxation needs a fixed vertex");
        for (int v : free)
            if (net0.degree(v) < 3)
                throw Error(ErrorKind::PreconditionViolated, "free vertex " + net0.id(v) + " has degree < 3");
    }

    RelaxResult res;
    std::vector<Point> pos = net0.positions();
    Net cur = net0.moved(pos, Validation::Light);
    double L = length_at(S, cur.edges(), pos);
    res.length_history.push_back(L);

    double mean_len = cur.num_edges() ? L / cur.num_edges() : 1.0;
    double t = P.step_rule == StepRule::Fixed ? P.fixed_step : 0.1 * mean_len;
    std::vector<Vec2> d(net0.num_vertices()), d_prev;
    std::vector<Vec2> s_prev;

    auto finish = [&](RelaxStatus st, std::string why) {
        res.status = st;
        res.reason = std::move(why);
        res.net = cur;
        return res;
    };

    for (int it = 0;; ++it) {
        res.iterations = it;
        double g2 = 0, gmax = 0;
        for (int v : free) {
            d[v] = cur.imbalance_vector(v);
            g2 += d[v].norm2();
            gmax = std::max(gmax, d[v].norm());
        }
        res.max_imbalance = gmax;
        if (auto why = degeneracy(cur, free, P); !why.empty()) return finish(RelaxStatus::Degenerated, why);
        if (gmax <= P.grad_tol) {
            if (!cur.embedded()) return finish(RelaxStatus::Degenerated, "lost embedding");
            return finish(RelaxStatus::Converged, "");
        }
        if (it >= P.max_iters) return finish(RelaxStatus::MaxItersExceeded, "");

        if (P.step_rule == StepRule::Backtracking && !d_prev.empty()) {
            double ss = 0, sy = 0;
            for (int v : free) {
                ss += s_prev[v].norm2();
                sy += dot(s_prev[v], d_prev[v] - d[v]);
            }
            t = sy > 0 ? ss / sy : 2 * t;
        }
        // no vertex may travel more than half its shortest edge
        double cap = std::numeric_limits<double>::infinity();
        for (int v : free) {
            double dn = d[v].norm();
            if (dn == 0) continue;
            double shortest = std::numeric_limits<double>::infinity();
            for (const auto& sp : cur.rotation(v)) shortest = std::min(shortest, cur.edge_length(sp.edge));
            cap = std::min(cap, 0.5 * shortest / dn);
        }
        double tt = std::min(t, cap);

        std::vector<Point> cand = pos;
        bool accepted = false;
        double Lc = L;
        for (int ls = 0; ls < 200; ++ls, tt *= P.shrink) {
            bool inside = true;
            for (int v : free) {
                double dn = d[v].norm();
                cand[v] = dn > 0 ? exp_map(S, pos[v], d[v].arg(), tt * dn) : pos[v];
                if (!in_chart(S, cand[v])) inside = false;
            }
            if (!inside) continue;
            Lc = length_at(S, cur.edges(), cand);
            if (P.step_rule == StepRule::Fixed || (Lc <= L - P.armijo_c * tt * g2 && Lc < L)) {
                accepted = true;
                break;
            }
            // below the resolution of L the sufficient-decrease test is noise.
            // Accept when the slope at the candidate still points downhill, i.e.
            // the step stayed inside the descending stretch of the line.
            const double floor = 1024 * std::numeric_limits<double>::epsilon() * L;
            if (tt * g2 < floor && Lc <= L + floor / 16) {
                Net probe = net0.moved(cand, Validation::Light);
                double slope = 0;
                for (int v : free) slope += dot(probe.imbalance_vector(v), d[v]);
                if (slope > 0) {
                    accepted = true;
                    break;
                }
            }
            if (tt < 1e-300) break;
        }
        if (!accepted) return finish(RelaxStatus::Degenerated, "line search stalled");

        s_prev.assign(net0.num_vertices(), Vec2{});
        for (int v : free) s_prev[v] = d[v] * tt;
        d_prev = d;
        t = tt;
        pos = cand;
        L = Lc;
        res.length_history.push_back(L);
        cur = net0.moved(pos, Validation::Light);
    }
}

std::optional<Point> torricelli_point(Point a, Point b, Point c) {
    auto ang = [](Point p, Point q, Point r) { return std::abs(wrap_pi((q - p).arg() - (r - p).arg())); };
    if (ang(a, b, c) >= rad(120) || ang(b, a, c) >= rad(120) || ang(c, a, b) >= rad(120)) return std::nullopt;
    // apex of the equilateral triangle on (p,q) away from r
    auto apex = [](Point p, Point q, Point r) {
        Vec2 m = (p + q) / 2, h = perp(q - p) * (std::sqrt(3.0) / 2);
        Vec2 x = m + h;
        if (cross(q - p, x - p) * cross(q - p, r - p) > 0) x = m - h;
        return x;
    };
    Vec2 a2 = apex(b, c, a), b2 = apex(a, c, b);
    // intersect a -> a2 with b -> b2
    Vec2 r = a2 - a, s = b2 - b;
    double den = cross(r, s);
    if (std::abs(den) < 1e-300) return std::nullopt;
    double u = cross(b - a, s) / den;
    return a + r * u;
}

std::optional<Point> fermat_point(const Surface& s, Point p1, Point p2, Point p3, RelaxParams params) {
    if (s.kind == SurfaceKind::Spherical)
        throw Error(ErrorKind::UnsupportedSurface, "Fermat point solver handles flat and hyperbolic charts");
    for (Point p : {p1, p2, p3}) check_point(s, p);
    Vec2 k1 = planar(s, p1), k2 = planar(s, p2), k3 = planar(s, p3);
    double scale = std::max({(k2 - k1).norm(), (k3 - k1).norm(), (k3 - k2).norm()});
    if (scale == 0 || std::abs(cross(k2 - k1, k3 - k1)) <= 1e-12 * scale * scale)
        throw Error(ErrorKind::CollinearInput, "triangle is degenerate");
    const Point P[3] = {p1, p2, p3};
    for (int i = 0; i < 3; ++i) {
        Point a = P[i], b = P[(i + 1) % 3], c = P[(i + 2) % 3];
        double ang = angle_ccw(direction(s, a, b), direction(s, a, c));
        ang = std::min(ang, kTwoPi - ang);
        if (ang >= rad(120)) return std::nullopt;
    }
    Point start = from_klein((k1 + k2 + k3) / 3);
    if (s.kind == SurfaceKind::Flat) start = (p1 + p2 + p3) / 3;
    std::vector<Vertex> vs{{"P1", p1, Role::Fixed}, {"P2", p2, Role::Fixed}, {"P3", p3, Role::Fixed},
                           {"F", start, Role::Free}};
    Net net(s, vs, {{0, 3}, {1, 3}, {2, 3}}, Validation::Light);
    params.grad_tol = std::min(params.grad_tol, 1e-12);
    auto r = relax(net, params);
    std::optional<Point> out;
    if (r.status == RelaxStatus::Converged) out = r.net.pos(3);
    if (s.kind == SurfaceKind::Flat) {
        auto t = torricelli_point(p1, p2, p3);
        if (!out) return t;
        if (t && (*t - *out).norm() > 1e-7 * std::max(1.0, scale))
            throw Error(ErrorKind::PreconditionViolated, "relaxed and analytic Fermat points disagree");
    }
    return out;
}

} // namespace gnet
