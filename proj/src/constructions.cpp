#include "gnet/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace gnet {

Net build_fermat_net(const Surface& s, Point p1, Point p2, Point p3) {
    auto f = fermat_point(s, p1, p2, p3);
    if (!f) throw Error(ErrorKind::NoFermatPoint, "a triangle angle is 120 deg or more");
    std::vector<Vertex> vs{{"P1", p1, Role::Fixed}, {"P2", p2, Role::Fixed}, {"P3", p3, Role::Fixed},
                           {"F", *f, Role::Free}};
    return Net(s, vs, {{0, 3}, {1, 3}, {2, 3}});
}

Census census(const Net& net, double tol) {
    auto rep = classify_vertices(net, tol);
    Census c;
    c.balanced = rep.balanced();
    c.unbalanced = rep.unbalanced();
    c.balanced_by_degree = rep.balanced_degree_census();
    c.max_imbalance = rep.max_balanced_imbalance();
    return c;
}

namespace {

// unsigned angle at p between rays to a and b
double angle_at(Point p, Point a, Point b) {
    double x = std::abs(wrap_pi((a - p).arg() - (b - p).arg()));
    return x;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, const char* what) {
    double flo = f(lo), fhi = f(hi);
    if (flo * fhi > 0) throw Error(ErrorKind::BisectionNoSignChange, what);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi), fm = f(mid);
        if (std::abs(fm) < 1e-14 || hi - lo < 1e-15) return mid;
        if ((fm > 0) == (fhi > 0)) hi = mid, fhi = fm;
        else lo = mid, flo = fm;
    }
    return 0.5 * (lo + hi);
}

struct Seg {
    int a, b;
};

} // namespace

Fig2Result build_fig2_net(const Fig2Params& prm) {
    const double R = prm.R, r = prm.r, d = prm.d;
    if (!(R > 0 && r > 0)) throw Error(ErrorKind::ParamConstraintViolated, "radii must be positive");
    if (!(d > R + r)) throw Error(ErrorKind::ParamConstraintViolated, "d > R + r");
    if (R == r) throw Error(ErrorKind::ParamConstraintViolated, "R != r");

    Fig2Result out;
    auto& N = out.named;
    const Point P{0, d}, Q{0, 0};
    N["P"] = P;
    N["Q"] = Q;
    Point A = P + polar(R, rad(210)), C = P + polar(R, rad(330));
    Point Z = Q + polar(r, rad(30)), X = Q + polar(r, rad(150));
    out.zxa = angle_at(X, Z, A);
    if (!(out.zxa < rad(120))) throw Error(ErrorKind::ParamConstraintViolated, "ZXA < 120 deg");

    Point B2{0, d - R}, Y2{0, r};
    double phi = bisect([&](double t) { return angle_at(P + polar(R, t), X, C) - rad(120); }, rad(210), rad(270),
                        "B1 on the arc about P");
    double psi = bisect([&](double t) { return angle_at(Q + polar(r, t), Z, A) - rad(120); }, rad(90), rad(150),
                        "Y1 on the arc about Q");
    Point B1 = P + polar(R, phi), Y1 = Q + polar(r, psi);
    Point B3{-B1.x, B1.y}, Y3{-Y1.x, Y1.y};

    // G': two free vertices between A, X and Z, C
    Point cen = (A + X + Z + C) / 4;
    Net g(Surface::flat(),
          {{"A", A, Role::Fixed}, {"X", X, Role::Fixed}, {"Z", Z, Role::Fixed}, {"C", C, Role::Fixed},
           {"L", ((A + X) / 2 + cen) / 2, Role::Free},
           {"N", ((C + Z) / 2 + cen) / 2, Role::Free}},
          {{0, 4}, {1, 4}, {4, 5}, {5, 2}, {5, 3}});
    RelaxParams rp;
    rp.grad_tol = 1e-12;
    auto gr = relax(g, rp);
    if (gr.status != RelaxStatus::Converged)
        throw Error(ErrorKind::ParamConstraintViolated, "G' does not relax to a balanced pair: " + gr.reason);
    Point Lp = gr.net.pos(4), Np = gr.net.pos(5);

    std::vector<Vertex> vs{{"A", A, Role::Fixed},   {"C", C, Role::Fixed},   {"X", X, Role::Fixed},
                           {"Z", Z, Role::Fixed},   {"B1", B1, Role::Free},  {"B2", B2, Role::Free},
                           {"B3", B3, Role::Free},  {"Y1", Y1, Role::Free},  {"Y2", Y2, Role::Free},
                           {"Y3", Y3, Role::Free},  {"L", Lp, Role::Free},   {"N", Np, Role::Free}};
    for (const auto& v : vs) N[v.id] = v.pos;
    enum { iA, iC, iX, iZ, iB1, iB2, iB3, iY1, iY2, iY3, iL, iN };
    std::vector<Seg> segs{{iA, iB1}, {iC, iB1}, {iX, iB1}, {iA, iB2}, {iC, iB2}, {iB2, iY2},
                          {iA, iB3}, {iC, iB3}, {iZ, iB3}, {iX, iY1}, {iZ, iY1}, {iA, iY1},
                          {iX, iY2}, {iZ, iY2}, {iX, iY3}, {iZ, iY3}, {iC, iY3}, {iA, iL},
                          {iX, iL},  {iL, iN},  {iN, iZ},  {iN, iC},  {iA, iZ},  {iX, iC}};

    // pairwise proper crossings, merged within 1e-9
    std::vector<std::vector<std::pair<double, int>>> on_seg(segs.size());
    std::vector<Point> xs;
    for (size_t i = 0; i < segs.size(); ++i)
        for (size_t j = i + 1; j < segs.size(); ++j) {
            Point a = vs[segs[i].a].pos, b = vs[segs[i].b].pos, c = vs[segs[j].a].pos, e = vs[segs[j].b].pos;
            if (!segments_cross(Surface::flat(), a, b, c, e, 1e-12)) continue;
            ++out.crossings;
            Vec2 u = b - a, w = e - c;
            double den = cross(u, w);
            double t = cross(c - a, w) / den, s = cross(c - a, u) / den;
            Point x = a + u * t;
            int id = -1;
            for (size_t k = 0; k < xs.size(); ++k)
                if ((xs[k] - x).norm() < 1e-9) id = int(k);
            if (id < 0) {
                id = int(xs.size());
                xs.push_back(x);
            }
            on_seg[i].push_back({t, id});
            on_seg[j].push_back({s, id});
        }
    const int base = int(vs.size());
    int ix = 0;
    for (size_t k = 0; k < xs.size(); ++k) {
        bool on_axis = std::abs(xs[k].x) < 1e-9;
        int mult = 0;
        for (const auto& os : on_seg)
            for (const auto& [t, id] : os) mult += id == int(k);
        std::string name = (on_axis && mult >= 3) ? "M" : "I" + std::to_string(++ix);
        vs.push_back({name, xs[k], Role::Free});
        if (name == "M") N["M"] = xs[k];
    }
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < segs.size(); ++i) {
        auto pts = on_seg[i];
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end(), [](auto& x, auto& y) { return x.second == y.second; }),
                  pts.end());
        int prev = segs[i].a;
        for (auto& [t, id] : pts) {
            edges.emplace_back(prev, base + id);
            prev = base + id;
        }
        edges.emplace_back(prev, segs[i].b);
    }
    out.net = Net(Surface::flat(), std::move(vs), std::move(edges));
    out.census = census(out.net);
    return out;
}

HemisphereResult build_hemisphere_net(double lift_eps) {
    const Surface S = Surface::spherical(1.0);
    auto tri = [](double c) {
        return std::vector<Point>{{0, c}, {rad(120), c}, {rad(240), c}};
    };
    HemisphereResult h;
    h.colatitude = bisect([&](double c) { return polygon_area(S, tri(c)) - kPi; }, 0.3, kPi / 2 - 1e-6,
                          "hemisphere triangle colatitude");
    auto t = tri(h.colatitude);
    h.area = polygon_area(S, t);
    for (int i = 0; i < 3; ++i) {
        Point cur = t[i], next = t[(i + 1) % 3], prev = t[(i + 2) % 3];
        h.angles[i] = angle_ccw(direction(S, cur, next), direction(S, cur, prev));
    }
    double eq = kPi / 2 - lift_eps;
    std::vector<Vertex> vs{{"A", t[0], Role::Free},       {"B", t[1], Role::Free},       {"C", t[2], Role::Free},
                           {"X", {0, eq}, Role::Fixed},   {"Y", {rad(120), eq}, Role::Fixed},
                           {"Z", {rad(240), eq}, Role::Fixed}};
    h.net = Net(S, vs, {{3, 0}, {4, 1}, {5, 2}, {0, 1}, {1, 2}, {2, 0}});
    return h;
}

} // namespace gnet
