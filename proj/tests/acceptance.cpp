// Acceptance checks, one criterion per invocation:  acceptance --criterion N
#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>

#include "gnet/constructions.hpp"
#include "gnet/relax.hpp"
#include "gnet/sampling.hpp"
#include "gnet/staircase.hpp"
#include "gnet/walks.hpp"
#include "support.hpp"

using namespace gnet;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double angle_at(Point p, Point a, Point b) {
    Vec2 u = a - p, v = b - p;
    return std::acos(std::clamp(dot(u, v) / (u.norm() * v.norm()), -1.0, 1.0));
}

// ---- 1 -------------------------------------------------------------------

Verdict ac1() {
    auto t0 = Clock::now();
    auto res = build_fig2_net({2, 1, 5});
    double secs = seconds_since(t0);
    auto& c = res.census;
    auto by = [&](int d) { return c.balanced_by_degree.count(d) ? c.balanced_by_degree.at(d) : 0; };
    double zxa = deg(angle_at(res.named.at("X"), res.named.at("Z"), res.named.at("A")));
    bool ok = c.unbalanced == 4 && c.balanced == 27 && by(3) == 8 && by(4) == 18 && by(6) == 1 &&
              c.max_imbalance < 1e-6 && std::abs(zxa - 104) <= 1 && secs < 5;
    return {ok, fmt("unbalanced=%d balanced=%d (want 4/27) deg3=%d deg4=%d deg6=%d (want 8/18/1) "
                    "max_imbalance=%.3g ZXA=%.4f deg time=%.2fs",
                    c.unbalanced, c.balanced, by(3), by(4), by(6), c.max_imbalance, zxa, secs)};
}

// ---- 2, 3 ----------------------------------------------------------------

Verdict ac2() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string d;
    for (auto kind : {SurfaceKind::Flat, SurfaceKind::Hyperbolic}) {
        SearchParams sp;
        sp.surface = kind;
        auto rep = search_counterexamples(3, 1000, 42, sp);
        int two_plus = 0;
        for (auto& t : rep.results)
            if (t.status == RelaxStatus::Converged && t.balanced >= 2) ++two_plus;
        ok = ok && rep.f(3) <= 1 && two_plus == 0 && rep.converged > 0;
        d += fmt("%s: converged=%d f=%d with>=2=%d; ", to_string(kind), rep.converged, rep.f(3), two_plus);
    }
    double secs = seconds_since(t0);
    ok = ok && secs < 600;
    return {ok, d + fmt("time=%.1fs", secs)};
}

Verdict ac3() {
    bool ok = true;
    std::string d;
    for (int n : {0, 1, 2}) {
        auto rep = search_counterexamples(n, 1000, 7);
        int balanced_seen = 0;
        for (auto& t : rep.results)
            if (t.status == RelaxStatus::Converged) balanced_seen = std::max(balanced_seen, t.balanced);
        ok = ok && rep.f(n) == 0 && balanced_seen == 0;
        // relaxation has nowhere balanced to go, so trials collapse rather than converge
        d += fmt("n=%d: converged=%d degenerate=%d f=%d; ", n, rep.converged, rep.degenerate, rep.f(n));
    }
    return {ok, d};
}

// ---- 4 -------------------------------------------------------------------

Verdict ac4() {
    auto h = build_hemisphere_net();
    auto& n = h.net;
    Vec3 P[3] = {sphere_vec(n.pos(n.index("A"))), sphere_vec(n.pos(n.index("B"))), sphere_vec(n.pos(n.index("C")))};
    double ang[3], sum = 0;
    for (int i = 0; i < 3; ++i) {
        Vec3 p = P[i], a = P[(i + 1) % 3], b = P[(i + 2) % 3];
        Vec3 ta = a - p * dot(a, p), tb = b - p * dot(b, p);
        ang[i] = std::acos(dot(ta, tb) / std::sqrt(dot(ta, ta) * dot(tb, tb)));
        sum += ang[i];
    }
    double excess = sum - kPi; // area on the unit sphere
    double worst = 0;
    for (double a : ang) worst = std::max(worst, std::abs(deg(a) - 120));
    int bal = classify_vertices(n).balanced();
    double cosc = std::cos(h.colatitude);
    bool ok = std::abs(excess - kPi) < 1e-8 && std::abs(h.area - kPi) < 1e-8 && worst < 1e-8 && bal == 3 &&
              std::abs(cosc - 1.0 / 3) < 1e-8;
    return {ok, fmt("area=%.12f excess=%.12f max|angle-120|=%.2e deg balanced=%d cos(colat)=%.12f", h.area, excess,
                    worst, bal, cosc)};
}

// ---- 5 -------------------------------------------------------------------

// star-shaped polygon around the origin: sorted random angles, random radii
std::vector<Vec2> star_polygon(std::mt19937_64& rng, int k, double rmin, double rmax) {
    std::uniform_real_distribution<double> U(0, 1);
    for (;;) {
        std::vector<double> th(k);
        for (auto& t : th) t = kTwoPi * U(rng);
        std::sort(th.begin(), th.end());
        bool wide = false;
        for (int i = 0; i < k; ++i) {
            double g = i + 1 < k ? th[i + 1] - th[i] : th[0] + kTwoPi - th[i];
            if (g >= kPi * 0.95 || g < 0.02) wide = true;
        }
        if (wide) continue;
        std::vector<Vec2> p;
        for (double t : th) p.push_back(polar(rmin + (rmax - rmin) * U(rng), t));
        return p;
    }
}

Net cycle_net(const Surface& s, const std::vector<Point>& pts) {
    std::vector<Vertex> vs;
    std::vector<std::pair<int, int>> es;
    for (size_t i = 0; i < pts.size(); ++i) {
        vs.push_back({"p" + std::to_string(i), pts[i], Role::Fixed});
        es.emplace_back(int(i), int((i + 1) % pts.size()));
    }
    return Net(s, vs, es);
}

Verdict ac5() {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> K(3, 12);
    int flat = 0, flat_bad = 0, flat_skipped = 0;
    double flat_worst = 0;
    auto flat_case = [&](const Net& net, const Walk& w) {
        auto cls = classify(net, w);
        if (!cls.essentially_simple || !cls.counterclockwise) {
            ++flat_bad;
            return;
        }
        double r = std::abs(total_turn(net, w) - kTwoPi);
        flat_worst = std::max(flat_worst, r);
        if (r >= 1e-8) ++flat_bad;
        ++flat;
    };
    // simple polygons
    for (int i = 0; i < 700; ++i) {
        auto pts = star_polygon(rng, K(rng), 0.3, 2.0);
        Net n = cycle_net(Surface::flat(), pts);
        std::vector<int> order(pts.size());
        for (size_t j = 0; j < order.size(); ++j) order[j] = int(j);
        flat_case(n, walk_through(n, order, true));
    }
    // boundary walks of relaxed nets: backtracks and repeated vertices
    SearchParams sp;
    for (std::uint64_t i = 0; flat < 1000 && i < 20000; ++i) {
        Net n = random_trial_net(3 + int(i % 4), sp, 55, i);
        try {
            flat_case(n, circumference(n));
        } catch (const Error&) {
            ++flat_skipped;
        }
    }

    const Surface H = Surface::hyperbolic();
    int hyp = 0, hyp_bad = 0;
    double hyp_worst = 0;
    while (hyp < 200) {
        // straight in the Klein image means geodesic; the origin is in the kernel
        auto kp = star_polygon(rng, K(rng), 0.1, 0.9);
        std::vector<Point> pts;
        for (auto& k : kp) pts.push_back(from_klein(k));
        Net n = cycle_net(H, pts);
        std::vector<int> order(pts.size());
        for (size_t j = 0; j < order.size(); ++j) order[j] = int(j);
        Walk w = walk_through(n, order, true);
        // fan of geodesic triangles from the origin, each area = pi - angle sum
        double area = 0;
        for (size_t j = 0; j < pts.size(); ++j) {
            Point a = pts[j], b = pts[(j + 1) % pts.size()];
            double A = gt::poincare_dist(a, b), B = gt::poincare_dist({0, 0}, b), C = gt::poincare_dist({0, 0}, a);
            area += kPi - gt::hyperbolic_angle_sum(A, B, C);
        }
        double r = std::abs(gauss_bonnet_residual(n, w) - std::abs(H.curvature) * area);
        hyp_worst = std::max(hyp_worst, r);
        if (r >= 1e-6) ++hyp_bad;
        ++hyp;
    }
    bool ok = flat >= 1000 && flat_bad == 0 && hyp_bad == 0;
    return {ok, fmt("flat walks=%d failures=%d worst=%.2e (skipped %d); hyperbolic polygons=%d failures=%d worst=%.2e",
                    flat, flat_bad, flat_worst, flat_skipped, hyp, hyp_bad, hyp_worst)};
}

// ---- 6 -------------------------------------------------------------------

Verdict ac6() {
    int lib_viol = 0, own_viol = 0, wide = 0, wide_bad = 0;
    const double tol = 1e-9;
    for (int i = 0; i < 10000; ++i) {
        auto rng = trial_rng(6, std::uint64_t(i));
        int n = 3 + i % 7;
        auto d = random_balanced_directions(n, rng);
        lib_viol += int(check_local_lemmas(d).size());
        std::sort(d.begin(), d.end());
        for (int j = 0; j < n; ++j) {
            double prev = std::fmod(d[j] - d[(j + n - 1) % n] + 2 * kTwoPi, kTwoPi);
            double next = std::fmod(d[(j + 1) % n] - d[j] + 2 * kTwoPi, kTwoPi);
            double comb = prev + next;
            bool bad = n == 3 ? std::abs(comb - rad(240)) > 1e-7
                     : n == 4 ? std::abs(comb - kPi) > 1e-7
                              : comb >= kPi + 2 * std::asin(1.0 / (n - 1));
            if (bad) ++own_viol;
            if (n >= 5 && comb >= kPi - tol) {
                ++wide;
                if (n % 2 == 0 || !(prev > rad(60) && prev < rad(120) && next > rad(60) && next < rad(120)))
                    ++wide_bad;
            }
        }
    }
    // even degrees with a forced wide angle never balance
    int restarts = 0, found = 0;
    double floor = 1e9;
    const int per_degree = 25000;
    for (int deg_ : {6, 8, 10, 12}) {
        auto e = even_degree_search(deg_, per_degree, 66);
        restarts += e.restarts;
        found += e.below_tol;
        floor = std::min(floor, e.min_imbalance);
    }
    bool ok = lib_viol == 0 && own_viol == 0 && wide_bad == 0 && found == 0 && restarts >= 100000;
    return {ok, fmt("vertices=10000 library_violations=%d recomputed_violations=%d wide=%d wide_bad=%d; "
                    "even restarts=%d below_tol=%d min_imbalance=%.3g",
                    lib_viol, own_viol, wide, wide_bad, restarts, found, floor)};
}

// ---- 7 -------------------------------------------------------------------

Verdict ac7() {
    auto arc = arc_fact_monte_carlo(100000, 7);
    int bad = 0, not_wide = 0;
    for (int i = 0; i < 1000; ++i) {
        auto rng = trial_rng(77, std::uint64_t(i));
        int n = 5 + 2 * (i % 3);
        auto d = random_wide_configuration(n, rng);
        // independent look at the input: balanced and wide
        Vec2 s{0, 0};
        for (double t : d) s += polar(1, t);
        auto c = combined_angles(d);
        if (s.norm() > 1e-9 || *std::max_element(c.begin(), c.end()) < kPi) ++not_wide;
        if (!sum_walk_verify(d).ok()) ++bad;
    }
    bool ok = arc.ok() && bad == 0 && not_wide == 0;
    return {ok, fmt("arcs=100000 samples=%d outside=%d corner=%d not_interior=%d; sum walks=1000 failures=%d "
                    "bad_inputs=%d",
                    arc.samples, arc.outside, arc.corner, arc.not_interior, bad, not_wide)};
}

// ---- 8 -------------------------------------------------------------------

double oracle_length(const Net& net, const std::vector<Point>& pos) {
    double L = 0;
    for (auto [a, b] : net.edges()) {
        Point p = pos[a], q = pos[b];
        switch (net.surface().kind) {
        case SurfaceKind::Flat: L += (p - q).norm(); break;
        case SurfaceKind::Hyperbolic: L += gt::poincare_dist(p, q) * net.surface().scale(); break;
        case SurfaceKind::Spherical: L += gt::sphere_dist(p, q) * net.surface().scale(); break;
        }
    }
    return L;
}

Verdict ac8() {
    const double h = 1e-6;
    int nets = 0, bad_grad = 0, bad_descent = 0, relaxed = 0;
    double worst = 0;
    std::string d;
    for (auto kind : {SurfaceKind::Flat, SurfaceKind::Hyperbolic, SurfaceKind::Spherical}) {
        SearchParams sp;
        sp.surface = kind;
        for (int i = 0; i < 100; ++i) {
            Net net = random_trial_net(3 + i % 3, sp, 8, std::uint64_t(i));
            ++nets;
            auto pos = net.positions();
            for (int v = 0; v < net.num_vertices(); ++v) {
                if (net.fixed(v)) continue;
                auto at = [&](double th) {
                    auto p = pos;
                    p[v] = exp_map(net.surface(), pos[v], th, h);
                    return oracle_length(net, p);
                };
                Vec2 fd{(at(0) - at(kPi)) / (2 * h), (at(kPi / 2) - at(1.5 * kPi)) / (2 * h)};
                double rel = (length_gradient(net, v) - fd).norm() / std::max(1.0, fd.norm());
                worst = std::max(worst, rel);
                if (rel >= 1e-6) ++bad_grad;
            }
            auto r = relax(net, sp.relax);
            ++relaxed;
            auto& hist = r.length_history;
            for (size_t k = 1; k < hist.size(); ++k)
                if (hist[k] - hist[k - 1] >= 64 * 2.3e-16 * hist[k - 1]) {
                    ++bad_descent;
                    break;
                }
        }
    }
    bool ok = bad_grad == 0 && bad_descent == 0;
    return {ok, fmt("nets=%d gradient_failures=%d worst_rel=%.2e; relaxations=%d non-monotone=%d", nets, bad_grad, worst,
                    relaxed, bad_descent)};
}

// ---- 9 -------------------------------------------------------------------

Verdict ac9() {
    Point c{0.3, -0.2};
    auto eq = fermat_point(Surface::flat(), c + polar(1, 0.4), c + polar(1, 0.4 + kTwoPi / 3),
                           c + polar(1, 0.4 + 2 * kTwoPi / 3));
    double eq_err = eq ? (*eq - c).norm() : 1e9;
    bool none150 = !fermat_point(Surface::flat(), {0, 0}, polar(1, 0), polar(1, rad(150)));
    bool none120 = !fermat_point(Surface::flat(), {0, 0}, polar(1, 0), polar(1.5, rad(120)));

    Point P[3] = {{0, 0}, {1, 0}, {0, 1}};
    auto len = [&](double x, double y) {
        double s = 0;
        for (auto& p : P) s += std::hypot(x - p.x, y - p.y);
        return s;
    };
    double bx = 0, by = 0, best = 1e9;
    const int G = 400;
    for (int i = 0; i <= G; ++i)
        for (int j = 0; j <= G; ++j)
            if (double l = len(double(i) / G, double(j) / G); l < best) best = l, bx = double(i) / G, by = double(j) / G;
    for (double st = 1.0 / G; st > 1e-13; st *= 0.5)
        for (bool moved = true; moved;) {
            moved = false;
            for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}})
                if (double l = len(bx + dx * st, by + dy * st); l < best)
                    best = l, bx += dx * st, by += dy * st, moved = true;
        }
    auto ri = fermat_point(Surface::flat(), P[0], P[1], P[2]);
    double ri_err = ri ? (*ri - Vec2{bx, by}).norm() : 1e9;
    bool ok = eq_err < 1e-9 && none150 && none120 && ri_err < 1e-6;
    return {ok, fmt("equilateral error=%.2e; 150deg->None=%s 120deg->None=%s; right isosceles vs grid=%.2e", eq_err,
                    none150 ? "yes" : "no", none120 ? "yes" : "no", ri_err)};
}

// ---- 10 ------------------------------------------------------------------

Verdict ac10() {
    int nets = 0, bad = 0;
    std::string first;
    auto check = [&](const Net& n) {
        auto cls = classify_vertices(n);
        if (cls.unbalanced() != 3 || cls.balanced() < 1) return;
        ++nets;
        auto r = circumference_check(n);
        if (!r.ok()) {
            ++bad;
            if (first.empty())
                first = fmt(" first failure: simple=%d missing=%zu repeated=%zu nonneg=%zu visited=%d",
                            r.cls.essentially_simple, r.unbalanced_missing.size(), r.unbalanced_repeated.size(),
                            r.nonnegative_turns.size(), r.unbalanced_visited);
        }
    };
    for (auto kind : {SurfaceKind::Flat, SurfaceKind::Hyperbolic}) {
        SearchParams sp;
        sp.surface = kind;
        sp.keep_nets = true;
        auto rep = search_counterexamples(3, 1000, 10, sp);
        for (auto& n : rep.kept) check(n);
    }
    // Fermat trees on random acute triangles
    std::mt19937_64 rng(10);
    for (int i = 0; i < 200; ++i) {
        Point a = gt::random_disk_point(rng, 1), b = gt::random_disk_point(rng, 1), c = gt::random_disk_point(rng, 1);
        try {
            check(build_fermat_net(Surface::flat(), a, b, c));
        } catch (const Error&) {
        }
    }
    bool ok = nets > 0 && bad == 0;
    return {ok, fmt("nets=%d failures=%d%s", nets, bad, first.c_str())};
}

} // namespace

int main(int argc, char** argv) {
    int which = 0;
    for (int i = 1; i + 1 < argc; ++i)
        if (!std::strcmp(argv[i], "--criterion")) which = std::atoi(argv[i + 1]);
    const std::function<Verdict()> table[] = {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10};
    if (which < 1 || which > 10) {
        std::fprintf(stderr, "usage: acceptance --criterion N   (1..10)\n");
        return 2;
    }
    Verdict v;
    try {
        v = table[which - 1]();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("AC%d %s %s\n", which, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    return v.pass ? 0 : 1;
}
