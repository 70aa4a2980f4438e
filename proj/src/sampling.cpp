#include "gnet/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "gnet/error.hpp"
#include "gnet/net.hpp"
#include "gnet/vec2.hpp"

namespace gnet {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq sq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index), std::uint32_t(index >> 32)};
    return std::mt19937_64(sq);
}

std::vector<double> random_balanced_directions(int n, std::mt19937_64& rng, double min_gap) {
    if (n < 3) throw Error(ErrorKind::PreconditionViolated, "need at least three directions");
    std::uniform_real_distribution<double> U(0, kTwoPi);
    for (;;) {
        std::vector<double> d;
        Vec2 S;
        for (int i = 0; i < n - 2; ++i) {
            d.push_back(U(rng));
            S += polar(1, d.back());
        }
        Vec2 T = -S;
        double t = T.norm();
        if (t > 2 || t < 1e-9) continue;
        Vec2 h = T / 2, off = perp(T / t) * std::sqrt(std::max(0.0, 1 - t * t / 4));
        d.push_back((h + off).arg());
        d.push_back((h - off).arg());
        for (auto& x : d) x = wrap_2pi(x);
        std::sort(d.begin(), d.end());
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            double g = wrap_2pi(d[(i + 1) % n] - d[i]);
            if (i == n - 1) g = d[0] + kTwoPi - d[n - 1];
            ok = g >= min_gap;
        }
        if (ok) return d;
    }
}

std::vector<double> random_wide_configuration(int n, std::mt19937_64& rng, int max_tries) {
    if (n < 5 || n % 2 == 0) throw Error(ErrorKind::PreconditionViolated, "need odd degree 5 or more");
    // proposal: one vector pointing down, the other n-3 split evenly into
    // near-horizontal left and right ones; the closing pair then lies almost
    // horizontal too and ends up flanking the lower vector
    std::uniform_real_distribution<double> U(0, 1);
    for (int t = 0; t < max_tries; ++t) {
        std::vector<double> d{1.5 * kPi + (U(rng) - 0.5)};
        Vec2 S = polar(1, d[0]);
        double tmax = U(rng);
        for (int i = 0; i < n - 3; ++i) {
            double th = tmax * U(rng);
            d.push_back(i % 2 ? kPi - th : th);
            S += polar(1, d.back());
        }
        Vec2 T = -S;
        double len = T.norm();
        if (len > 2 || len < 1e-9) continue;
        Vec2 h = T / 2, off = perp(T / len) * std::sqrt(std::max(0.0, 1 - len * len / 4));
        d.push_back((h + off).arg());
        d.push_back((h - off).arg());
        for (auto& x : d) x = wrap_2pi(x);
        std::sort(d.begin(), d.end());
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) ok = wrap_2pi(d[(i + 1) % n] - d[i]) >= 1e-6;
        if (!ok) continue;
        auto c = combined_angles(d);
        if (*std::max_element(c.begin(), c.end()) >= kPi) return d;
    }
    throw Error(ErrorKind::PreconditionViolated, "no wide configuration found");
}

ArcFactReport arc_fact_monte_carlo(int arcs, std::uint64_t seed, int samples_per_arc) {
    ArcFactReport total;
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < arcs; ++i) {
        auto rng = trial_rng(seed, std::uint64_t(i));
        int m = int(U(rng) * 9) - 4;
        Vec2 p;
        if (U(rng) < 0.2) {
            int l = int(U(rng) * 4);
            p = {double(m) + (U(rng) < 0.5 ? -l : l), double(l)};
        } else if (U(rng) < 0.25) {
            int l = int(U(rng) * 4);
            double t = (kPi / 2) * U(rng);
            p = U(rng) < 0.5 ? Vec2{m - l - 1.0, double(l)} + polar(1, t)
                             : Vec2{m + l + 1.0, double(l)} + polar(1, kPi - t);
        } else {
            do p = {m - 5 + 10 * U(rng), 5 * U(rng)};
            while (in_region(p, m) == RegionClass::Outside);
        }
        int C = U(rng) < 0.5 ? -1 : 1;
        double th = 0.999999 * (kPi / 2) * U(rng);
        auto r = arc_fact_check(p, C, th, m, samples_per_arc);
        total.samples += r.samples;
        total.outside += r.outside;
        total.corner += r.corner;
        total.not_interior += r.not_interior;
    }
    return total;
}

namespace {

double sigmoid(double x) {
    if (x >= 0) return 1 / (1 + std::exp(-x));
    double e = std::exp(x);
    return e / (1 + e);
}

struct EvenParam {
    int n;
    double delta;

    // a = pi, b in [pi+delta, 2pi-delta], c in [0, ...), n-3 others in (c, pi)
    std::vector<double> dirs(const std::vector<double>& u) const {
        int k = n - 3;
        double b = kPi + delta + (kPi - 2 * delta) * sigmoid(u[0]);
        double c = (kPi - (k + 1) * delta) * sigmoid(u[1]);
        double mx = *std::max_element(u.begin() + 2, u.end());
        std::vector<double> w(k + 1);
        double ws = 0;
        for (int i = 0; i <= k; ++i) ws += (w[i] = std::exp(u[2 + i] - mx));
        double slack = kPi - c - (k + 1) * delta;
        std::vector<double> d{kPi, b, c};
        double pos = c;
        for (int i = 0; i < k; ++i) {
            pos += delta + slack * w[i] / ws;
            d.push_back(pos);
        }
        return d;
    }

    double f(const std::vector<double>& u) const {
        Vec2 s;
        for (double x : dirs(u)) s += polar(1, x);
        return s.norm2();
    }
};

std::vector<double> num_grad(const EvenParam& p, const std::vector<double>& u) {
    std::vector<double> g(u.size());
    std::vector<double> x = u;
    for (size_t i = 0; i < u.size(); ++i) {
        double h = 1e-7 * std::max(1.0, std::abs(u[i]));
        x[i] = u[i] + h;
        double fp = p.f(x);
        x[i] = u[i] - h;
        double fm = p.f(x);
        x[i] = u[i];
        g[i] = (fp - fm) / (2 * h);
    }
    return g;
}

// plain BFGS with Armijo backtracking
std::vector<double> bfgs(const EvenParam& p, std::vector<double> x, int iters) {
    const size_t m = x.size();
    std::vector<double> H(m * m, 0.0);
    for (size_t i = 0; i < m; ++i) H[i * m + i] = 1;
    double fx = p.f(x);
    auto g = num_grad(p, x);
    for (int it = 0; it < iters; ++it) {
        double gn = 0;
        for (double v : g) gn += v * v;
        if (gn < 1e-30 || fx < 1e-30) break;
        std::vector<double> dir(m, 0.0);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) dir[i] -= H[i * m + j] * g[j];
        double slope = 0;
        for (size_t i = 0; i < m; ++i) slope += dir[i] * g[i];
        if (slope >= 0) {
            std::fill(H.begin(), H.end(), 0.0);
            for (size_t i = 0; i < m; ++i) H[i * m + i] = 1, dir[i] = -g[i];
            slope = -gn;
        }
        double t = 1;
        std::vector<double> xn(m);
        double fn = fx;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
            for (size_t i = 0; i < m; ++i) xn[i] = x[i] + t * dir[i];
            fn = p.f(xn);
            if (fn <= fx + 1e-4 * t * slope) {
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        auto gnw = num_grad(p, xn);
        std::vector<double> s(m), y(m);
        double sy = 0;
        for (size_t i = 0; i < m; ++i) {
            s[i] = xn[i] - x[i];
            y[i] = gnw[i] - g[i];
            sy += s[i] * y[i];
        }
        if (sy > 1e-300) {
            std::vector<double> Hy(m, 0.0);
            for (size_t i = 0; i < m; ++i)
                for (size_t j = 0; j < m; ++j) Hy[i] += H[i * m + j] * y[j];
            double yHy = 0;
            for (size_t i = 0; i < m; ++i) yHy += y[i] * Hy[i];
            for (size_t i = 0; i < m; ++i)
                for (size_t j = 0; j < m; ++j)
                    H[i * m + j] += ((sy + yHy) * s[i] * s[j]) / (sy * sy) - (Hy[i] * s[j] + s[i] * Hy[j]) / sy;
        }
        x = xn;
        fx = fn;
        g = gnw;
    }
    return x;
}

} // namespace

EvenSearchReport even_degree_search(int degree, int restarts, std::uint64_t seed, double gap_min, double tol) {
    if (degree < 6 || degree % 2) throw Error(ErrorKind::PreconditionViolated, "even degree >= 6 expected");
    EvenParam p{degree, gap_min};
    EvenSearchReport r;
    r.degree = degree;
    r.restarts = restarts;
    r.gap_min = gap_min;
    r.min_imbalance = 1e300;
    std::normal_distribution<double> N(0, 2);
    for (int k = 0; k < restarts; ++k) {
        auto rng = trial_rng(seed, std::uint64_t(k));
        std::vector<double> u(degree);
        for (auto& x : u) x = N(rng);
        u = bfgs(p, u, 100);
        double imb = std::sqrt(p.f(u));
        if (imb <= tol) ++r.below_tol;
        if (imb < r.min_imbalance) {
            r.min_imbalance = imb;
            r.best_dirs = p.dirs(u);
        }
    }
    return r;
}

} // namespace gnet
