#include "gnet/staircase.hpp"

#include <algorithm>
#include <cmath>

#include "gnet/error.hpp"
#include "gnet/net.hpp"

namespace gnet {

const char* to_string(RegionClass c) {
    switch (c) {
    case RegionClass::Interior: return "interior";
    case RegionClass::Boundary: return "boundary";
    case RegionClass::Corner: return "corner";
    case RegionClass::Outside: return "outside";
    }
    return "?";
}

namespace {

// distance from p to the unit-circle arc about c between angles lo..hi (radians, lo < hi)
double arc_dist(Vec2 p, Vec2 c, double lo, double hi) {
    Vec2 d = p - c;
    double a = std::atan2(d.y, d.x);
    if (a >= lo && a <= hi) return std::abs(d.norm() - 1.0);
    Vec2 e0 = c + polar(1, lo), e1 = c + polar(1, hi);
    return std::min((p - e0).norm(), (p - e1).norm());
}

} // namespace

RegionClass in_region(Vec2 p, int m, double tol) {
    // corners (m -+ l, l)
    long l = std::lround(p.y);
    if (l >= 0) {
        if ((p - Vec2(m - double(l), double(l))).norm() <= tol) return RegionClass::Corner;
        if ((p - Vec2(m + double(l), double(l))).norm() <= tol) return RegionClass::Corner;
    }
    double bd = 1e300;
    long l0 = long(std::floor(p.y));
    for (long k = std::max(0L, l0 - 1); k <= std::max(0L, l0 + 1); ++k) {
        double kk = double(k);
        bd = std::min(bd, arc_dist(p, {m - kk - 1, kk}, 0, kPi / 2));
        bd = std::min(bd, arc_dist(p, {m + kk + 1, kk}, kPi / 2, kPi));
    }
    if (bd < tol) return RegionClass::Boundary;
    if (p.y <= 0) return RegionClass::Outside;
    double ly = p.y - double(l0);
    double h = std::sqrt(std::max(0.0, 1.0 - ly * ly));
    double xl = m - double(l0) - 1 + h, xr = m + double(l0) + 1 - h;
    return (p.x > xl && p.x < xr) ? RegionClass::Interior : RegionClass::Outside;
}

ArcFactReport arc_fact_check(Vec2 start, int C, double theta_max, int m, int samples, double tol) {
    RegionClass s0 = in_region(start, m, tol);
    if (s0 == RegionClass::Outside) throw Error(ErrorKind::StartOutsideRegion, "arc must start in the region");
    if (!(theta_max >= 0 && theta_max < kPi / 2))
        throw Error(ErrorKind::PreconditionViolated, "theta_max must lie in [0, 90) deg");
    ArcFactReport r;
    r.samples = samples;
    Vec2 base = start - unit_e(C, 0);
    for (int k = 1; k < samples; ++k) {
        double th = theta_max * k / (samples - 1);
        RegionClass c = in_region(base + unit_e(C, th), m, tol);
        if (c == RegionClass::Outside) ++r.outside;
        if (c == RegionClass::Corner) ++r.corner;
        if (s0 != RegionClass::Corner && c != RegionClass::Interior) ++r.not_interior;
    }
    return r;
}

SumWalkReport sum_walk_verify(const std::vector<double>& dirs_in, double tol) {
    std::vector<double> d = dirs_in;
    for (auto& x : d) x = wrap_2pi(x);
    std::sort(d.begin(), d.end());
    const int n = int(d.size());
    if (n < 5) throw Error(ErrorKind::PreconditionViolated, "need degree 5 or more");
    Vec2 sum;
    for (double x : d) sum += polar(1, x);
    if (sum.norm() > tol) throw Error(ErrorKind::PreconditionViolated, "configuration is not balanced");
    auto comb = combined_angles(d);
    int bi = -1;
    for (int i = 0; i < n; ++i)
        if (comb[i] >= kPi && (bi < 0 || comb[i] > comb[bi])) bi = i;
    if (bi < 0) throw Error(ErrorKind::PreconditionViolated, "no combined angle of 180 deg or more");

    int ai = (bi + n - 1) % n, ci = (bi + 1) % n;
    // rotate so that a sits on the negative x-axis
    auto rot = [&](int i) { return wrap_2pi(d[i] - d[ai] + kPi); };
    std::vector<int> order{ai, ci};
    for (int k = 2; k < n - 1; ++k) order.push_back((bi + k) % n);

    SumWalkReport rep;
    SumWalk& w = rep.walk;
    w.b = polar(1, rot(bi));
    for (int i : order) {
        double phi = rot(i);
        if (phi > kPi + 1e-15 && phi < kTwoPi - 1e-15)
            throw Error(ErrorKind::PreconditionViolated, "a vector other than b lies in the lower half plane");
        if (phi >= kTwoPi - 1e-15) phi = 0;
        if (phi > kPi) phi = kPi;
        if (std::abs(phi - kPi / 2) < 1e-15)
            throw Error(ErrorKind::PreconditionViolated, "vector on the positive y-axis (theta = 90 deg)");
        if (phi < kPi / 2) {
            w.C.push_back(1);
            w.theta.push_back(phi);
            ++w.R;
        } else {
            w.C.push_back(-1);
            w.theta.push_back(kPi - phi);
            ++w.L;
        }
    }
    w.m = w.R - w.L;
    Vec2 s(double(w.m), 0);
    w.s.push_back(s);
    for (size_t k = 0; k < w.C.size(); ++k) {
        s = s - unit_e(w.C[k], 0) + unit_e(w.C[k], w.theta[k]);
        w.s.push_back(s);
    }
    rep.all_in_region = true;
    for (size_t k = 0; k < w.s.size(); ++k)
        if (in_region(w.s[k], w.m, 1e-9) == RegionClass::Outside) {
            rep.all_in_region = false;
            rep.issues.push_back("s_" + std::to_string(k) + " outside the region");
        }
    rep.final_interior = in_region(w.s.back(), w.m, 1e-9) == RegionClass::Interior;
    if (!rep.final_interior) rep.issues.push_back("s_j not interior");
    rep.m_zero = w.m == 0;
    if (!rep.m_zero) rep.issues.push_back("R - L = " + std::to_string(w.m));
    Vec2 sj = w.s.back();
    rep.angle_to_y = std::atan2(sj.x, sj.y);
    rep.angle_ok = std::abs(rep.angle_to_y) < kPi / 6;
    if (!rep.angle_ok) rep.issues.push_back("angle to +y is " + std::to_string(deg(rep.angle_to_y)) + " deg");
    rep.consistent = (sj + w.b).norm() <= tol;
    if (!rep.consistent) rep.issues.push_back("s_j != -b");
    return rep;
}

} // namespace gnet
