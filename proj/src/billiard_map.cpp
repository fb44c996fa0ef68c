#include "billiards/billiard_map.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "billiards/errors.hpp"

namespace billiards {

namespace {

constexpr double kTangentialGuard = 1.0 - 1e-9;

double adaptive_simpson(const Poly1& da, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    auto g = [&](double t) {
        const double d = da.eval(t);
        return std::sqrt(1.0 + d * d);
    };
    const double flm = g(lm), frm = g(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(da, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(da, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

ArcGeometry::ArcGeometry(const BoundaryProfile& profile)
    : a_(profile.graph()), da_(profile.graph().derivative()), eps_(profile.eps) {
    smax_ = arclength(eps_);
}

double ArcGeometry::arclength(double t) const {
    if (t == 0.0) return 0.0;
    auto g = [&](double x) {
        const double d = da_.eval(x);
        return std::sqrt(1.0 + d * d);
    };
    const double fa = g(0.0), fb = g(t), fm = g(0.5 * t);
    const double whole = t / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(da_, 0.0, t, fa, fm, fb, whole, 1e-14 * std::max(1.0, std::fabs(t)),
                            48);
}

double ArcGeometry::param_from_arclength(double s) const {
    if (s == 0.0) return 0.0;
    // s(t) is strictly increasing with s'(t) = sqrt(1 + a'(t)^2) >= 1.
    double t = s;  // |t| <= |s| always, so this starts on the far side
    double lo = -eps_ * 1.0000001, hi = eps_ * 1.0000001;
    if (s > 0)
        lo = 0.0;
    else
        hi = 0.0;
    t = std::clamp(t, lo, hi);
    for (int it = 0; it < 80; ++it) {
        const double f = arclength(t) - s;
        if (f > 0)
            hi = t;
        else
            lo = t;
        const double d = da_.eval(t);
        const double g = std::sqrt(1.0 + d * d);
        double tn = t - f / g;
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
        if (std::fabs(tn - t) <= 1e-15 * std::max(1.0, std::fabs(t))) return tn;
        t = tn;
    }
    return t;
}

BilliardMap::BilliardMap(const TableConfig& table)
    : table_(table), arc0_(table.left), arc1_(table.right) {
    if (table.L <= 0.0) throw InvalidParameterError("chord length must be positive");
}

BilliardMap::Frame BilliardMap::frame_at(int arc, double t) const {
    const ArcGeometry& g = arc == 0 ? arc0_ : arc1_;
    const double ap = g.slope(t);
    const double inv = 1.0 / std::sqrt(1.0 + ap * ap);
    Frame f;
    if (arc == 0) {
        f.px = g.graph(t);
        f.py = t;
        f.tx = ap * inv;
        f.ty = inv;
        f.nx = inv;
        f.ny = -ap * inv;
    } else {
        // The right arc carries the point-reflected frame.
        f.px = table_.L - g.graph(t);
        f.py = -t;
        f.tx = -ap * inv;
        f.ty = -inv;
        f.nx = -inv;
        f.ny = ap * inv;
    }
    return f;
}

void BilliardMap::position(const PhasePoint& p, double& x, double& y) const {
    const ArcGeometry& g = arc(p.arc);
    const Frame f = frame_at(p.arc, g.param_from_arclength(p.s));
    x = f.px;
    y = f.py;
}

StepResult BilliardMap::step(const PhasePoint& p) const {
    if (std::fabs(p.u) > kTangentialGuard)
        throw DomainError("near-tangential direction: |u| too close to 1");
    const int src = p.arc, dst = 1 - p.arc;
    const ArcGeometry& gs = arc(src);
    const ArcGeometry& gd = arc(dst);
    if (std::fabs(p.s) >= gs.max_arclength())
        throw DomainError("phase point outside the arc's arclength domain");

    const double t = gs.param_from_arclength(p.s);
    const Frame f = frame_at(src, t);
    const double sin_th = std::sqrt(1.0 - p.u * p.u);
    const double dx = -p.u * f.tx + sin_th * f.nx;
    const double dy = -p.u * f.ty + sin_th * f.ny;

    // Impact condition along the ray (x,y) = (px,py) + l (dx,dy), oriented so
    // h starts negative and crosses zero upward at the impact:
    //   dst = 1:  h = x + b(y) - L     (right arc: x = L - b(|y|), b even)
    //   dst = 0:  h = a(y) - x
    auto h = [&](double l) {
        const double x = f.px + l * dx;
        const double y = f.py + l * dy;
        const double depth = gd.graph(y);
        return dst == 1 ? x + depth - table_.L : depth - x;
    };
    auto dh = [&](double l) {
        const double y = f.py + l * dy;
        const double sl = gd.slope(y) * dy;
        return dst == 1 ? dx + sl : sl - dx;
    };

    // Bracket by coarse sampling, then bisect with a Newton polish.
    const double reach = table_.L + std::fabs(gs.graph(gs.eps())) + std::fabs(gd.graph(gd.eps()));
    const double lmax = 1.75 * reach;
    constexpr int kSamples = 64;
    double lo = 0.0, hi = 0.0;
    double hprev = h(0.0);
    bool bracketed = false;
    for (int i = 1; i <= kSamples; ++i) {
        const double l = lmax * static_cast<double>(i) / kSamples;
        const double hv = h(l);
        if (hprev < 0.0 && hv >= 0.0) {
            lo = lmax * static_cast<double>(i - 1) / kSamples;
            hi = l;
            bracketed = true;
            break;
        }
        hprev = hv;
    }
    if (!bracketed) throw OrbitLeftDomainError("ray does not reach the opposite arc");

    double l = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double hv = h(l);
        if (hv > 0)
            hi = l;
        else
            lo = l;
        const double dv = dh(l);
        double ln = (dv != 0.0) ? l - hv / dv : 0.5 * (lo + hi);
        if (!(ln > lo && ln < hi)) ln = 0.5 * (lo + hi);
        if (std::fabs(ln - l) <= 1e-16 * std::max(1.0, l)) {
            l = ln;
            break;
        }
        l = ln;
    }

    const double y1 = f.py + l * dy;
    const double t1 = (dst == 1) ? -y1 : y1;
    if (std::fabs(t1) >= gd.eps())
        throw OrbitLeftDomainError("impact point outside the arc domain");

    const Frame f1 = frame_at(dst, t1);
    const double u1 = -(f1.tx * dx + f1.ty * dy);
    if (std::fabs(u1) > kTangentialGuard)
        throw OrbitLeftDomainError("reflected direction is near-tangential");

    StepResult r;
    r.next = PhasePoint{dst, gd.arclength(t1), u1};
    r.chord = l;
    return r;
}

OrbitSegment BilliardMap::iterate(const PhasePoint& start, int n) const {
    if (n < 1) throw InvalidParameterError("iteration count must be >= 1");
    OrbitSegment orbit;
    orbit.points.reserve(n + 1);
    orbit.chords.reserve(n);
    orbit.points.push_back(start);
    PhasePoint p = start;
    for (int i = 0; i < n; ++i) {
        try {
            const StepResult r = step(p);
            orbit.points.push_back(r.next);
            orbit.chords.push_back(r.chord);
            p = r.next;
        } catch (const OrbitLeftDomainError&) {
            orbit.left_domain = true;
            break;
        } catch (const DomainError&) {
            orbit.left_domain = true;
            break;
        }
    }
    return orbit;
}

void write_orbit_csv(std::ostream& os, const OrbitSegment& orbit) {
    os << "n,arc,s,u,chord\n";
    char buf[192];
    for (std::size_t i = 0; i < orbit.points.size(); ++i) {
        const PhasePoint& p = orbit.points[i];
        if (i < orbit.chords.size())
            std::snprintf(buf, sizeof(buf), "%zu,%d,%.17g,%.17g,%.17g\n", i, p.arc, p.s, p.u,
                          orbit.chords[i]);
        else
            std::snprintf(buf, sizeof(buf), "%zu,%d,%.17g,%.17g,\n", i, p.arc, p.s, p.u);
        os << buf;
    }
}

}  // namespace billiards
