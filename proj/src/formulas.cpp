#include "billiards/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace billiards {

namespace {

double sq(double x) { return x * x; }

void require_positive_chord(double L) {
    if (!(L > 0.0)) throw InvalidParameterError("chord length L must be positive");
}

}  // namespace

TwistInput TwistInput::make(double L, const CurvatureJet& j0, const CurvatureJet& j1) {
    require_positive_chord(L);
    TwistInput in;
    in.L = L;
    in.j0 = j0;
    in.j1 = j1;
    if (j0.flat && j1.flat)
        throw StabilityError(StabilityClass::Parabolic, "two flat walls: orbit is parabolic");
    if (in.any_flat()) {
        const double R = j0.flat ? j1.R : j0.R;
        if (!(L < R))
            throw StabilityError(L > R ? StabilityClass::Hyperbolic : StabilityClass::Parabolic,
                                 "flat-wall orbit is elliptic only for L < R");
        in.k = 0;
        return in;
    }
    const double R0 = j0.R, R1 = j1.R;
    if (L < std::min(R0, R1)) {
        in.k = 0;
    } else if (L > std::max(R0, R1) && L < R0 + R1) {
        in.k = 1;
    } else {
        const bool para = L == R0 || L == R1 || L == R0 + R1;
        throw StabilityError(para ? StabilityClass::Parabolic : StabilityClass::Hyperbolic,
                             "orbit is not elliptic for this (L, R0, R1)");
    }
    in.Delta = L * (R0 - L) * (R1 - L) * (R0 + R1 - L);
    in.Gamma = 2.0 * (R0 - L) * (R1 - L) - R0 * R1;
    return in;
}

StabilityReport classify(double L, const CurvatureJet& j0, const CurvatureJet& j1) {
    require_positive_chord(L);
    StabilityReport rep;
    const double rtol = 1e-9;

    if (j0.flat && j1.flat) {
        rep.cls = StabilityClass::Parabolic;
        rep.family_A = false;
        rep.notes.push_back("two flat walls");
        return rep;
    }

    const bool symmetric = !j0.flat && !j1.flat && j0.R == j1.R;
    if (symmetric) {
        // One-step semantics: elliptic iff 0 < L/R < 2.
        const double x = L / j0.R;
        rep.family_A = true;
        if (x < 2.0 - rtol)
            rep.cls = StabilityClass::Elliptic;
        else if (x <= 2.0 + rtol)
            rep.cls = StabilityClass::Parabolic;
        else
            rep.cls = StabilityClass::Hyperbolic;
        rep.nonres4 = std::fabs(x - 1.0) > rtol;
        rep.nonres6 = std::fabs(x - 0.5) > rtol && std::fabs(x - 1.5) > rtol;
        if (!rep.nonres4)
            rep.notes.push_back("L = R: lambda^4 = 1 and the orbit O2 (return map) is parabolic");
        return rep;
    }

    // Return-map semantics via the product (L/R0 - 1)(L/R1 - 1).
    const double f0 = j0.flat ? -1.0 : L / j0.R - 1.0;
    const double f1 = j1.flat ? -1.0 : L / j1.R - 1.0;
    const double prod = f0 * f1;
    rep.family_A = false;
    if (prod > rtol && prod < 1.0 - rtol)
        rep.cls = StabilityClass::Elliptic;
    else if (prod < -rtol || prod > 1.0 + rtol)
        rep.cls = StabilityClass::Hyperbolic;
    else
        rep.cls = StabilityClass::Parabolic;
    rep.nonres4 = std::fabs(prod - 0.5) > rtol;
    rep.nonres6 = std::fabs(prod - 0.25) > rtol && std::fabs(prod - 0.75) > rtol;
    return rep;
}

void attach_moser_verdict(StabilityReport& rep, std::optional<double> tau1,
                          std::optional<double> tau2, double zero_tol) {
    rep.moser_stable.reset();
    if (rep.cls != StabilityClass::Elliptic) return;
    if (!rep.nonres4 || !tau1) return;
    if (std::fabs(*tau1) > zero_tol) {
        rep.moser_stable = true;
        return;
    }
    if (!rep.nonres6 || !tau2) return;
    if (std::fabs(*tau2) > zero_tol)
        rep.moser_stable = true;
    else
        rep.notes.push_back("first two twist coefficients vanish: stability undetermined");
}

double tau1_sym(double L, double R, double R2) {
    require_positive_chord(L);
    if (!(R > 0.0 && L < 2.0 * R)) throw DomainError("tau1_sym needs 0 < L < 2R");
    return 1.0 / (8.0 * R) - L * R2 / (8.0 * (2.0 * R - L));
}

double tau2_sym(double L, double R, double R2, double R4) {
    require_positive_chord(L);
    if (!(R > 0.0 && L < 2.0 * R)) throw DomainError("tau2_sym needs 0 < L < 2R");
    if (std::fabs(R - L) < 1e-12 * R) throw PoleError("R - L", "tau2_sym has a pole at L = R");
    const double root = std::sqrt(L * (2.0 * R - L));
    const double t1 = 3.0 * (7.0 * R * R - 8.0 * R * L + 2.0 * L * L) /
                      (256.0 * R * R * (R - L) * root);
    const double t2 = std::sqrt(L) * (27.0 * R * R - 40.0 * R * L + 10.0 * L * L) * R2 /
                      (384.0 * R * (R - L) * std::pow(2.0 * R - L, 1.5));
    const double t3 = std::pow(L, 1.5) * (31.0 * R * R - 36.0 * R * L + 6.0 * L * L) * R2 * R2 /
                      (768.0 * (R - L) * std::pow(2.0 * R - L, 2.5));
    const double t4 = std::pow(L, 1.5) * R * R4 / (192.0 * std::pow(2.0 * R - L, 1.5));
    return t1 - t2 + t3 - t4;
}

double poly_N(double L, double R0, double R1) {
    return 8.0 * std::pow(L, 4) * (R0 * R0 + R1 * R1) -
           16.0 * std::pow(L, 3) *
               (std::pow(R0, 3) + 2.0 * R0 * R0 * R1 + 2.0 * R0 * R1 * R1 + std::pow(R1, 3)) +
           8.0 * L * L * sq(R0 + R1) * (R0 * R0 + 4.0 * R0 * R1 + R1 * R1) -
           8.0 * L * R0 * R1 *
               (2.0 * std::pow(R0, 3) + 7.0 * R0 * R0 * R1 + 7.0 * R0 * R1 * R1 +
                2.0 * std::pow(R1, 3)) +
           7.0 * R0 * R0 * R1 * R1 * sq(R0 + R1);
}

double poly_P(double L, double R0, double R1) {
    return L * L * std::pow(R1 - L, 4) *
           (48.0 * std::pow(R0, 3) * (R1 - 2.0 * L) + 24.0 * L * L * sq(R1 - L) -
            72.0 * L * R0 * (R1 - L) * (R1 - 2.0 * L) +
            R0 * R0 * (216.0 * L * L - 216.0 * R1 * L + 31.0 * R1 * R1));
}

double poly_Q(double L, double R0, double R1) {
    return -2.0 * L * L * sq(L - R0) * sq(L - R1) * R0 * R1 *
           (32.0 * L * L - 32.0 * L * (R0 + R1) + 17.0 * R0 * R1);
}

double poly_S(double L, double R0, double R1) {
    return L * sq(R1 - L) *
           (40.0 * sq(R1 - L) * L * L + 3.0 * std::pow(R0, 3) * (9.0 * R1 - 16.0 * L) -
            80.0 * R0 * (2.0 * L * L - 3.0 * R1 * L + R1 * R1) * L +
            3.0 * R0 * R0 * (56.0 * L * L - 56.0 * R1 * L + 9.0 * R1 * R1));
}

double poly_T(double L, double R0, double R1) { return L * L * R0 * sq(R1 - L); }

double tau1_asym(const TwistInput& in) {
    if (in.any_flat()) {
        const CurvatureJet& c = in.j0.flat ? in.j1 : in.j0;
        return tau1_flat_wall(in.L, c);
    }
    const double L = in.L, R0 = in.j0.R, R1 = in.j1.R;
    const std::pair<double, const char*> factors1[] = {
        {R0 - L, "R0 - L"}, {R1 - L, "R1 - L"}, {R0 + R1 - L, "R0 + R1 - L"}};
    for (const auto& [v, name] : factors1)
        if (std::fabs(v) < 1e-12 * std::max({R0, R1, L}))
            throw PoleError(name, "tau1_asym pole: vanishing factor");
    return (1.0 / 8.0) * ((R0 + R1) / (R0 * R1) -
                          L / (R0 + R1 - L) *
                              ((R1 - L) / (R0 - L) * in.j0.R2 + (R0 - L) / (R1 - L) * in.j1.R2));
}

double tau2_asym(const TwistInput& in) {
    if (in.any_flat()) {
        const CurvatureJet& c = in.j0.flat ? in.j1 : in.j0;
        return tau2_flat_wall(in.L, c);
    }
    const double L = in.L, R0 = in.j0.R, R1 = in.j1.R;
    const double scale = std::max({R0, R1, L});
    const std::pair<double, const char*> factors2[] = {
        {R0 - L, "R0 - L"}, {R1 - L, "R1 - L"}, {R0 + R1 - L, "R0 + R1 - L"}};
    for (const auto& [v, name] : factors2)
        if (std::fabs(v) < 1e-12 * scale) throw PoleError(name, "tau2_asym pole: vanishing factor");
    if (std::fabs(in.Gamma) < 1e-12 * scale * scale)
        throw PoleError("Gamma", "tau2_asym pole: Gamma = 0 (lambda^2 = -1)");

    const double R02 = in.j0.R2, R12 = in.j1.R2, R04 = in.j0.R4, R14 = in.j1.R4;
    const double sign = in.k == 0 ? 1.0 : -1.0;
    const double sqrtD = std::sqrt(in.Delta);
    const double G = in.Gamma;

    const double termN = 3.0 * poly_N(L, R0, R1) / (512.0 * R0 * R0 * R1 * R1 * G);
    const double termPQ =
        (poly_P(L, R0, R1) * R02 * R02 + poly_P(L, R1, R0) * R12 * R12 +
         poly_Q(L, R0, R1) * R02 * R12) /
        (1536.0 * sq(R0 - L) * sq(R1 - L) * sq(R0 + R1 - L) * G);
    const double termS =
        (R1 * poly_S(L, R0, R1) * R02 + R0 * poly_S(L, R1, R0) * R12) /
        (768.0 * R0 * R1 * (R0 - L) * (R1 - L) * (R0 + R1 - L) * G);
    const double termT =
        ((R1 - L) * poly_T(L, R0, R1) * R04 + (R0 - L) * poly_T(L, R1, R0) * R14) /
        (192.0 * (R0 - L) * (R1 - L) * (R0 + R1 - L));

    return sign / sqrtD * (termN + termPQ - termS - termT);
}

double tau1_asym_equal_radius(double L, double R, double R2a, double R2b) {
    require_positive_chord(L);
    return (1.0 / 8.0) * (2.0 / R - L * (R2a + R2b) / (2.0 * R - L));
}

double tau2_asym_equal_radius(double L, double R, double R2a, double R2b, double R4a,
                              double R4b) {
    require_positive_chord(L);
    if (std::fabs(R - L) < 1e-12 * R)
        throw PoleError("R - L", "tau2 pole at L = R");
    const double G = 2.0 * sq(R - L) - R * R;
    if (std::fabs(G) < 1e-12 * R * R) throw PoleError("Gamma", "tau2 pole: Gamma = 0");
    const double root = std::sqrt(L * (2.0 * R - L));
    const double t1 = 3.0 * (2.0 * L * L - 8.0 * L * R + 7.0 * R * R) /
                      (128.0 * R * R * (R - L) * root);
    const double t2 = std::sqrt(L) * (10.0 * L * L - 40.0 * L * R + 27.0 * R * R) * (R2a + R2b) /
                      (384.0 * R * (R - L) * std::pow(2.0 * R - L, 1.5));
    const double quart = 24.0 * std::pow(L, 4) - 192.0 * std::pow(L, 3) * R +
                         456.0 * L * L * R * R - 384.0 * L * std::pow(R, 3) +
                         79.0 * std::pow(R, 4);
    const double cross = 2.0 * R * R * (32.0 * L * L - 64.0 * L * R + 17.0 * R * R);
    const double t3 = std::pow(L, 1.5) * (quart * (R2a * R2a + R2b * R2b) - cross * R2a * R2b) /
                      (1536.0 * (R - L) * std::pow(2.0 * R - L, 2.5) * G);
    const double t4 = std::pow(L, 1.5) * R * (R4a + R4b) / (192.0 * std::pow(2.0 * R - L, 1.5));
    return t1 - t2 + t3 - t4;
}

double tau1_flat_wall(double L, const CurvatureJet& curved) {
    if (curved.flat) throw InvalidParameterError("need one curved arc");
    return tau1_sym(2.0 * L, curved.R, curved.R2);
}

double tau2_flat_wall(double L, const CurvatureJet& curved) {
    if (curved.flat) throw InvalidParameterError("need one curved arc");
    return tau2_sym(2.0 * L, curved.R, curved.R2, curved.R4);
}

double eh_shift_rho1(double a) {
    const double a2 = a * a, a4 = a2 * a2;
    return (3.0 * a4 - 2.0 * a2 + 3.0) / (3.0 * a4 + 2.0 * a2 + 3.0);
}

double eh_shift_tau1(double a, double s) {
    const double a2 = a * a;
    return a / (4.0 * (a2 - 1.0)) -
           3.0 * (a2 * a2 + 1.0) * (a2 - a * s - 1.0) /
               (8.0 * a * (a2 - 1.0) * (a2 + a * s - 1.0));
}

double eh_shift_tau2_on_locus(double a) {
    const double a2 = a * a;
    const double num =
        a * (729.0 * std::pow(a2, 10) - 2214.0 * std::pow(a2, 9) - 315.0 * std::pow(a2, 8) -
             2568.0 * std::pow(a2, 7) - 2206.0 * std::pow(a2, 6) - 1188.0 * std::pow(a2, 5) -
             2206.0 * std::pow(a2, 4) - 2568.0 * std::pow(a2, 3) - 315.0 * std::pow(a2, 2) -
             2214.0 * a2 + 729.0);
    const double den = 96.0 * std::sqrt(6.0) * sq(a2 - 1.0) * std::pow(a2 * a2 + 1.0, 1.5) *
                       (3.0 * a2 * a2 - 2.0 * a2 + 3.0) *
                       (9.0 * std::pow(a2, 4) - 36.0 * std::pow(a2, 3) + 22.0 * a2 * a2 -
                        36.0 * a2 + 9.0);
    return num / den;
}

double eh_deform_tau1(double a, double p, double q) {
    const double a2 = a * a, q2 = q * q, p2 = p * p;
    const double first = (a2 * p + a * q2 - p) / (q2 * (a2 - 1.0));
    const double inner = 3.0 * (p2 + q2) * (a * p - 1.0) / (a * q2 * (a * p - p2 - q2)) +
                         3.0 * (a * p - p2 - q2) / (p * (a2 - 1.0) * (a * p - 1.0));
    const double second = a * p * (a - p) * inner / (a * (p2 + q2) - p);
    return (first + second) / 8.0;
}

double tau1_zero_a4(double a2) { return a2 * a2 * (4.0 * a2 - 1.0) / 3.0; }

double tau2_zero_a6(double a2) {
    return 2.0 * std::pow(a2, 3) *
           (-1.0 + 46.0 * a2 - 168.0 * a2 * a2 + 168.0 * std::pow(a2, 3)) /
           (45.0 * (2.0 * a2 - 1.0));
}

std::vector<ExampleRow> example_suite() {
    std::vector<ExampleRow> rows;
    auto add = [&](std::string name, double expected, double computed, double tol,
                   std::string detail = {}) {
        ExampleRow r{std::move(name), expected, computed, tol,
                     std::fabs(expected - computed) <= tol, std::move(detail)};
        rows.push_back(std::move(r));
    };

    {
        const double b = 0.6;
        const CurvatureJet j = curvature_jet(ellipse_minor_vertex_profile(b));
        add("ellipse tau1(F) = b/2", b / 2.0, tau1_sym(2.0 * b, j.R, j.R2), 1e-12);
        const double expect2 = 3.0 * 0.5 * (3.0 - 0.5) / (32.0 * std::sqrt(0.75));
        const CurvatureJet jh = curvature_jet(ellipse_minor_vertex_profile(0.5));
        add("ellipse tau2(F) at b = 1/2", expect2, tau2_sym(1.0, jh.R, jh.R2, jh.R4), 1e-12);
    }
    {
        const CurvatureJet j = curvature_jet(circle_profile(1.0));
        add("lemon tau1(F) = 1/8", 0.125, tau1_sym(0.5, j.R, j.R2), 1e-13);
        add("lemon tau1(F) independent of L", 0.125, tau1_sym(1.7, j.R, j.R2), 1e-13);
    }
    {
        const double r = 1.0, R = 2.0, B = 2.5;
        const TableConfig t = asymmetric_lemon_table(r, B, R);
        const TwistInput in = TwistInput::make(
            t.L, curvature_jet(t.left), curvature_jet(t.right));
        add("asymmetric lemon tau1(F^2) = (1/r + 1/R)/8", (1.0 / r + 1.0 / R) / 8.0,
            tau1_asym(in), 1e-12);
    }
    {
        const double b0 = 0.6, b1 = 0.3;
        const TableConfig t = half_ellipses_table(b0, b1);
        const TwistInput in =
            TwistInput::make(t.L, curvature_jet(t.left), curvature_jet(t.right));
        const double v = tau1_asym(in);
        add("half-ellipse pair tau1(F^2) > 0", 0.0, v > 0.0 ? 0.0 : v, 0.0,
            "nonpositive curvature derivatives force tau1 > 0");
    }
    {
        const double a = 2.0, s = 0.3;
        const TableConfig t = eh_lens_shift_table(a, s);
        const TwistInput in =
            TwistInput::make(t.L, curvature_jet(t.left), curvature_jet(t.right));
        add("EH shift tau1 closed form (a=2, s=0.3)", eh_shift_tau1(a, s), tau1_asym(in), 1e-11);
        add("EH shift rho1(2) = 43/59", 43.0 / 59.0, eh_shift_rho1(2.0), 1e-15);
        const double szero = eh_shift_rho1(a) * (a - 1.0 / a);
        const TableConfig tz = eh_lens_shift_table(a, szero);
        const TwistInput inz =
            TwistInput::make(tz.L, curvature_jet(tz.left), curvature_jet(tz.right));
        add("EH shift tau1 zero at s = rho1 (a - 1/a)", 0.0, tau1_asym(inz), 1e-12);
    }
    {
        // Root of tau2 along the tau1 = 0 locus of the shift family.
        double lo = 1.70, hi = 1.89;
        double flo = eh_shift_tau2_on_locus(lo);
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = eh_shift_tau2_on_locus(mid);
            if ((flo > 0) == (fm > 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        add("EH shift tau2 root a*", 1.87861, 0.5 * (lo + hi), 1e-4);
    }
    {
        const double a2 = 0.3;
        const double a4 = tau1_zero_a4(a2);
        const double a6 = tau2_zero_a6(a2);
        const BoundaryProfile prof = make_profile({a2, a4, a6});
        const CurvatureJet j = curvature_jet(prof);
        add("tau1 = 0 on the a4 threshold (L = 1)", 0.0, tau1_sym(1.0, j.R, j.R2), 1e-13);
        add("tau2 = 0 on the a6 threshold (L = 1)", 0.0, tau2_sym(1.0, j.R, j.R2, j.R4), 1e-12);
    }
    {
        const double a = 2.0, p = 0.8, q = 1.2;
        const TableConfig t = eh_lens_deform_table(a, p, q);
        const TwistInput in =
            TwistInput::make(t.L, curvature_jet(t.left), curvature_jet(t.right));
        add("EH deform tau1 closed form (a=2, p=0.8, q=1.2)", eh_deform_tau1(a, p, q),
            tau1_asym(in), 1e-11);
    }
    return rows;
}

PoleCheckResult pole_structure_check(double R, double R2, double R4) {
    PoleCheckResult out;
    const double c03_factor = 3.0 + R * R2;  // c03(L=R) = -i (3 + R R'') / (24 R)
    if (std::fabs(c03_factor) < 1e-10) return out;  // removable: not applicable
    out.applicable = true;
    out.predicted = sq(c03_factor) / (768.0 * R);  // = -3 R c03^2 / 4

    // Mesh L = R (1 +/- 2^-m): (R - L) tau2 = C + O(R - L); Richardson in h.
    std::vector<double> vals;
    for (int m = 4; m <= 12; ++m) {
        const double h = R * std::pow(2.0, -m);
        const double plus = (R - (R + h)) * tau2_sym(R + h, R, R2, R4);
        const double minus = (R - (R - h)) * tau2_sym(R - h, R, R2, R4);
        vals.push_back(0.5 * (plus + minus));  // odd part cancels: C + O(h^2)
    }
    double prev = vals[vals.size() - 2], last = vals.back();
    out.fitted_limit = (4.0 * last - prev) / 3.0;
    out.rel_residual = std::fabs(out.fitted_limit - out.predicted) /
                       std::max(1e-300, std::fabs(out.predicted));

    // Pole-order estimate: slope of log |tau2| vs log |R - L|.
    double sxx = 0, sxy = 0, sx = 0, sy = 0;
    int n = 0;
    for (int m = 4; m <= 12; ++m) {
        const double h = R * std::pow(2.0, -m);
        const double x = std::log(h);
        const double y = std::log(std::fabs(tau2_sym(R - h, R, R2, R4)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

}  // namespace billiards
