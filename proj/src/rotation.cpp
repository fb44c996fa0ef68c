#include "billiards/rotation.hpp"

#include <cmath>
#include <functional>

#include "billiards/errors.hpp"
#include "billiards/formulas.hpp"
#include "billiards/normal_form.hpp"

namespace billiards {

namespace {

// Carlson symmetric forms R_F and R_D by the duplication algorithm.
double carlson_rf(double x, double y, double z) {
    const double tol = 1e-4;  // error ~ tol^6 in the series tail
    double a = 0, dx = 0, dy = 0, dz = 0;
    do {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lam = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = (x + y + z) / 3.0;
        dx = 1.0 - x / a;
        dy = 1.0 - y / a;
        dz = 1.0 - z / a;
    } while (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) > tol);
    const double e2 = dx * dy + dy * dz + dz * dx;
    const double e3 = dx * dy * dz;
    return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(a);
}

double carlson_rd(double x, double y, double z) {
    const double tol = 1e-4;
    double sum = 0.0, fac = 1.0;
    double a = 0, dx = 0, dy = 0, dz = 0;
    do {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lam = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (z + lam));
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = (x + y + 3.0 * z) / 5.0;
        dx = 1.0 - x / a;
        dy = 1.0 - y / a;
        dz = 1.0 - z / a;
    } while (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) > tol);
    const double ea = dx * dy;
    const double eb = dz * dz;
    const double ec = ea - eb;
    const double ed = ea - 6.0 * eb;
    const double ee = ed + ec + ec;
    return 3.0 * sum +
           fac *
               (1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee) +
                dz * (1.0 / 6.0 * ee + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea))) /
               (a * std::sqrt(a));
}

void check_modulus(double k) {
    if (!(k >= 0.0 && k < 1.0)) throw DomainError("elliptic modulus must satisfy 0 <= k < 1");
}

struct EllipseNormalForm {
    double eta2 = 0.0;   // eta^2 of the one-step map
    double p30 = 0.0;    // cubic generating coefficient
    double tau2F = 0.0;  // tau2 of the one-step map
    double theta2 = 0.0; // rotation angle of F^2 in (0, pi)
};

EllipseNormalForm ellipse_normal_form(double b) {
    if (!(b > 0.0 && b < 1.0 / std::sqrt(2.0)))
        throw DomainError("twist expansion requires 0 < b < 1/sqrt(2)");
    const NormalFormResult nf = analyze(ellipse_table(b));
    EllipseNormalForm out;
    out.eta2 = nf.linear.eta * nf.linear.eta;
    if (!nf.order3 || !nf.tau2_map)
        throw DomainError("normal form unavailable for this ellipse parameter");
    out.p30 = nf.order3->p3[0];
    out.tau2F = *nf.tau2_map;
    const double c = 1.0 - 2.0 * b * b;
    out.theta2 = std::acos(2.0 * c * c - 1.0);
    return out;
}

}  // namespace

double elliptic_F(double alpha, double k) {
    check_modulus(k);
    if (!(alpha >= 0.0 && alpha <= M_PI_2 + 1e-12))
        throw DomainError("amplitude must lie in [0, pi/2]");
    const double s = std::sin(alpha), c = std::cos(alpha);
    return s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0);
}

double elliptic_E(double alpha, double k) {
    check_modulus(k);
    if (!(alpha >= 0.0 && alpha <= M_PI_2 + 1e-12))
        throw DomainError("amplitude must lie in [0, pi/2]");
    const double s = std::sin(alpha), c = std::cos(alpha);
    const double q = 1.0 - k * k * s * s;
    return s * carlson_rf(c * c, q, 1.0) -
           (k * k) * s * s * s * carlson_rd(c * c, q, 1.0) / 3.0;
}

CausticSpec CausticSpec::make(double e, double h) {
    if (!(e > 0.0 && e < 1.0)) throw DomainError("ellipse eccentricity must be in (0,1)");
    if (!(h > 1.0)) throw DomainError("hyperbolic caustic needs eccentricity h > 1");
    CausticSpec c;
    c.e = e;
    c.h = h;
    c.k = 2.0 * std::sqrt(h) / (1.0 + h);
    c.delta = std::asin(e * (h * h - 1.0) / (h * h - e * e));
    return c;
}

CausticSpec CausticSpec::from_ellipse_parameter(double b, double t) {
    if (!(b > 0.0 && b < 1.0)) throw DomainError("ellipse parameter b must be in (0,1)");
    if (!(t > 0.0 && t < M_PI_2)) throw DomainError("caustic parameter t must be in (0, pi/2)");
    return make(std::sqrt(1.0 - b * b), 1.0 / std::sin(t));
}

double rho_kolodziej(const CausticSpec& c) {
    const double complete = elliptic_F(M_PI_2, c.k);
    return (elliptic_F(M_PI_2 - 0.5 * c.delta, c.k) - elliptic_F(0.5 * c.delta, c.k)) / complete;
}

double rho_kolodziej(double b, double t) {
    return rho_kolodziej(CausticSpec::from_ellipse_parameter(b, t));
}

double rho_twist(double b, double t) {
    if (std::fabs(t) > 0.5) throw DomainError("twist expansion is local: |t| <= 0.5");
    const EllipseNormalForm nf = ellipse_normal_form(b);
    const double s = elliptic_E(std::fabs(t), std::sqrt(1.0 - b * b));
    const double s2 = s * s;
    const double inv2 = 1.0 / nf.eta2;
    return (nf.theta2 + b * inv2 * s2 + 2.0 * (nf.p30 * b + nf.tau2F) * inv2 * inv2 * s2 * s2) /
           (2.0 * M_PI);
}

WindingResult rho_numeric(const TableConfig& table, const PhasePoint& start, long n) {
    if (n < 1) throw InvalidParameterError("need at least one return-map iterate");
    const BilliardMap map(table);
    const NormalFormResult nf = analyze(table);
    const double eta = nf.linear.eta;

    PhasePoint p = start;
    double x = p.s / eta, y = eta * p.u;
    double phi = std::atan2(y, x);
    double total = 0.0;

    // Batch means for a standard error estimate.
    const int kBatches = 16;
    const long per = std::max<long>(1, n / kBatches);
    double batch_sum = 0.0;
    long batch_count = 0;
    double mean_acc = 0.0, sq_acc = 0.0;
    int batches_done = 0;

    for (long i = 0; i < n; ++i) {
        const StepResult r1 = map.step(p);
        const StepResult r2 = map.step(r1.next);
        p = r2.next;
        const double xn = p.s / eta, yn = eta * p.u;
        const double phin = std::atan2(yn, xn);
        double d = phin - phi;
        while (d <= -M_PI) d += 2.0 * M_PI;
        while (d > M_PI) d -= 2.0 * M_PI;
        total += d;
        phi = phin;
        x = xn;
        y = yn;
        batch_sum += d;
        if (++batch_count == per) {
            const double m = batch_sum / (2.0 * M_PI * per);
            mean_acc += m;
            sq_acc += m * m;
            ++batches_done;
            batch_sum = 0.0;
            batch_count = 0;
        }
    }
    (void)x;
    (void)y;

    WindingResult out;
    out.rho = total / (2.0 * M_PI * static_cast<double>(n));
    out.iterations = n;
    if (batches_done > 1) {
        const double mean = mean_acc / batches_done;
        const double var = std::max(0.0, sq_acc / batches_done - mean * mean);
        out.std_error = std::sqrt(var / batches_done);
    }
    return out;
}

RotationReport compare_rotation(double b, double t, long n_numeric) {
    RotationReport rep;
    rep.t = t;
    rep.rho_kol = rho_kolodziej(b, t);
    rep.rho_tw = rho_twist(b, t);
    rep.err_kt = std::fabs(rep.rho_kol - rep.rho_tw);
    if (n_numeric > 0) {
        const TableConfig table = ellipse_table(b);
        const double s = elliptic_E(t, std::sqrt(1.0 - b * b));
        const WindingResult w = rho_numeric(table, PhasePoint{0, s, 0.0}, n_numeric);
        rep.rho_num = w.rho;
        rep.err_kn = std::fabs(rep.rho_kol - w.rho);
    }
    return rep;
}

double even_second_derivative(const std::function<double(double)>& f, double h) {
    // f even in t: f'' (0) = 2 (f(h) - f(0)) / h^2, Richardson-extrapolated.
    const double f0 = f(0.0);
    const double d1 = 2.0 * (f(h) - f0) / (h * h);
    const double d2 = 2.0 * (f(0.5 * h) - f0) / (0.25 * h * h);
    return (4.0 * d2 - d1) / 3.0;
}

double even_fourth_derivative(const std::function<double(double)>& f, double h) {
    // Even 5-point stencil: f'''' (0) = 24 [f(2h) - 4 f(h) + 3 f(0)] ... use
    // the symmetric formula (f(2h) - 4 f(h) + 3 f(0)) * 2 / h^4 with
    // Richardson to kill the h^2 term.
    auto raw = [&](double hh) {
        return (2.0 * f(2.0 * hh) - 8.0 * f(hh) + 6.0 * f(0.0)) / (hh * hh * hh * hh);
    };
    const double d1 = raw(h);
    const double d2 = raw(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace billiards
