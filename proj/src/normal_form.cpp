#include "billiards/normal_form.hpp"

#include <cmath>

namespace billiards {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex cpow(Complex z, int n) {
    Complex r{1.0, 0.0};
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

/// Complex cubic polynomial d30 z^3 + d12 z w^2 + d03 w^3 (+ d21 z^2 w),
/// re-expanded over the real variables: returns coefficients of x^j y^k.
CJet real_expansion(Complex d30, Complex d21, Complex d12, Complex d03, int degree) {
    CJet p(degree);
    p.at(3, 0) = d30;
    p.at(2, 1) = d21;
    p.at(1, 2) = d12;
    p.at(0, 3) = d03;
    const CJet x = CJet::var_s(degree), y = CJet::var_u(degree);
    return p.compose2(x + kI * y, x - kI * y);
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Ok: return "ok";
        case Verdict::NotLocallyAnalyticallyIntegrable:
            return "not_locally_analytically_integrable";
        default: return "inconclusive";
    }
}

LinearizedMap linearize(const MapJet& jet) {
    const double ta10 = jet.S1.coeff(1, 0), ta01 = jet.S1.coeff(0, 1);
    const double tb10 = jet.U1.coeff(1, 0), tb01 = jet.U1.coeff(0, 1);
    const double tr = ta10 + tb01;

    if (std::fabs(tr) > 2.0 + 1e-12)
        throw StabilityError(StabilityClass::Hyperbolic,
                             "hyperbolic linear part: |trace| > 2");
    if (std::fabs(std::fabs(tr) - 2.0) <= 1e-12)
        throw StabilityError(StabilityClass::Parabolic, "parabolic linear part: |trace| = 2");
    if (!(ta01 * tb10 < 0.0))
        throw StabilityError(StabilityClass::Parabolic,
                             "degenerate linear part: off-diagonal product is not negative");

    LinearizedMap out;
    out.linear.eta = std::pow(-ta01 / tb10, 0.25);
    const double eta = out.linear.eta;
    out.x1 = jet.S1.scale_vars(eta, 1.0 / eta) * (1.0 / eta);
    out.y1 = jet.U1.scale_vars(eta, 1.0 / eta) * eta;
    out.linear.a10 = out.x1.coeff(1, 0);
    out.linear.a01 = out.x1.coeff(0, 1);
    out.linear.b10 = out.y1.coeff(1, 0);
    out.linear.b01 = out.y1.coeff(0, 1);
    out.linear.lambda = Complex(out.linear.a10, -out.linear.a01);
    double th = std::arg(out.linear.lambda);
    if (th <= 0.0) th += 2.0 * M_PI;
    out.linear.theta = th;
    out.linear.stability = StabilityClass::Elliptic;
    return out;
}

ComplexCoeffs complexify(const Jet& x1, const Jet& y1, Complex lambda) {
    const int d = x1.degree();
    const CJet zc = (x1.cast<Complex>() + kI * y1.cast<Complex>());
    const CJet z = CJet::var_s(d), w = CJet::var_u(d);
    const CJet half = CJet::constant(Complex(0.5, 0.0), d);
    const CJet mhalf_i = CJet::constant(Complex(0.0, -0.5), d);
    const CJet z1 = zc.compose2(half * (z + w), mhalf_i * (z - w));

    const Complex lbar = std::conj(lambda);
    ComplexCoeffs cc;
    cc.c3 = {lbar * z1.coeff(3, 0), lbar * z1.coeff(2, 1), lbar * z1.coeff(1, 2),
             lbar * z1.coeff(0, 3)};
    if (d >= 5)
        cc.c5 = {lbar * z1.coeff(5, 0), lbar * z1.coeff(4, 1), lbar * z1.coeff(3, 2),
                 lbar * z1.coeff(2, 3), lbar * z1.coeff(1, 4), lbar * z1.coeff(0, 5)};
    return cc;
}

ResonanceFlags detect_resonances(Complex lambda, double tol) {
    ResonanceFlags f;
    f.lambda3 = std::abs(cpow(lambda, 3) - 1.0) < tol;
    f.lambda4 = std::abs(cpow(lambda, 4) - 1.0) < tol;
    f.lambda6 = std::abs(cpow(lambda, 6) - 1.0) < tol;
    return f;
}

Order3Reduction reduce_order3(const ComplexCoeffs& cjet, Complex lambda,
                              const NormalFormOptions& opts) {
    Order3Reduction r;
    const Complex lbar = std::conj(lambda);

    r.d30 = cjet.c30() / (1.0 - lambda * lambda);
    r.d12 = -3.0 * std::conj(r.d30);
    r.d21 = Complex(0.0, 0.0);

    if (std::abs(cpow(lambda, 4) - 1.0) < opts.resonance_tol) {
        if (std::abs(cjet.c03()) > opts.c03_tol)
            throw ResonanceError(4,
                                 "lambda^4 = 1 with c03 != 0: cubic normalization obstructed");
        r.d03 = Complex(0.0, 0.0);
        r.removable_resonance = true;
    } else {
        r.d03 = cjet.c03() / (1.0 - cpow(lbar, 4));
    }
    r.tau1 = cjet.c21().imag();

    const CJet pc = real_expansion(r.d30, r.d21, r.d12, r.d03, 3);
    for (int j = 3, idx = 0; j >= 0; --j, ++idx) {
        r.p3[idx] = pc.coeff(j, 3 - j).real();
        r.q3[idx] = pc.coeff(j, 3 - j).imag();
    }
    return r;
}

namespace {

/// Symplectic near-identity transform generated by the cubic data:
/// X = x + sum p_jk x^j Y^k, y = Y - sum q_jk x^j Y^k, solved for (X, Y).
RMap2 cubic_symplectic_transform(const Order3Reduction& o3, int degree) {
    Jet p3s(degree), q3s(degree);
    for (int j = 3, idx = 0; j >= 0; --j, ++idx) {
        p3s.at(j, 3 - j) = o3.p3[idx];
        q3s.at(j, 3 - j) = o3.q3[idx];
    }
    const Jet xv = Jet::var_s(degree), yv = Jet::var_u(degree);
    const Jet dq = q3s.diff_u();
    std::function<Jet(const Jet&)> G = [&](const Jet& W) {
        return yv + q3s.compose2(xv, W) - W;
    };
    std::function<Jet(const Jet&)> dG = [&](const Jet& W) {
        return dq.compose2(xv, W) - Jet::constant(1.0, degree);
    };
    const Jet Y = solve_implicit<double>(G, dG, yv);
    const Jet X = xv + p3s.compose2(xv, Y);
    return RMap2{X, Y};
}

}  // namespace

Order5Reduction reduce_order5(const LinearizedMap& lin, const Order3Reduction& o3,
                              const NormalFormOptions& opts) {
    const Complex lambda = lin.linear.lambda;
    const Complex lbar = std::conj(lambda);
    if (std::abs(cpow(lambda, 6) - 1.0) < opts.resonance_tol) {
        const int n = std::abs(cpow(lambda, 3) - 1.0) < opts.resonance_tol ? 3 : 6;
        throw ResonanceError(n, "lambda^6 = 1: quintic normalization obstructed");
    }
    const int degree = lin.x1.degree();
    if (degree < 5) throw InvalidParameterError("order-5 reduction needs a degree-5 jet");

    const RMap2 T = cubic_symplectic_transform(o3, degree);
    const RMap2 Tinv = T.inverse_near_identity();
    const RMap2 F{lin.x1, lin.y1};
    const RMap2 FXY = RMap2::apply(T, RMap2::apply(F, Tinv));

    Order5Reduction r;
    for (int j = 5, idx = 0; j >= 0; --j, ++idx) {
        r.p5[idx] = T.S.coeff(j, 5 - j);
        r.q5[idx] = T.U.coeff(j, 5 - j);
        r.A5[idx] = FXY.S.coeff(j, 5 - j);
        r.B5[idx] = FXY.U.coeff(j, 5 - j);
    }

    const ComplexCoeffs cc = complexify(FXY.S, FXY.U, lambda);
    r.C5 = cc.c5;
    r.tau2 = cc.c5[2].imag();  // Im C32

    const bool l4 = std::abs(cpow(lambda, 4) - 1.0) < opts.resonance_tol;
    if (!l4) {
        r.D50 = cc.c5[0] / (1.0 - cpow(lambda, 4));
        r.D14 = -5.0 * std::conj(*r.D50);
    }
    r.D41 = cc.c5[1] / (1.0 - lambda * lambda);
    r.D23 = -2.0 * std::conj(*r.D41);
    r.D05 = cc.c5[5] / (1.0 - cpow(lbar, 6));
    r.D32 = Complex(0.0, 0.0);
    return r;
}

NormalFormResult analyze_jet(const MapJet& jet, bool jet_is_return_map,
                             const NormalFormOptions& opts) {
    NormalFormResult res;
    res.symmetric_path = !jet_is_return_map;

    const LinearizedMap lin = linearize(jet);
    res.linear = lin.linear;
    const Complex lambda = lin.linear.lambda;
    res.resonances = detect_resonances(lambda, opts.resonance_tol);

    res.cjet = complexify(lin.x1, lin.y1, lambda);
    res.c03 = res.cjet.c03();
    res.jacobi3_residual = std::max(std::abs(res.cjet.c12() + 3.0 * std::conj(res.cjet.c30())),
                                    std::fabs(res.cjet.c21().real()));

    const double factor = jet_is_return_map ? 1.0 : 2.0;
    res.tau1_map = res.cjet.c21().imag();
    res.tau1_orbit = factor * *res.tau1_map;

    // Cubic reduction (and the integrability verdict at lambda^4 = 1).
    std::optional<Order3Reduction> o3;
    try {
        o3 = reduce_order3(res.cjet, lambda, opts);
        if (o3->removable_resonance)
            res.notes.push_back("lambda^4 resonance with c03 = 0: removable, d03 set to 0");
    } catch (const ResonanceError&) {
        res.verdict = Verdict::NotLocallyAnalyticallyIntegrable;
        res.notes.push_back("lambda^4 = 1 with |c03| > tolerance: no analytic normalization");
        return res;
    }
    res.order3 = o3;

    // tau2 has a simple pole where lambda^4 = 1 on the locus c03 != 0; refuse
    // evaluation in a strip around it (|lambda^4 - 1| ~ 4 |L-R|/R for the
    // symmetric one-step map).
    const double l4dist = std::abs(cpow(lambda, 4) - 1.0);
    if (!o3->removable_resonance && l4dist < 4.0 * opts.pole_guard &&
        std::abs(res.c03) > opts.c03_tol) {
        res.notes.push_back("near the tau2 pole (lambda^4 ~ 1 with c03 != 0): tau2 not evaluated");
        return res;
    }

    try {
        Order5Reduction o5 = reduce_order5(lin, *o3, opts);
        res.tau2_map = o5.tau2;
        res.tau2_orbit = factor * o5.tau2;
        res.jacobi5_residual = std::max(
            {std::abs(5.0 * o5.C5[0] + std::conj(o5.C5[4])),
             std::abs(2.0 * o5.C5[1] + std::conj(o5.C5[3])),
             std::fabs(o3->tau1 * o3->tau1 + 2.0 * o5.C5[2].real())});
        res.order5 = std::move(o5);
    } catch (const ResonanceError& e) {
        res.notes.push_back(std::string("resonance lambda^") + std::to_string(e.order) +
                            " = 1 blocks the order-5 normal form");
        if (res.verdict == Verdict::Ok) res.verdict = Verdict::Inconclusive;
    }
    return res;
}

NormalFormResult analyze(const TableConfig& table, const NormalFormOptions& opts) {
    if (table.symmetric) {
        const MapJet jet = map_jet(table, 0, opts.degree);
        return analyze_jet(jet, false, opts);
    }
    const MapJet j01 = map_jet(table, 0, opts.degree);
    const MapJet j10 = map_jet(table, 1, opts.degree);
    const MapJet f2 = compose_maps(j01, j10);
    return analyze_jet(f2, true, opts);
}

}  // namespace billiards
