#include "billiards/verify.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "billiards/formulas.hpp"
#include "billiards/normal_form.hpp"
#include "billiards/rotation.hpp"

namespace billiards {

namespace {

using Complex = std::complex<double>;

struct Check {
    bool pass = true;
    std::ostringstream detail;
    int failures = 0;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (++failures <= 4) detail << (failures > 1 ? "; " : "") << what;
        }
    }
    std::string text(const std::string& ok_text) const {
        if (pass) return ok_text;
        std::string s = detail.str();
        if (failures > 4) s += "; ... (" + std::to_string(failures) + " failures)";
        return s;
    }
};

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

struct SymSample {
    double L, R, R2, R4;
};
struct AsymSample {
    double L, R0, R1, R02, R12, R04, R14;
};

bool resonance_margin_ok(Complex lambda, double margin) {
    auto pw = [&](int n) {
        Complex r{1.0, 0.0};
        for (int i = 0; i < n; ++i) r *= lambda;
        return r;
    };
    for (int n : {3, 4, 6})
        if (std::abs(pw(n) - 1.0) < margin) return false;
    return true;
}

/// Symmetric tables with L/R in (0,2), resonance margin 0.05 on lambda^{3,4,6}.
std::vector<SymSample> sample_symmetric(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ur(0.5, 2.0), ux(0.05, 1.95), u2(-3.0, 3.0),
        u4(-10.0, 10.0);
    std::vector<SymSample> out;
    while ((int)out.size() < count) {
        const double R = ur(rng), x = ux(rng);
        const Complex lambda(x - 1.0, -std::sqrt(x * (2.0 - x)));
        if (!resonance_margin_ok(lambda, 0.05)) continue;
        out.push_back(SymSample{x * R, R, u2(rng), u4(rng)});
    }
    return out;
}

/// Asymmetric elliptic tables on both branches with the same margins.
std::vector<AsymSample> sample_asymmetric(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ur(0.6, 2.4), ufrac(0.08, 0.92), u2(-3.0, 3.0),
        u4(-10.0, 10.0);
    std::bernoulli_distribution branch(0.5);
    std::vector<AsymSample> out;
    while ((int)out.size() < count) {
        const double R0 = ur(rng), R1 = ur(rng);
        const bool inner_branch = branch(rng);  // k = 0: L below both radii
        const double lo = inner_branch ? 0.0 : std::max(R0, R1);
        const double hi = inner_branch ? std::min(R0, R1) : R0 + R1;
        const double L = lo + ufrac(rng) * (hi - lo);
        if (!(L > 0.0)) continue;
        const double a10 = 2.0 * (L / R0 - 1.0) * (L / R1 - 1.0) - 1.0;
        if (std::fabs(a10) >= 1.0) continue;
        const Complex lambda(a10, std::sqrt(1.0 - a10 * a10));
        if (!resonance_margin_ok(lambda, 0.05)) continue;
        out.push_back(AsymSample{L, R0, R1, u2(rng), u2(rng), u4(rng), u4(rng)});
    }
    return out;
}

TableConfig table_from_sym(const SymSample& s) {
    return make_symmetric_table(s.L, profile_from_curvature(CurvatureJet{s.R, s.R2, s.R4, false}));
}

TableConfig table_from_asym(const AsymSample& s) {
    return make_table(s.L, profile_from_curvature(CurvatureJet{s.R0, s.R02, s.R04, false}),
                      profile_from_curvature(CurvatureJet{s.R1, s.R12, s.R14, false}));
}

// --- criteria ---

CriterionOutcome crit_formula_pipeline_agreement() {
    Check c;
    const auto sym = sample_symmetric(100, 20240601);
    for (const auto& s : sym) {
        const NormalFormResult nf = analyze(table_from_sym(s));
        const double f1 = 2.0 * tau1_sym(s.L, s.R, s.R2);
        const double f2 = 2.0 * tau2_sym(s.L, s.R, s.R2, s.R4);
        c.expect(nf.tau1_orbit && rel_err(*nf.tau1_orbit, f1) <= 1e-8,
                 "sym tau1 mismatch at L=" + std::to_string(s.L) + " R=" + std::to_string(s.R));
        c.expect(nf.tau2_orbit && rel_err(*nf.tau2_orbit, f2) <= 1e-7,
                 "sym tau2 mismatch at L=" + std::to_string(s.L) + " R=" + std::to_string(s.R));
    }
    const auto asym = sample_asymmetric(100, 20240602);
    for (const auto& s : asym) {
        const NormalFormResult nf = analyze(table_from_asym(s));
        const TwistInput in = TwistInput::make(s.L, CurvatureJet{s.R0, s.R02, s.R04, false},
                                               CurvatureJet{s.R1, s.R12, s.R14, false});
        const double f1 = tau1_asym(in);
        const double f2 = tau2_asym(in);
        c.expect(nf.tau1_orbit && rel_err(*nf.tau1_orbit, f1) <= 1e-8,
                 "asym tau1 mismatch at L=" + std::to_string(s.L));
        c.expect(nf.tau2_orbit && rel_err(*nf.tau2_orbit, f2) <= 1e-7,
                 "asym tau2 mismatch at L=" + std::to_string(s.L));
    }
    return {1, "formula/pipeline agreement (100 symmetric + 100 asymmetric tables)", c.pass,
            c.text("tau1 within 1e-8, tau2 within 1e-7 on all 200 tables")};
}

CriterionOutcome crit_paper_fixtures() {
    Check c;
    for (double b : {0.3, 0.6, 0.65}) {
        const NormalFormResult nf = analyze(ellipse_table(b));
        c.expect(nf.tau1_map && std::fabs(*nf.tau1_map - b / 2.0) <= 1e-10,
                 "ellipse tau1 != b/2 at b=" + std::to_string(b));
    }
    for (double L : {0.3, 1.7}) {
        const NormalFormResult nf = analyze(lemon_table(L));
        c.expect(nf.tau1_map && std::fabs(*nf.tau1_map - 0.125) <= 1e-10,
                 "lemon tau1 != 1/8 at L=" + std::to_string(L));
    }
    for (double R : {2.0, 3.0}) {
        const double r = 1.0, B = R + 0.5 * r;  // L = r/2 < r: elliptic, k = 0
        const NormalFormResult nf = analyze(asymmetric_lemon_table(r, B, R));
        const double want = (1.0 / r + 1.0 / R) / 8.0;
        c.expect(nf.tau1_orbit && std::fabs(*nf.tau1_orbit - want) <= 1e-10,
                 "asymmetric lemon tau1(F^2) mismatch at R=" + std::to_string(R));
    }
    {
        const double b = 0.5;
        const NormalFormResult nf = analyze(ellipse_table(b));
        const double want = 3.0 * b * (3.0 - 2.0 * b * b) / (32.0 * std::sqrt(1.0 - b * b));
        c.expect(nf.tau2_map && std::fabs(*nf.tau2_map - want) <= 1e-10,
                 "ellipse tau2 mismatch at b=0.5");
    }
    return {2, "paper fixtures exact to 1e-10", c.pass,
            c.text("ellipse b/2, lemon 1/8, asymmetric lemon, ellipse tau2(0.5)")};
}

CriterionOutcome crit_third_derivatives() {
    Check c;
    std::mt19937 rng(20240603);
    std::uniform_real_distribution<double> ur(0.6, 2.0), ux(0.15, 1.85), u2(-3.0, 3.0);
    for (int i = 0; i < 20; ++i) {
        const double R = ur(rng), L = ux(rng) * R, R2 = u2(rng);
        const TableConfig t =
            make_symmetric_table(L, profile_from_curvature(CurvatureJet{R, R2, 0.0, false}));
        const MapJet jet = map_jet(t);
        auto deriv = [&](const Jet& s, int j, int k) {
            double f = 1.0;
            for (int q = 2; q <= j; ++q) f *= q;
            for (int q = 2; q <= k; ++q) f *= q;
            return s.coeff(j, k) * f;
        };
        const double R3 = R * R * R, R4p = R3 * R, R5 = R4p * R;
        const double s30 = (L * L * L - 6 * L * L * R + 11 * L * R * R - 6 * R3) / R5 -
                           L / (R * R) * R2;
        const double s21 = (L * L * L - 5 * L * L * R + 7 * L * R * R - 2 * R3) / R4p;
        const double s12 = L * (L - 2 * R) * (L - 2 * R) / R3;
        const double s03 = L * (L * L - 3 * L * R + 3 * R * R) / (R * R);
        const double u30 = (2 * R - L) / R4p +
                           (-L * L * L + 3 * L * L * R - 4 * L * R * R + 2 * R3) / R5 * R2;
        const double u21 = (2 * R - L) / R3 + (-L * L * L + 2 * L * L * R - L * R * R) / R4p * R2;
        const double u12 = (2 * R - L) / (R * R) + (-L * L * L + L * L * R) / R3 * R2;
        const double u03 = -L * L * L / (R * R) * R2;
        const std::pair<double, double> cases[] = {
            {deriv(jet.S1, 3, 0), s30}, {deriv(jet.S1, 2, 1), s21}, {deriv(jet.S1, 1, 2), s12},
            {deriv(jet.S1, 0, 3), s03}, {deriv(jet.U1, 3, 0), u30}, {deriv(jet.U1, 2, 1), u21},
            {deriv(jet.U1, 1, 2), u12}, {deriv(jet.U1, 0, 3), u03}};
        for (const auto& [got, want] : cases)
            c.expect(rel_err(got, want) <= 1e-9,
                     "third derivative mismatch at L=" + std::to_string(L) +
                         " R=" + std::to_string(R));
    }
    return {3, "third-derivative fixtures (8 partials, 20 random tables)", c.pass,
            c.text("all jet third derivatives within 1e-9 relative")};
}

CriterionOutcome crit_jacobi_identities() {
    Check c;
    for (const auto& s : sample_symmetric(100, 20240601)) {
        const NormalFormResult nf = analyze(table_from_sym(s));
        c.expect(nf.jacobi3_residual <= 1e-9, "jacobi3 residual too large (symmetric)");
        c.expect(nf.jacobi5_residual && *nf.jacobi5_residual <= 1e-8,
                 "jacobi5 residual too large (symmetric)");
    }
    for (const auto& s : sample_asymmetric(100, 20240602)) {
        const NormalFormResult nf = analyze(table_from_asym(s));
        c.expect(nf.jacobi3_residual <= 1e-9, "jacobi3 residual too large (asymmetric)");
        c.expect(nf.jacobi5_residual && *nf.jacobi5_residual <= 1e-8,
                 "jacobi5 residual too large (asymmetric)");
    }
    return {4, "Jacobian identities on the criterion-1 sample", c.pass,
            c.text("order-3 residuals <= 1e-9, order-5 residuals <= 1e-8")};
}

CriterionOutcome crit_rotation_numbers() {
    Check c;
    const double b = 0.6;
    {
        const double s = elliptic_E(0.1, std::sqrt(1.0 - b * b));
        const WindingResult w = rho_numeric(ellipse_table(b), PhasePoint{0, s, 0.0}, 100000);
        const double kol = rho_kolodziej(b, 0.1);
        c.expect(std::fabs(w.rho - kol) <= 1e-5,
                 "winding vs exact: " + std::to_string(std::fabs(w.rho - kol)));
    }
    const double theta0 = std::acos(2.0 * std::pow(1.0 - 2.0 * b * b, 2) - 1.0);
    auto kol = [&](double t) { return t == 0.0 ? theta0 / (2 * M_PI) : rho_kolodziej(b, t); };
    {
        const double want = b * std::sqrt(1.0 - b * b) / M_PI;
        const double got = even_second_derivative(kol, 1e-3);
        c.expect(std::fabs(got - want) <= 1e-5,
                 "rho''(0) error " + std::to_string(std::fabs(got - want)));
    }
    {
        const double want = b * (17.0 - 18.0 * b * b) * std::sqrt(1.0 - b * b) / (4.0 * M_PI);
        const double got = even_fourth_derivative(kol, 5e-3);
        c.expect(std::fabs(got - want) / std::fabs(want) <= 1e-3,
                 "rho''''(0) relative error " +
                     std::to_string(std::fabs(got - want) / std::fabs(want)));
    }
    return {5, "rotation numbers (ellipse b = 0.6)", c.pass,
            c.text("winding vs exact <= 1e-5, rho''(0) <= 1e-5, rho''''(0) <= 1e-3 rel")};
}

CriterionOutcome crit_asymmetric_limits() {
    Check c;
    std::mt19937 rng(20240604);
    std::uniform_real_distribution<double> ur(0.7, 2.0), ux(0.1, 0.85), u2(-2.0, 2.0),
        u4(-5.0, 5.0);
    for (int i = 0; i < 10; ++i) {
        const double R = ur(rng), L = ux(rng) * R;
        const double R2a = u2(rng), R2b = u2(rng), R4a = u4(rng), R4b = u4(rng);
        // Equal radii, equal data: F^2 equals the doubled one-step map.
        const TwistInput in = TwistInput::make(L, CurvatureJet{R, R2a, R4a, false},
                                               CurvatureJet{R, R2a, R4a, false});
        const double got = tau2_asym(in);
        const double want = 2.0 * tau2_sym(L, R, R2a, R4a);
        c.expect(std::fabs(got - want) <= 1e-10 * std::max(1.0, std::fabs(want)),
                 "tau2_asym != 2 tau2_sym at L=" + std::to_string(L));
        // Flat wall: generic formula at R1/L = 1e8 vs the doubled-table form.
        const double Lf = std::min(0.44 * R, L);
        if (std::fabs(R - 2.0 * Lf) < 0.05 * R) continue;
        const TwistInput inf = TwistInput::make(Lf, CurvatureJet{R, R2b, R4b, false},
                                                CurvatureJet{1e8 * Lf, 0.0, 0.0, false});
        const double flat_generic = tau2_asym(inf);
        const double flat_exact = tau2_flat_wall(Lf, CurvatureJet{R, R2b, R4b, false});
        c.expect(rel_err(flat_generic, flat_exact) <= 1e-5,
                 "flat-wall limit mismatch at L=" + std::to_string(Lf));
    }
    return {6, "asymmetric limits (equal radii, flat wall)", c.pass,
            c.text("2x one-step reduction <= 1e-10, flat-wall limit <= 1e-5")};
}

CriterionOutcome crit_scaling_degrees() {
    Check c;
    const auto sym = sample_symmetric(5, 20240605);
    const auto asym = sample_asymmetric(5, 20240606);
    auto check_scale = [&](const TableConfig& t, const std::string& label) {
        const NormalFormResult nf1 = analyze(t);
        const NormalFormResult nf2 = analyze(scale_table(t, 2.0));
        c.expect(nf1.tau1_orbit && nf2.tau1_orbit &&
                     rel_err(*nf2.tau1_orbit, *nf1.tau1_orbit / 2.0) <= 1e-9,
                 "tau1 scaling mismatch (" + label + ")");
        c.expect(nf1.tau2_orbit && nf2.tau2_orbit &&
                     rel_err(*nf2.tau2_orbit, *nf1.tau2_orbit / 4.0) <= 1e-9,
                 "tau2 scaling mismatch (" + label + ")");
    };
    for (const auto& s : sym) check_scale(table_from_sym(s), "symmetric");
    for (const auto& s : asym) check_scale(table_from_asym(s), "asymmetric");
    return {7, "scaling degrees (tau1 ~ 1/k, tau2 ~ 1/k^2 at k = 2)", c.pass,
            c.text("10 tables scale to 1e-9 relative")};
}

CriterionOutcome crit_resonance_verdicts() {
    Check c;
    {
        const NormalFormResult nf = analyze(lemon_table(1.0));
        c.expect(nf.verdict == Verdict::NotLocallyAnalyticallyIntegrable,
                 "lemon L=1 verdict is not 'not_locally_analytically_integrable'");
        c.expect(std::abs(nf.c03 - Complex(0.0, -0.125)) <= 1e-10,
                 "lemon L=1 c03 != -i/8");
    }
    for (double R : {1.0, 1.7}) {
        const TableConfig t = make_symmetric_table(
            R, profile_from_curvature(CurvatureJet{R, -3.0 / R, 0.0, false}));
        const NormalFormResult nf = analyze(t);
        c.expect(std::abs(nf.c03) <= 1e-10, "removable case c03 residual too large");
        c.expect(nf.verdict == Verdict::Ok, "removable case verdict is not ok");
        c.expect(nf.tau1_map && std::fabs(*nf.tau1_map - 1.0 / (2.0 * R)) <= 1e-10,
                 "removable case tau1 != 1/(2R)");
    }
    return {8, "resonance/integrability verdicts at lambda^4 = 1", c.pass,
            c.text("lemon obstruction and R'' = -3/R removable case detected")};
}

CriterionOutcome crit_pole_structure() {
    Check c;
    std::mt19937 rng(20240607);
    std::uniform_real_distribution<double> ur(0.7, 1.6), u2(-2.0, 2.0), u4(-5.0, 5.0);
    int done = 0;
    while (done < 3) {
        const double R = ur(rng), R2 = u2(rng), R4 = u4(rng);
        if (std::fabs(3.0 + R * R2) < 0.3) continue;
        const PoleCheckResult pc = pole_structure_check(R, R2, R4);
        c.expect(pc.applicable, "pole check unexpectedly not applicable");
        c.expect(pc.rel_residual <= 1e-3,
                 "pole coefficient residual " + std::to_string(pc.rel_residual));
        c.expect(std::fabs(pc.slope + 1.0) <= 0.05,
                 "pole order estimate " + std::to_string(pc.slope));
        ++done;
    }
    return {9, "tau2 pole structure along L = R", c.pass,
            c.text("fitted pole coefficient within 1e-3, simple-pole slope within 0.05")};
}

CriterionOutcome crit_eh_root() {
    double lo = 1.70, hi = 1.89;
    double flo = eh_shift_tau2_on_locus(lo);
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eh_shift_tau2_on_locus(mid);
        if ((flo > 0) == (fm > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    const double root = 0.5 * (lo + hi);
    const bool pass = std::fabs(root - 1.87861) <= 1e-4;
    return {10, "ellipse-hyperbola lens tau2 root", pass,
            pass ? "bisection brackets a* = 1.87861 within 1e-4"
                 : "found root " + std::to_string(root)};
}

}  // namespace

std::vector<CriterionOutcome> run_acceptance(const std::string& filter) {
    using Fn = std::function<CriterionOutcome()>;
    const std::pair<const char*, Fn> all[] = {
        {"formula/pipeline agreement", crit_formula_pipeline_agreement},
        {"paper fixtures", crit_paper_fixtures},
        {"third derivatives", crit_third_derivatives},
        {"jacobi identities", crit_jacobi_identities},
        {"rotation numbers", crit_rotation_numbers},
        {"asymmetric limits", crit_asymmetric_limits},
        {"scaling degrees", crit_scaling_degrees},
        {"resonance verdicts", crit_resonance_verdicts},
        {"pole structure", crit_pole_structure},
        {"eh lens root", crit_eh_root},
    };
    std::vector<CriterionOutcome> out;
    for (const auto& [name, fn] : all) {
        if (!filter.empty() && std::string(name).find(filter) == std::string::npos) continue;
        out.push_back(fn());
    }
    return out;
}

bool print_acceptance(std::ostream& os, const std::vector<CriterionOutcome>& outcomes) {
    bool all = true;
    for (const auto& o : outcomes) {
        os << (o.pass ? "PASS" : "FAIL") << "  [" << o.id << "] " << o.name << ": " << o.detail
           << "\n";
        all = all && o.pass;
    }
    os << (all ? "all criteria passed\n" : "SOME CRITERIA FAILED\n");
    return all;
}

}  // namespace billiards
