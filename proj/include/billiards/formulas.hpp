#pragma once

// Closed-form twist coefficients of the period-2 orbit, stability and
// nonresonance classification, and evaluators for the named example families.
//
// Symmetric tables: tau1/tau2 of the one-step map in terms of (L, R, R'',
// R'''').  Asymmetric tables: tau1/tau2 of the return map F^2 via the
// homogeneous polynomials N, P, Q, S, T; a flat wall is handled by the
// doubled-table reduction instead of a large-radius limit.

#include <optional>
#include <string>
#include <vector>

#include "billiards/errors.hpp"
#include "billiards/geometry.hpp"

namespace billiards {

struct TwistInput {
    double L = 0.0;
    CurvatureJet j0, j1;
    // Derived data (curved-curved case only):
    double Delta = 0.0;  // L (R0-L)(R1-L)(R0+R1-L)
    double Gamma = 0.0;  // 2 (R0-L)(R1-L) - R0 R1
    int k = 0;           // 0: L < min(R0,R1);  1: max(R0,R1) < L < R0+R1

    bool any_flat() const { return j0.flat || j1.flat; }

    /// Validates ellipticity and fills the derived fields.
    static TwistInput make(double L, const CurvatureJet& j0, const CurvatureJet& j1);
};

struct StabilityReport {
    StabilityClass cls = StabilityClass::Elliptic;
    bool family_A = false;  // symmetric one-step semantics ((A1)/(A2)); else (B1)/(B2)
    bool nonres4 = true;    // (A1) or (B1): lambda^4 != 1
    bool nonres6 = true;    // (A2) or (B2): lambda^6 != 1
    std::optional<bool> moser_stable;
    std::vector<std::string> notes;
};

/// Classification + nonresonance predicates from the radii alone.  Flat arcs
/// are passed as jets with the flat flag set.
StabilityReport classify(double L, const CurvatureJet& j0, const CurvatureJet& j1);

/// Fill moser_stable from twist values when the needed flags hold.
void attach_moser_verdict(StabilityReport& rep, std::optional<double> tau1,
                          std::optional<double> tau2, double zero_tol = 1e-11);

// --- symmetric (one-step map F) ---
double tau1_sym(double L, double R, double R2);
double tau2_sym(double L, double R, double R2, double R4);

// --- asymmetric (return map F^2) ---
double tau1_asym(const TwistInput& in);
double tau2_asym(const TwistInput& in);

/// Equal-radius reductions (profiles may still differ in their derivatives).
double tau1_asym_equal_radius(double L, double R, double R2a, double R2b);
double tau2_asym_equal_radius(double L, double R, double R2a, double R2b, double R4a,
                              double R4b);

/// One wall flat: F^2 equals the one-step map of the doubled symmetric table.
double tau1_flat_wall(double L, const CurvatureJet& curved);
double tau2_flat_wall(double L, const CurvatureJet& curved);

// The homogeneous polynomials of the asymmetric tau2 formula.
double poly_N(double L, double R0, double R1);
double poly_P(double L, double R0, double R1);
double poly_Q(double L, double R0, double R1);
double poly_S(double L, double R0, double R1);
double poly_T(double L, double R0, double R1);

// --- named example families ---

/// tau1 of the shifted confocal ellipse-hyperbola lens (equal radii family).
double eh_shift_tau1(double a, double s);
/// Shift fraction rho1(a) locating the tau1 zero at s = rho1(a) (a - 1/a).
double eh_shift_rho1(double a);
/// tau2 along the tau1 = 0 locus of the shift family, as a function of a.
double eh_shift_tau2_on_locus(double a);
/// tau1 of the deformed lens (free hyperbola (p, q), fixed ellipse).
double eh_deform_tau1(double a, double p, double q);

/// Thresholds from the symmetric L = 1 family a(t) = a2 t^2 + a4 t^4 + a6 t^6:
/// a4 on the tau1 = 0 locus and a6 on the tau2 = 0 locus within it.
double tau1_zero_a4(double a2);
double tau2_zero_a6(double a2);

struct ExampleRow {
    std::string name;
    double expected = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};
std::vector<ExampleRow> example_suite();

/// Mesh extrapolation of (R - L) * tau2_sym as L -> R against the predicted
/// simple-pole coefficient -3 R c03^2 / 4 with c03 = -i (3 + R R'') / (24 R).
struct PoleCheckResult {
    bool applicable = false;   // false when c03(L = R) = 0
    double fitted_limit = 0.0;
    double predicted = 0.0;
    double rel_residual = 0.0;
    double slope = 0.0;  // log-log pole order estimate (should be ~ -1)
};
PoleCheckResult pole_structure_check(double R, double R2, double R4);

}  // namespace billiards
