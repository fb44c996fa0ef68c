#pragma once

// Birkhoff reduction of a billiard-map jet at the elliptic period-2 orbit:
// linearize and rescale to rotation form, pass to complex coordinates,
// remove the non-resonant cubic terms through a symplectic (generating
// function) change of variables, and read off the first two twist
// coefficients tau1 = Im c21 and tau2 = Im C32.

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "billiards/errors.hpp"
#include "billiards/map_jet.hpp"
#include "billiards/series.hpp"

namespace billiards {

using Complex = std::complex<double>;

struct NormalFormOptions {
    double resonance_tol = 1e-8;  // |lambda^n - 1| below this flags a resonance
    double c03_tol = 1e-10;       // |c03| below this makes a lambda^4 resonance removable
    double pole_guard = 1e-6;     // relative width of the refused strip around the tau2 pole
    int degree = 5;
};

struct LinearData {
    double eta = 0.0;    // (-a01~ / b10~)^(1/4)
    Complex lambda;      // a10 - i a01 after rescaling
    double theta = 0.0;  // arg(lambda) in (0, 2*pi)
    StabilityClass stability = StabilityClass::Elliptic;
    double a10 = 0.0, a01 = 0.0, b10 = 0.0, b01 = 0.0;
};

struct LinearizedMap {
    LinearData linear;
    Jet x1, y1;  // the map in the rescaled coordinates (x, y) = (s/eta, eta*u)
};

struct ResonanceFlags {
    bool lambda3 = false;
    bool lambda4 = false;
    bool lambda6 = false;
    bool any() const { return lambda3 || lambda4 || lambda6; }
};

/// Complexified coefficients: z1 = lambda (z + sum c_jk z^j w^k + ...).
struct ComplexCoeffs {
    // order three: c30 c21 c12 c03
    std::array<Complex, 4> c3{};
    // order five: c50 c41 c32 c23 c14 c05
    std::array<Complex, 6> c5{};
    Complex c30() const { return c3[0]; }
    Complex c21() const { return c3[1]; }
    Complex c12() const { return c3[2]; }
    Complex c03() const { return c3[3]; }
};

struct Order3Reduction {
    Complex d30, d21, d12, d03;
    double tau1 = 0.0;
    bool removable_resonance = false;  // lambda^4 = 1 handled with d03 = 0
    // Real generating-function coefficients (x^j y^k, j+k = 3, j = 3..0).
    std::array<double, 4> p3{}, q3{};
};

struct Order5Reduction {
    std::array<Complex, 6> C5{};  // C50 C41 C32 C23 C14 C05
    double tau2 = 0.0;
    std::optional<Complex> D50, D41, D14, D05;
    Complex D32{0.0, 0.0}, D23{0.0, 0.0};
    // Induced quintic terms of the symplectic transform (j = 5..0).
    std::array<double, 6> p5{}, q5{};
    // Fifth-order coefficients of the map in the transformed real coordinates.
    std::array<double, 6> A5{}, B5{};
};

enum class Verdict { Ok, NotLocallyAnalyticallyIntegrable, Inconclusive };

const char* to_string(Verdict v);

struct NormalFormResult {
    bool symmetric_path = false;  // true: analyzed the one-step map of a symmetric table
    LinearData linear;
    ResonanceFlags resonances;
    Complex c03{};

    // Twist coefficients of the analyzed map (F for the symmetric path, F^2
    // otherwise) and of the orbit's return map F^2.
    std::optional<double> tau1_map, tau2_map;
    std::optional<double> tau1_orbit, tau2_orbit;

    Verdict verdict = Verdict::Ok;
    std::vector<std::string> notes;

    ComplexCoeffs cjet;
    std::optional<Order3Reduction> order3;
    std::optional<Order5Reduction> order5;

    double jacobi3_residual = 0.0;
    std::optional<double> jacobi5_residual;
};

/// Linear part: eta, lambda, theta, stability, and the rescaled (x,y) jet.
/// Throws StabilityError for parabolic/hyperbolic data.
LinearizedMap linearize(const MapJet& jet);

/// Complex cubic/quintic coefficients of a rescaled (x,y) jet.
ComplexCoeffs complexify(const Jet& x1, const Jet& y1, Complex lambda);

ResonanceFlags detect_resonances(Complex lambda, double tol);

/// Cubic reduction: d_jk, tau1 = Im c21, and the real generating-function
/// coefficients p_jk, q_jk.  Throws ResonanceError(4) when lambda^4 = 1 with
/// |c03| above tolerance.
Order3Reduction reduce_order3(const ComplexCoeffs& cjet, Complex lambda,
                              const NormalFormOptions& opts = {});

/// Quintic reduction after the symplectic cubic transform: C_jk, tau2 = Im C32,
/// and the removable D_jk.  Requires the order-3 output and the rescaled jet.
/// Throws ResonanceError(6) (or 3) when lambda^6 = 1 within tolerance.
Order5Reduction reduce_order5(const LinearizedMap& lin, const Order3Reduction& o3,
                              const NormalFormOptions& opts = {});

/// Full pipeline on a table: one-step map for symmetric tables (with orbit
/// values doubled), composed two-step map for asymmetric tables.
/// Throws StabilityError when the orbit is not elliptic; resonance and
/// near-pole conditions are reported in the result, not thrown.
NormalFormResult analyze(const TableConfig& table, const NormalFormOptions& opts = {});

/// Same pipeline on a caller-supplied jet (used for cross-checks).
NormalFormResult analyze_jet(const MapJet& jet, bool jet_is_return_map,
                             const NormalFormOptions& opts = {});

}  // namespace billiards
