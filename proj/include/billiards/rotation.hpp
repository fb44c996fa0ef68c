#pragma once

// Rotation numbers of F^2 on invariant circles around the period-2 orbit of
// the ellipse x^2/b^2 + y^2 = 1: the exact elliptic-integral formula for
// hyperbolic caustics, the twist-expansion approximation, and direct orbit
// winding measurement.

#include <optional>

#include "billiards/billiard_map.hpp"
#include "billiards/geometry.hpp"

namespace billiards {

/// Incomplete elliptic integrals (Legendre form, modulus k), computed via
/// Carlson symmetric integrals; absolute error well below 1e-12.
double elliptic_F(double alpha, double k);
double elliptic_E(double alpha, double k);

/// Hyperbolic caustic confocal to an ellipse of eccentricity e: the caustic's
/// eccentricity h > 1 determines the elliptic modulus and splitting angle.
struct CausticSpec {
    double e = 0.0;  // ellipse eccentricity in (0,1)
    double h = 0.0;  // caustic eccentricity > 1
    double k = 0.0;  // 2 sqrt(h) / (1 + h)
    double delta = 0.0;  // arcsin(e (h^2 - 1) / (h^2 - e^2))

    static CausticSpec make(double e, double h);
    /// Caustic of the trajectory leaving gamma(t) = (b cos t, sin t) along the
    /// inward normal: h = 1 / sin t.
    static CausticSpec from_ellipse_parameter(double b, double t);
};

/// Exact rotation number of F^2 on the caustic's invariant circle.
double rho_kolodziej(const CausticSpec& caustic);
double rho_kolodziej(double b, double t);

/// Twist-expansion approximation through fourth order in t.
double rho_twist(double b, double t);

struct WindingResult {
    double rho = 0.0;
    double std_error = 0.0;
    long iterations = 0;
};

/// Average winding angle of F^2-iterates around the orbit in the normalized
/// linear frame (x, y) = (s/eta, eta u).
WindingResult rho_numeric(const TableConfig& table, const PhasePoint& start, long n);

struct RotationReport {
    double t = 0.0;
    double rho_kol = 0.0;
    double rho_tw = 0.0;
    std::optional<double> rho_num;
    double err_kt = 0.0;  // |kolodziej - twist|
    std::optional<double> err_kn;
};

RotationReport compare_rotation(double b, double t, long n_numeric = 0);

/// Central finite-difference derivatives of an even function of t at 0.
double even_second_derivative(const std::function<double(double)>& f, double h);
double even_fourth_derivative(const std::function<double(double)>& f, double h);

}  // namespace billiards
