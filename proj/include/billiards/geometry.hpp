#pragma once

// Boundary arcs of a two-arc billiard table.
//
// Each arc is the graph of an even polynomial a(t) = a2 t^2 + a4 t^4 + a6 t^6
// over its tangent line at the orbit's impact point.  The series is truncated
// at degree 6: the first two twist coefficients depend only on (R, R'', R(4)),
// which this data determines.  A flat arc (straight wall, R = infinity) is
// represented by all-zero coefficients.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "billiards/errors.hpp"
#include "billiards/poly1.hpp"

namespace billiards {

struct BoundaryProfile {
    std::array<double, 3> coeffs{0.0, 0.0, 0.0};  // a2, a4, a6
    double eps = 1.0;                             // half-width of the t-domain

    double a2() const { return coeffs[0]; }
    double a4() const { return coeffs[1]; }
    double a6() const { return coeffs[2]; }
    bool flat() const { return coeffs[0] == 0.0 && coeffs[1] == 0.0 && coeffs[2] == 0.0; }

    /// The graph polynomial a(t) = a2 t^2 + a4 t^4 + a6 t^6.
    Poly1 graph() const {
        return Poly1({0.0, 0.0, coeffs[0], 0.0, coeffs[1], 0.0, coeffs[2]});
    }
};

/// Curvature data of an arc at the impact point: radius of curvature R and
/// the second and fourth arclength derivatives of R(s) at s = 0.
struct CurvatureJet {
    double R = 0.0;
    double R2 = 0.0;  // R''(0)
    double R4 = 0.0;  // R''''(0)
    bool flat = false;
};

struct TableConfig {
    double L = 1.0;
    BoundaryProfile left;
    BoundaryProfile right;
    bool symmetric = false;
};

/// Build a profile from an even-coefficient list (a2, a4, a6, ...).  At most
/// the first three entries are used; shorter lists are zero-padded.  Ignored
/// higher-order coefficients are reported through `warnings` when given.
BoundaryProfile make_profile(const std::vector<double>& even_coeffs,
                             std::optional<double> eps = std::nullopt,
                             std::vector<std::string>* warnings = nullptr);

CurvatureJet curvature_jet(const BoundaryProfile& profile);
BoundaryProfile profile_from_curvature(const CurvatureJet& jet);

BoundaryProfile circle_profile(double R);
/// Vertex of the ellipse x^2/A^2 + y^2/B^2 = 1 at (A, 0), as a graph over the
/// tangent line; A is the semi-axis along the orbit chord.
BoundaryProfile ellipse_vertex_profile(double A, double B);
/// Vertex of the ellipse x^2/b^2 + y^2 = 1 at (b, 0) (minor-axis impact).
BoundaryProfile ellipse_minor_vertex_profile(double b);
/// Vertex of the right branch of x^2/p^2 - y^2/q^2 = 1 at (p, 0).
BoundaryProfile hyperbola_vertex_profile(double p, double q);
BoundaryProfile flat_profile();

enum class ProfileKind { Circle, EllipseMinorVertex, HyperbolaVertex, Flat };

BoundaryProfile named_profile(ProfileKind kind, const std::vector<double>& params);
std::optional<ProfileKind> profile_kind_from_string(const std::string& name);

BoundaryProfile scale_profile(const BoundaryProfile& profile, double k);
TableConfig scale_table(const TableConfig& table, double k);

TableConfig make_symmetric_table(double L, const BoundaryProfile& profile);
TableConfig make_table(double L, const BoundaryProfile& left, const BoundaryProfile& right);

// Named example tables mirroring the classical constructions.
TableConfig lemon_table(double L);
TableConfig ellipse_table(double b);
TableConfig asymmetric_lemon_table(double r, double B, double R);
TableConfig half_ellipses_table(double b0, double b1);
/// Confocal ellipse-hyperbola lens with the hyperbola shifted by s along the
/// chord; the ellipse has semi-axes (a, sqrt(a^2-1)), the hyperbola vertex
/// parameter is p = 1/a.
TableConfig eh_lens_shift_table(double a, double s);
/// Ellipse-hyperbola lens with free hyperbola parameters (p, q).
TableConfig eh_lens_deform_table(double a, double p, double q);

}  // namespace billiards
