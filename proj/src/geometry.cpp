#include "billiards/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace billiards {

BoundaryProfile make_profile(const std::vector<double>& even_coeffs,
                             std::optional<double> eps,
                             std::vector<std::string>* warnings) {
    BoundaryProfile p;
    for (std::size_t i = 0; i < even_coeffs.size() && i < 3; ++i) p.coeffs[i] = even_coeffs[i];
    bool ignored = false;
    for (std::size_t i = 3; i < even_coeffs.size(); ++i)
        if (even_coeffs[i] != 0.0) ignored = true;
    if (ignored && warnings)
        warnings->push_back(
            "profile coefficients beyond a6 are ignored; the first two twist "
            "coefficients do not depend on them");

    if (p.coeffs[0] < 0.0) throw InvalidProfileError("a2 must be nonnegative");
    if (p.coeffs[0] == 0.0 && (p.coeffs[1] != 0.0 || p.coeffs[2] != 0.0))
        throw InvalidProfileError("a2 = 0 requires all higher coefficients zero (flat arc)");

    if (eps) {
        if (*eps <= 0.0) throw InvalidParameterError("profile domain half-width must be positive");
        p.eps = *eps;
    } else if (p.flat()) {
        p.eps = 1e6;
    } else {
        const double R = 1.0 / (2.0 * p.coeffs[0]);
        p.eps = std::min(0.9 * R, 1.0);
    }
    return p;
}

CurvatureJet curvature_jet(const BoundaryProfile& profile) {
    if (profile.flat()) return CurvatureJet{0.0, 0.0, 0.0, true};
    const double a2 = profile.a2(), a4 = profile.a4(), a6 = profile.a6();
    if (a2 <= 0.0) throw InvalidProfileError("a2 must be positive for a curved arc");
    CurvatureJet jet;
    jet.R = 1.0 / (2.0 * a2);
    jet.R2 = 6.0 * a2 - 6.0 * a4 / (a2 * a2);
    jet.R4 = -12.0 *
             (2.0 * std::pow(a2, 6) + 4.0 * std::pow(a2, 3) * a4 - 36.0 * a4 * a4 +
              15.0 * a2 * a6) /
             std::pow(a2, 3);
    jet.flat = false;
    return jet;
}

BoundaryProfile profile_from_curvature(const CurvatureJet& jet) {
    if (jet.flat) throw UnsupportedError("cannot build a polynomial profile for a flat arc");
    if (jet.R <= 0.0) throw InvalidProfileError("radius of curvature must be positive");
    const double a2 = 1.0 / (2.0 * jet.R);
    const double a4 = a2 * a2 * (6.0 * a2 - jet.R2) / 6.0;
    const double a6 = (-jet.R4 * std::pow(a2, 3) / 12.0 - 2.0 * std::pow(a2, 6) -
                       4.0 * std::pow(a2, 3) * a4 + 36.0 * a4 * a4) /
                      (15.0 * a2);
    return make_profile({a2, a4, a6});
}

BoundaryProfile circle_profile(double R) {
    if (R <= 0.0) throw InvalidParameterError("circle radius must be positive");
    BoundaryProfile p = make_profile({1.0 / (2.0 * R), 1.0 / (8.0 * R * R * R),
                                      1.0 / (16.0 * std::pow(R, 5))});
    p.eps = 0.9 * R;
    return p;
}

BoundaryProfile ellipse_vertex_profile(double A, double B) {
    if (A <= 0.0 || B <= 0.0) throw InvalidParameterError("ellipse semi-axes must be positive");
    BoundaryProfile p = make_profile(
        {A / (2.0 * B * B), A / (8.0 * std::pow(B, 4)), A / (16.0 * std::pow(B, 6))});
    p.eps = 0.9 * B;
    return p;
}

BoundaryProfile ellipse_minor_vertex_profile(double b) {
    return ellipse_vertex_profile(b, 1.0);
}

BoundaryProfile hyperbola_vertex_profile(double p, double q) {
    if (p <= 0.0 || q <= 0.0) throw InvalidParameterError("hyperbola parameters must be positive");
    BoundaryProfile prof = make_profile(
        {p / (2.0 * q * q), -p / (8.0 * std::pow(q, 4)), p / (16.0 * std::pow(q, 6))});
    prof.eps = 2.0 * q;
    return prof;
}

BoundaryProfile flat_profile() { return make_profile({}); }

BoundaryProfile named_profile(ProfileKind kind, const std::vector<double>& params) {
    switch (kind) {
        case ProfileKind::Circle:
            if (params.size() != 1) throw InvalidParameterError("circle takes one parameter R");
            return circle_profile(params[0]);
        case ProfileKind::EllipseMinorVertex:
            if (params.size() != 1)
                throw InvalidParameterError("ellipse_minor_vertex takes one parameter b");
            return ellipse_minor_vertex_profile(params[0]);
        case ProfileKind::HyperbolaVertex:
            if (params.size() != 2)
                throw InvalidParameterError("hyperbola_vertex takes parameters (p, q)");
            return hyperbola_vertex_profile(params[0], params[1]);
        case ProfileKind::Flat:
            if (!params.empty()) throw InvalidParameterError("flat takes no parameters");
            return flat_profile();
    }
    throw InvalidParameterError("unknown profile kind");
}

std::optional<ProfileKind> profile_kind_from_string(const std::string& name) {
    if (name == "circle") return ProfileKind::Circle;
    if (name == "ellipse_minor_vertex" || name == "ellipse") return ProfileKind::EllipseMinorVertex;
    if (name == "hyperbola_vertex" || name == "hyperbola") return ProfileKind::HyperbolaVertex;
    if (name == "flat") return ProfileKind::Flat;
    return std::nullopt;
}

BoundaryProfile scale_profile(const BoundaryProfile& profile, double k) {
    if (k <= 0.0) throw InvalidParameterError("scale factor must be positive");
    BoundaryProfile p = profile;
    // a_{2n} has scaling degree 1 - 2n.
    p.coeffs[0] = profile.coeffs[0] / k;
    p.coeffs[1] = profile.coeffs[1] / std::pow(k, 3);
    p.coeffs[2] = profile.coeffs[2] / std::pow(k, 5);
    p.eps = profile.eps * k;
    return p;
}

TableConfig scale_table(const TableConfig& table, double k) {
    if (k <= 0.0) throw InvalidParameterError("scale factor must be positive");
    TableConfig t;
    t.L = table.L * k;
    t.left = scale_profile(table.left, k);
    t.right = scale_profile(table.right, k);
    t.symmetric = table.symmetric;
    return t;
}

TableConfig make_symmetric_table(double L, const BoundaryProfile& profile) {
    if (L <= 0.0) throw InvalidParameterError("chord length L must be positive");
    return TableConfig{L, profile, profile, true};
}

TableConfig make_table(double L, const BoundaryProfile& left, const BoundaryProfile& right) {
    if (L <= 0.0) throw InvalidParameterError("chord length L must be positive");
    const bool sym = left.coeffs == right.coeffs;
    return TableConfig{L, left, right, sym};
}

TableConfig lemon_table(double L) { return make_symmetric_table(L, circle_profile(1.0)); }

TableConfig ellipse_table(double b) {
    if (!(b > 0.0 && b < 1.0)) throw InvalidParameterError("ellipse parameter b must be in (0,1)");
    return make_symmetric_table(2.0 * b, ellipse_minor_vertex_profile(b));
}

TableConfig asymmetric_lemon_table(double r, double B, double R) {
    if (!(0.0 < r && r <= R)) throw InvalidParameterError("need 0 < r <= R");
    if (!(R - r < B && B < R + r)) throw InvalidParameterError("need R - r < B < R + r");
    return make_table(R + r - B, circle_profile(r), circle_profile(R));
}

TableConfig half_ellipses_table(double b0, double b1) {
    if (!(0.0 < b1 && b1 < b0 && b0 < 1.0))
        throw InvalidParameterError("need 0 < b1 < b0 < 1");
    return make_table(b0 + b1, ellipse_minor_vertex_profile(b0), ellipse_minor_vertex_profile(b1));
}

TableConfig eh_lens_shift_table(double a, double s) {
    if (!(a > 1.0)) throw InvalidParameterError("need a > 1");
    const double p = 1.0 / a;
    const double q = std::sqrt(1.0 - p * p);
    const double L = a - 1.0 / a - s;
    if (!(L > 0.0)) throw InvalidParameterError("shift s must keep the chord positive");
    return make_table(L, hyperbola_vertex_profile(p, q),
                      ellipse_vertex_profile(a, std::sqrt(a * a - 1.0)));
}

TableConfig eh_lens_deform_table(double a, double p, double q) {
    if (!(a > 1.0 && p > 0.0 && p < a && q > 0.0))
        throw InvalidParameterError("need a > 1 and 0 < p < a and q > 0");
    return make_table(a - p, hyperbola_vertex_profile(p, q),
                      ellipse_vertex_profile(a, std::sqrt(a * a - 1.0)));
}

}  // namespace billiards
