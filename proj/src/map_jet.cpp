#include "billiards/map_jet.hpp"

#include <cmath>
#include <ostream>

#include "billiards/errors.hpp"
#include "billiards/poly1.hpp"

namespace billiards {

namespace {

/// Arclength series s(t) and its integrand sqrt(1 + a'(t)^2) for a profile.
struct ArcSeries {
    Poly1 graph, dgraph, speed, arclen;
    explicit ArcSeries(const BoundaryProfile& p, int degree)
        : graph(p.graph()), dgraph(p.graph().derivative()) {
        const Poly1 one({1.0});
        speed = (one + dgraph * dgraph).sqrt_series(degree + 1);
        arclen = speed.antiderivative();
    }
};

}  // namespace

double MapJet::even_order_residual() const {
    double m = 0.0;
    for (int n = 0; n <= degree(); n += 2)
        m = std::max({m, S1.max_abs_order(n), U1.max_abs_order(n)});
    return m;
}

double MapJet::symplectic_residual() const {
    const Jet det = S1.diff_s() * U1.diff_u() - S1.diff_u() * U1.diff_s();
    Jet dev = det - Jet::constant(1.0, det.degree());
    // Derivatives drop one order, so only coefficients up to degree-1 are valid.
    double m = 0.0;
    for (int n = 0; n <= degree() - 1; ++n) m = std::max(m, dev.max_abs_order(n));
    return m;
}

MapJet map_jet(const TableConfig& table, int source_arc, int degree) {
    if (source_arc != 0 && source_arc != 1) throw InvalidParameterError("source arc must be 0 or 1");
    const BoundaryProfile& src = source_arc == 0 ? table.left : table.right;
    const BoundaryProfile& dst = source_arc == 0 ? table.right : table.left;
    const double L = table.L;

    const ArcSeries A(src, degree);
    const ArcSeries B(dst, degree);

    const Jet S = Jet::var_s(degree);
    const Jet U = Jet::var_u(degree);
    const Jet one = Jet::constant(1.0, degree);

    // Invert the arclength: t0 with arclen_A(t0) = s.
    std::function<Jet(const Jet&)> G_t = [&](const Jet& w) { return A.arclen.eval(w) - S; };
    std::function<Jet(const Jet&)> dG_t = [&](const Jet& w) { return A.speed.eval(w); };
    const Jet t0 = solve_implicit<double>(G_t, dG_t, S);

    // Outgoing ray in the source arc's frame: d = -u T + sqrt(1-u^2) N.
    const Jet ap = A.dgraph.eval(t0);
    const Jet inv_n = (one + ap * ap).sqrt().reciprocal();
    const Jet Tx = ap * inv_n, Ty = inv_n;
    const Jet Nx = inv_n, Ny = -(ap * inv_n);
    const Jet sin_th = (one - U * U).sqrt();
    const Jet dx = -(U * Tx) + sin_th * Nx;
    const Jet dy = -(U * Ty) + sin_th * Ny;

    // Chord length l(s,u): the ray meets the opposite arc where
    // a(t0) + l dx + b(t0 + l dy) = L.
    const Jet posx = A.graph.eval(t0);
    std::function<Jet(const Jet&)> G_l = [&](const Jet& l) {
        return posx + l * dx + B.graph.eval(t0 + l * dy) - Jet::constant(L, degree);
    };
    std::function<Jet(const Jet&)> dG_l = [&](const Jet& l) {
        return dx + B.dgraph.eval(t0 + l * dy) * dy;
    };
    Jet ell(degree);
    try {
        ell = solve_implicit<double>(G_l, dG_l, Jet::constant(L, degree));
    } catch (const ImplicitSingularityError&) {
        throw DegenerateOrbitError("grazing chord: impact equation is degenerate at the orbit");
    }

    // Impact parameter in the target arc's own frame (point-reflected).
    const Jet t1 = -(t0 + ell * dy);
    const Jet bp = B.dgraph.eval(t1);
    const Jet inv_n1 = (one + bp * bp).sqrt().reciprocal();

    MapJet out;
    out.U1 = (bp * dx + dy) * inv_n1;  // u1 = -T1 . d
    out.S1 = B.arclen.eval(t1);
    out.L = L;
    out.source_arc = source_arc;
    return out;
}

MapJet compose_maps(const MapJet& first, const MapJet& second) {
    if (second.source_arc != first.target_arc())
        throw CompositionError("composition arcs do not match");
    first.S1.require_degree(second.degree());
    MapJet out;
    out.S1 = second.S1.compose2(first.S1, first.U1);
    out.U1 = second.U1.compose2(first.S1, first.U1);
    out.L = first.L;
    out.source_arc = first.source_arc;
    return out;
}

void write_jet_dump(std::ostream& os, const MapJet& jet) {
    char buf[128];
    for (int j = 0; j <= jet.degree(); ++j)
        for (int k = 0; j + k <= jet.degree(); ++k) {
            std::snprintf(buf, sizeof(buf), "S1 %d %d %.17g\n", j, k, jet.S1.coeff(j, k));
            os << buf;
        }
    for (int j = 0; j <= jet.degree(); ++j)
        for (int k = 0; j + k <= jet.degree(); ++k) {
            std::snprintf(buf, sizeof(buf), "U1 %d %d %.17g\n", j, k, jet.U1.coeff(j, k));
            os << buf;
        }
}

}  // namespace billiards
