#pragma once

// Degree-5 (up to 7) Taylor jet of the one-step billiard map at the period-2
// orbit, computed by expanding the geometric reflection construction in the
// truncated ring: arclength inversion, ray-curve intersection by an implicit
// series solve, and the reflected angle read off in the target arc's frame.

#include "billiards/geometry.hpp"
#include "billiards/series.hpp"

namespace billiards {

struct MapJet {
    Jet S1;  // expansion of s1(s, u)
    Jet U1;  // expansion of u1(s, u)
    double L = 0.0;
    int source_arc = 0;  // 0: map gamma0 -> gamma1, 1: map gamma1 -> gamma0

    int degree() const { return S1.degree(); }
    int target_arc() const { return 1 - source_arc; }

    /// Taylor coefficient of s^j u^k in s1 (i.e. partial derivative / j!k!).
    double a_coeff(int j, int k) const { return S1.coeff(j, k); }
    double b_coeff(int j, int k) const { return U1.coeff(j, k); }

    /// Largest residual among the even-order coefficients (j+k in {0,2,4,6}),
    /// which vanish identically for even boundary profiles.
    double even_order_residual() const;

    /// Coefficients of det DF(s,u) - 1 as a series (symplecticity check).
    double symplectic_residual() const;
};

MapJet map_jet(const TableConfig& table, int source_arc = 0, int degree = 5);

/// Composition second∘first; `first` must land on the arc `second` leaves.
MapJet compose_maps(const MapJet& first, const MapJet& second);

/// Structured text dump: lines of `series j k coefficient`.
void write_jet_dump(std::ostream& os, const MapJet& jet);

}  // namespace billiards
