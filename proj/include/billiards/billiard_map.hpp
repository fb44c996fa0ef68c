#pragma once

// Exact evaluation of the billiard map near the period-2 orbit.
//
// Phase coordinates on each arc: s is the arclength from the vertex and
// u = -cos(theta), theta the angle from the arc's positive tangent to the
// outgoing ray.  The local frames of the two arcs are exchanged by the point
// reflection through the chord midpoint, so the two one-step maps of a
// symmetric table are the same function of (s, u).

#include <vector>

#include "billiards/geometry.hpp"
#include "billiards/poly1.hpp"

namespace billiards {

struct PhasePoint {
    int arc = 0;  // 0 = left arc, 1 = right arc
    double s = 0.0;
    double u = 0.0;
};

struct StepResult {
    PhasePoint next;
    double chord = 0.0;
};

struct OrbitSegment {
    std::vector<PhasePoint> points;
    std::vector<double> chords;
    bool left_domain = false;  // stopped early: orbit left the arc domain
};

/// Cached per-arc geometry: graph polynomial, derivative, arclength and its
/// inverse (quadrature + safeguarded Newton).
class ArcGeometry {
public:
    explicit ArcGeometry(const BoundaryProfile& profile);

    double eps() const { return eps_; }
    double max_arclength() const { return smax_; }

    double graph(double t) const { return a_.eval(t); }
    double slope(double t) const { return da_.eval(t); }

    double arclength(double t) const;          // s(t), |abs error| <= 1e-13
    double param_from_arclength(double s) const;  // t(s)

private:
    Poly1 a_, da_;
    double eps_ = 0.0, smax_ = 0.0;
};

class BilliardMap {
public:
    explicit BilliardMap(const TableConfig& table);

    const TableConfig& table() const { return table_; }
    const ArcGeometry& arc(int i) const { return i == 0 ? arc0_ : arc1_; }

    /// One reflection: next impact and the chord length in between.
    StepResult step(const PhasePoint& p) const;

    /// n reflections; stops early (flagged) if the orbit leaves an arc domain.
    OrbitSegment iterate(const PhasePoint& start, int n) const;

    /// Global (x, y) position of a phase point's base point.
    void position(const PhasePoint& p, double& x, double& y) const;

private:
    struct Frame {
        double px, py;  // base point
        double tx, ty;  // unit tangent
        double nx, ny;  // unit inward normal
    };
    Frame frame_at(int arc, double t) const;

    TableConfig table_;
    ArcGeometry arc0_, arc1_;
};

/// CSV dump with header `n,arc,s,u,chord` (chord empty on the last row).
void write_orbit_csv(std::ostream& os, const OrbitSegment& orbit);

}  // namespace billiards
