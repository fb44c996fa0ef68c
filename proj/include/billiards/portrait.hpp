#pragma once

// Phase portraits: iterate a grid of initial conditions and record the
// returns to one arc's (s, u) section; CSV and SVG scatter output.

#include <iosfwd>
#include <vector>

#include "billiards/billiard_map.hpp"

namespace billiards {

struct PortraitSpec {
    double s_min = -0.1, s_max = 0.1;
    int s_count = 9;
    double u_min = -0.1, u_max = 0.1;
    int u_count = 9;
    int iterations = 200;       // reflections per initial condition
    int section_arc = 0;        // record impacts on this arc
    unsigned seed = 0;          // used only when jitter > 0
    double jitter = 0.0;        // relative jitter of grid nodes
};

struct PortraitPoint {
    int orbit_id;
    int iteration;  // reflection count at which the impact happened
    double s, u;
};

struct PortraitResult {
    std::vector<PortraitPoint> points;
    int orbit_count = 0;
    int escaped_count = 0;  // orbits that left an arc domain before finishing
};

PortraitResult run_portrait(const TableConfig& table, const PortraitSpec& spec);

/// Fraction of initial conditions that survived all iterations.
double bounded_fraction(const PortraitResult& result);

/// Radial scatter of one orbit's section cloud around its closed invariant
/// curve: points are sorted by angle (in the eta-normalized frame) and each
/// radius is compared with the interpolation of its angular neighbors.
double orbit_curve_thickness(const std::vector<PortraitPoint>& cloud, int orbit_id, double eta);

void write_portrait_csv(std::ostream& os, const PortraitResult& result);
void write_portrait_svg(std::ostream& os, const PortraitResult& result, int width = 720,
                        int height = 540);

}  // namespace billiards
