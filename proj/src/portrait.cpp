#include "billiards/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "billiards/parallel.hpp"

namespace billiards {

PortraitResult run_portrait(const TableConfig& table, const PortraitSpec& spec) {
    if (spec.s_count < 1 || spec.u_count < 1)
        throw InvalidParameterError("portrait grid must be non-empty");
    if (spec.iterations < 0) throw InvalidParameterError("iteration count must be >= 0");

    const BilliardMap map(table);
    const int total = spec.s_count * spec.u_count;

    std::vector<double> s0(total), u0(total);
    std::mt19937 rng(spec.seed);
    std::uniform_real_distribution<double> unit(-0.5, 0.5);
    const double ds = spec.s_count > 1 ? (spec.s_max - spec.s_min) / (spec.s_count - 1) : 0.0;
    const double du = spec.u_count > 1 ? (spec.u_max - spec.u_min) / (spec.u_count - 1) : 0.0;
    for (int i = 0; i < spec.s_count; ++i)
        for (int j = 0; j < spec.u_count; ++j) {
            const int id = i * spec.u_count + j;
            double s = spec.s_min + ds * i, u = spec.u_min + du * j;
            if (spec.jitter > 0.0) {
                s += spec.jitter * ds * unit(rng);
                u += spec.jitter * du * unit(rng);
            }
            s0[id] = s;
            u0[id] = u;
        }

    std::vector<std::vector<PortraitPoint>> per_orbit(total);
    std::vector<char> escaped(total, 0);
    parallel_for(total, [&](std::size_t id) {
        PhasePoint p{spec.section_arc, s0[id], u0[id]};
        auto& out = per_orbit[id];
        out.push_back(PortraitPoint{static_cast<int>(id), 0, p.s, p.u});
        for (int it = 1; it <= spec.iterations; ++it) {
            try {
                p = map.step(p).next;
            } catch (const Error&) {
                escaped[id] = 1;
                break;
            }
            if (p.arc == spec.section_arc)
                out.push_back(PortraitPoint{static_cast<int>(id), it, p.s, p.u});
        }
    });

    PortraitResult res;
    res.orbit_count = total;
    for (int id = 0; id < total; ++id) {
        res.escaped_count += escaped[id];
        res.points.insert(res.points.end(), per_orbit[id].begin(), per_orbit[id].end());
    }
    return res;
}

double bounded_fraction(const PortraitResult& result) {
    if (result.orbit_count == 0) return 0.0;
    return 1.0 - static_cast<double>(result.escaped_count) / result.orbit_count;
}

double orbit_curve_thickness(const std::vector<PortraitPoint>& cloud, int orbit_id, double eta) {
    struct Polar {
        double phi, r;
    };
    std::vector<Polar> pts;
    for (const auto& p : cloud) {
        if (p.orbit_id != orbit_id) continue;
        const double x = p.s / eta, y = eta * p.u;
        pts.push_back(Polar{std::atan2(y, x), std::hypot(x, y)});
    }
    if (pts.size() < 8) return 0.0;
    std::sort(pts.begin(), pts.end(), [](const Polar& a, const Polar& b) { return a.phi < b.phi; });
    double worst = 0.0;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Polar& a = pts[(i + n - 1) % n];
        const Polar& b = pts[i];
        const Polar& c = pts[(i + 1) % n];
        double phi_a = a.phi, phi_c = c.phi, phi_b = b.phi;
        if (i == 0) phi_a -= 2.0 * M_PI;
        if (i + 1 == n) phi_c += 2.0 * M_PI;
        const double span = phi_c - phi_a;
        if (span <= 1e-12 || span > 0.5) continue;  // need close angular neighbors
        const double w = (phi_b - phi_a) / span;
        const double r_interp = a.r * (1.0 - w) + c.r * w;
        worst = std::max(worst, std::fabs(b.r - r_interp));
    }
    return worst;
}

void write_portrait_csv(std::ostream& os, const PortraitResult& result) {
    os << "orbit_id,iteration,s,u\n";
    char buf[128];
    for (const auto& p : result.points) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g\n", p.orbit_id, p.iteration, p.s, p.u);
        os << buf;
    }
}

void write_portrait_svg(std::ostream& os, const PortraitResult& result, int width, int height) {
    double smin = 0, smax = 0, umin = 0, umax = 0;
    bool first = true;
    for (const auto& p : result.points) {
        if (first) {
            smin = smax = p.s;
            umin = umax = p.u;
            first = false;
        }
        smin = std::min(smin, p.s);
        smax = std::max(smax, p.s);
        umin = std::min(umin, p.u);
        umax = std::max(umax, p.u);
    }
    if (first) {
        smin = umin = -1;
        smax = umax = 1;
    }
    const double pad_s = 0.05 * std::max(1e-12, smax - smin);
    const double pad_u = 0.05 * std::max(1e-12, umax - umin);
    smin -= pad_s;
    smax += pad_s;
    umin -= pad_u;
    umax += pad_u;

    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    char buf[256];
    for (const auto& p : result.points) {
        const double x = (p.s - smin) / (smax - smin) * (width - 20) + 10;
        const double y = height - ((p.u - umin) / (umax - umin) * (height - 20) + 10);
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"0.8\" fill=\"%s\"/>\n",
                      x, y, palette[p.orbit_id % 10]);
        os << buf;
    }
    os << "</svg>\n";
}

}  // namespace billiards
