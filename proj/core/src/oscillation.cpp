#include "bpd/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bpd {

namespace {

void check_cube(const Cube& q) {
    if (!(q.side > 0.0) || !is_finite(q.center))
        throw ValidationError("cube: side must be positive and center finite");
}

Complex node_point(const Cube& q, int nodes, int ix, int iy) {
    const double step = q.side / nodes;
    return Complex{q.x_min() + (ix + 0.5) * step, q.y_min() + (iy + 0.5) * step};
}

[[noreturn]] void bad_node(Complex z) {
    std::ostringstream msg;
    msg << "non-finite evaluation at quadrature node (" << z.real() << ", " << z.imag() << ")";
    throw QuadratureError(msg.str());
}

int effective_nodes(const SampledFunction& f, const Cube& q, const OscillationParams& p) {
    int m = p.nodes;
    if (f.singularity_distance &&
        f.singularity_distance(q.center) <= p.pole_refine_factor * q.side)
        m *= p.refine_multiplier;
    return m;
}

}  // namespace

Complex mean_value(const SampledFunction& f, const Cube& q, int nodes) {
    check_cube(q);
    if (nodes < 2) throw ValidationError("mean value: need at least 2 nodes per axis");
    if (!f.eval) throw ValidationError("mean value: function has no evaluation rule");

    Complex sum = 0.0;
    for (int ix = 0; ix < nodes; ++ix)
        for (int iy = 0; iy < nodes; ++iy) {
            const Complex z = node_point(q, nodes, ix, iy);
            const Complex v = f.eval(z);
            if (!is_finite(v)) bad_node(z);
            sum += v;
        }
    return sum / static_cast<double>(nodes) / static_cast<double>(nodes);
}

double mean_oscillation(const SampledFunction& f, const Cube& q, int nodes) {
    const Complex mean = mean_value(f, q, nodes);
    double sum = 0.0;
    for (int ix = 0; ix < nodes; ++ix)
        for (int iy = 0; iy < nodes; ++iy) {
            const Complex z = node_point(q, nodes, ix, iy);
            const Complex v = f.eval(z);
            if (!is_finite(v)) bad_node(z);
            sum += std::abs(v - mean);
        }
    return sum / static_cast<double>(nodes) / static_cast<double>(nodes);
}

OscillationParams default_oscillation_params() {
    OscillationParams p;
    for (int j = 0; j <= 8; ++j) p.scales.push_back(std::ldexp(1.0, -j));
    return p;
}

OscillationReport bmo_seminorm(const SampledFunction& f, const Cube& window,
                               const OscillationParams& params) {
    check_cube(window);
    if (params.scales.empty()) throw ValidationError("seminorm: scale list is empty");
    for (std::size_t k = 0; k < params.scales.size(); ++k) {
        if (!(params.scales[k] > 0.0))
            throw ValidationError("seminorm: scales must be positive");
        if (k > 0 && params.scales[k] >= params.scales[k - 1])
            throw ValidationError("seminorm: scales must be strictly descending");
    }
    if (params.per_scale_grid < 1 || params.nodes < 2 || params.refine_multiplier < 1)
        throw ValidationError("seminorm: grid and node counts must be positive");

    OscillationReport report;
    for (double scale : params.scales) {
        if (scale > window.side * (1.0 + 1e-12)) continue;
        const double delta = std::min(scale, window.side);

        // Center offsets (from the window corner) of a stride delta/2
        // tiling that stays inside the window, evenly thinned to at most
        // per_scale_grid positions per axis.
        const double span = window.side - delta;
        const int full = std::max(1, static_cast<int>(std::floor(span / (0.5 * delta))) + 1);
        const int count = std::min(full, params.per_scale_grid);
        std::vector<double> offsets;
        offsets.reserve(count);
        for (int k = 0; k < count; ++k) {
            const double frac = count == 1 ? 0.5 : static_cast<double>(k) / (count - 1);
            offsets.push_back(0.5 * delta + frac * span);
        }

        double scale_max = 0.0;
        for (double ox : offsets)
            for (double oy : offsets) {
                const Cube q{Complex{window.x_min() + ox, window.y_min() + oy}, delta};
                const int m = effective_nodes(f, q, params);
                scale_max = std::max(scale_max, mean_oscillation(f, q, m));
                ++report.cubes_examined;
            }
        report.modulus_samples.emplace_back(delta, scale_max);
        report.bmo_seminorm_estimate = std::max(report.bmo_seminorm_estimate, scale_max);
    }

    // Vanishing-oscillation evidence: the tail of the modulus curve keeps
    // falling and ends below the configured threshold.
    const auto& s = report.modulus_samples;
    if (!s.empty()) {
        bool tail_decreasing = true;
        const std::size_t from = s.size() >= 3 ? s.size() - 3 : 0;
        for (std::size_t k = from + 1; k < s.size(); ++k)
            if (s[k].second > s[k - 1].second * 1.05 + 1e-15) tail_decreasing = false;
        report.vmo_consistent = tail_decreasing && s.back().second <= params.vmo_threshold;
    }
    return report;
}

Complex region_integral(const SampledFunction& f, const RegionSpec& region,
                        int integral_nodes) {
    if (integral_nodes < 2) throw ValidationError("region integral: need >= 2 nodes per axis");
    if (!f.eval) throw ValidationError("region integral: function has no evaluation rule");

    std::vector<Disk> removed;
    for (int n = 1; n <= region.materialization_cap; ++n) {
        // Annuli whose rule radius underflows are area-negligible anyway.
        try {
            for (const Disk& d : complement_in_annulus(region, n)) removed.push_back(d);
        } catch (const ConstructionError&) {
            break;
        }
    }

    const Cube window{region.base_point, 2.0};
    const double step = window.side / integral_nodes;
    const double cell = step * step;
    Complex sum = 0.0;
    for (int ix = 0; ix < integral_nodes; ++ix)
        for (int iy = 0; iy < integral_nodes; ++iy) {
            const Complex z = node_point(window, integral_nodes, ix, iy);
            if (std::abs(z - region.base_point) >= 1.0) continue;
            bool masked = false;
            for (const Disk& d : removed)
                if (std::abs(z - d.center) <= d.radius) {
                    masked = true;
                    break;
                }
            if (masked) continue;
            const Complex v = f.eval(z);
            if (!is_finite(v)) bad_node(z);
            sum += v;
        }
    return sum * cell;
}

double bmo_region_norm(const SampledFunction& f, const RegionSpec& region,
                       const OscillationParams& params, int integral_nodes) {
    const Cube window{region.base_point, 2.0};
    const OscillationReport osc = bmo_seminorm(f, window, params);
    return osc.bmo_seminorm_estimate + std::abs(region_integral(f, region, integral_nodes));
}

}  // namespace bpd
