#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "bpd/geometry.hpp"

namespace bpd {

/// An evaluable function of a plane point, with just enough metadata for
/// the quadrature layer: where (if anywhere) it blows up, and whether it
/// is smooth away from those points.
struct SampledFunction {
    std::function<Complex(Complex)> eval;
    /// Distance from a point to the nearest singularity; empty for entire
    /// functions. Drives node refinement on pole-adjacent cubes.
    std::function<double(Complex)> singularity_distance;
};

/// Axis-aligned square probe cell (the "cube" of mean-oscillation texts).
struct Cube {
    Complex center;
    double side = 1.0;

    double x_min() const { return center.real() - 0.5 * side; }
    double x_max() const { return center.real() + 0.5 * side; }
    double y_min() const { return center.imag() - 0.5 * side; }
    double y_max() const { return center.imag() + 0.5 * side; }
};

/// Midpoint tensor quadrature of the cube average (1/|Q|) int_Q f dA on an
/// m x m grid. Deterministic for fixed m; non-finite samples raise
/// QuadratureError naming the node.
Complex mean_value(const SampledFunction& f, const Cube& q, int nodes);

/// Same grid, mean of |f - f_Q|.
double mean_oscillation(const SampledFunction& f, const Cube& q, int nodes);

struct OscillationParams {
    std::vector<double> scales;   // probed cube sides, descending
    int per_scale_grid = 16;      // max cube positions per axis and scale
    int nodes = 16;               // per-axis quadrature nodes
    double vmo_threshold = 1e-2;  // smallest-scale oscillation considered "vanishing"
    double pole_refine_factor = 2.0;  // refine when a pole is within factor*side
    int refine_multiplier = 2;        // per-axis node multiplier on refinement
};

/// Dyadic scales 2^0 .. 2^-8.
OscillationParams default_oscillation_params();

struct OscillationReport {
    /// max over examined cubes of the oscillation: a lower estimate of the
    /// true supremum seminorm.
    double bmo_seminorm_estimate = 0.0;
    /// (scale, max oscillation at that scale), in probe order.
    std::vector<std::pair<double, double>> modulus_samples;
    bool vmo_consistent = false;
    long cubes_examined = 0;
};

/// Probes, per scale, a half-overlapping tiling of the window by cubes of
/// that side (evenly thinned to per_scale_grid positions per axis) and
/// reports per-scale and global oscillation maxima.
OscillationReport bmo_seminorm(const SampledFunction& f, const Cube& window,
                               const OscillationParams& params);

/// Seminorm estimate over a window covering the region's unit disk, plus
/// the modulus of the masked quadrature integral of f over the region
/// (nodes inside removed disks and outside the unit disk are skipped).
double bmo_region_norm(const SampledFunction& f, const RegionSpec& region,
                       const OscillationParams& params, int integral_nodes = 1024);

/// The masked integral alone (complex-valued).
Complex region_integral(const SampledFunction& f, const RegionSpec& region,
                        int integral_nodes = 1024);

}  // namespace bpd
