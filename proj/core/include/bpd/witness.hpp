#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "bpd/geometry.hpp"
#include "bpd/oscillation.hpp"

namespace bpd {

struct WeightedAtom {
    Complex offset;  // from the measure's support center
    double weight = 0.0;
};

/// Atomic approximation of a Frostman measure: nonnegative weights whose
/// mass inside any sampled ball B(z, rho) stays below growth * rho, up to
/// the configured discretization slack.
///
/// Atoms are stored as offsets from the support center so the measure's
/// micro-geometry survives deep annuli, where the circle radius drops
/// below one ulp of the center distance.
struct DiscreteMeasure {
    Complex support_center;  // relative to the region base point
    std::vector<WeightedAtom> atoms;
    double declared_growth = 0.0;  // the Frostman epsilon
    int support_annulus = 0;
    double min_spacing = 0.0;  // smallest pairwise atom distance

    double total_mass() const;
    /// Atom position in base-point coordinates.
    Complex atom_position(std::size_t k) const {
        return support_center + atoms[k].offset;
    }
};

struct FrostmanOptions {
    double slack = 0.10;    // allowance in the growth certificate
    int ball_centers = 48;  // sampled ball centers (atoms and gap midpoints)
    double phase = 0.37;    // angular offset of the first atom, in turns
};

/// Equally spaced, equally weighted atoms on the disk boundary with total
/// mass epsilon * radius. The growth certificate is validated down to the
/// atom spacing before returning.
DiscreteMeasure frostman_on_circle(const Disk& disk, double epsilon, int atom_count,
                                   Complex base_point = Complex{0.0, 0.0},
                                   const FrostmanOptions& options = {});

/// sum_j w_j (zeta_j/|zeta_j|)^(t+1) / (zeta_j - z), everything in
/// base-point coordinates. guard < 0 means half the minimum atom spacing;
/// guard = 0 disables the proximity check.
Complex cauchy_transform(const DiscreteMeasure& measure, int t, Complex z,
                         double guard = -1.0);

/// t! sum_j w_j / |zeta_j|^(t+1): the t-th derivative of the transform at
/// the base point, real and positive by construction.
double derivative_at_base(const DiscreteMeasure& measure, int t);

/// Trapezoidal contour quadrature of (t!/2 pi i) oint f(z)/(z-z0)^(t+1) dz
/// on the circle |z - z0| = contour_radius. Spectrally accurate when f is
/// analytic on the closed disk.
Complex numeric_derivative(const std::function<Complex(Complex)>& f, Complex z0, int t,
                           double contour_radius, int nodes);

using EpsilonRule = std::function<double(int)>;

/// Default decreasing weights: delta_m / max(1, max_{k<=m} T_k), where
/// T_k is the raw criterion term of annulus k and
/// delta_m = 1 / (1 + log(1 + log(m+1))). This keeps every weighted term
/// at most 1 while the weighted series still diverges whenever the raw
/// one does.
EpsilonRule default_epsilon_rule(const RegionSpec& region, int t);

/// One converse-construction block g = sum of per-annulus transforms over
/// start..end, with weighted block sum in [1, 2].
struct BlockWitness {
    int start = 1;
    int end = 1;  // smallest index where the block sum reaches 1
    int derivation_order = 0;
    Complex base_point;
    double block_sum = 0.0;
    double derivative_formula = 0.0;  // g^(t) at the base point, closed form
    std::vector<DiscreteMeasure> measures;
    std::vector<double> epsilons;
    std::vector<Disk> support_disks;  // absolute coordinates, one per measure

    /// g at an absolute plane point (atom proximity unguarded).
    Complex evaluate(Complex z) const;
    SampledFunction as_sampled_function() const;

    /// Per measure: support center plus (offset, w * (zeta/|zeta|)^(t+1))
    /// atom pairs, precomputed once.
    struct PreparedMeasure {
        Complex center;
        std::vector<std::pair<Complex, Complex>> atoms;
    };
    std::shared_ptr<const std::vector<PreparedMeasure>> prepared;
};

/// Builds the block starting at start_n. Requires a region whose criterion
/// series provably diverges (symbolic check); fails with ResourceError when
/// the block sum cannot reach 1 inside the materialization cap.
BlockWitness build_block(const RegionSpec& region, int t, int start_n,
                         EpsilonRule epsilon = {}, int atom_count = 256);

struct WitnessProbeParams {
    int nodes = 12;            // per-axis quadrature nodes before refinement
    int windows_per_block = 2; // leading block annuli probed for oscillation
    int positions = 3;         // probe cube positions per axis and scale
};

struct WitnessRow {
    int start = 0;
    int end = 0;
    double block_sum = 0.0;
    double deriv_formula = 0.0;
    double deriv_contour = 0.0;
    double bmo_seminorm = 0.0;
};

/// Per-start diagnostics of the divergent-case construction: closed-form
/// and contour derivatives at the base point, and the probed oscillation
/// of g around its leading support circles.
std::vector<WitnessRow> witness_report(const RegionSpec& region, int t,
                                       const std::vector<int>& starts,
                                       const WitnessProbeParams& probe = {},
                                       EpsilonRule epsilon = {}, int atom_count = 256);

/// f^(t)(x0) for the scale-normalized pole f(z) = r^(t+1)/(z-c)^(t+1).
Complex pole_test_derivative(const Disk& disk, Complex x0, int t);

struct RatioRow {
    int depth = 0;
    Complex pole_derivative;             // single-pole closed form at this depth
    double cumulative_derivative = 0.0;  // closed form for the transform sum
    double seminorm_estimate = 0.0;
    double ratio = 0.0;                  // cumulative derivative / seminorm
};

/// Forward-direction evidence table. The depth-n test function is the sum
/// of unit-growth circle transforms over annuli up to n, so its base-point
/// derivative tracks the criterion partial sums while its oscillation
/// stays at unit scale: growing ratios witness the divergent case, bounded
/// ratios the convergent one. The single-pole closed form is reported per
/// depth for reference.
std::vector<RatioRow> ratio_table(const RegionSpec& region, int t,
                                  const std::vector<int>& depths,
                                  const WitnessProbeParams& probe = {},
                                  int atom_count = 256);

}  // namespace bpd
