#pragma once

#include <functional>
#include <span>

#include "bpd/geometry.hpp"

namespace bpd {

/// Weight assigned to a cover square of side t. Admissible measure
/// functions are increasing with h(0+) = 0; the d = 1 class additionally
/// requires h(t) <= t with h(t)/t -> 0 (strictly sublinear).
struct MeasureFunction {
    std::function<double(double)> h;
    double dimension = 1.0;  // 1, or in (1, 2) for the Lipschitz variant
};

/// Spot-checks the admissibility conditions on a dyadic grid of side
/// lengths in (0, 1]. Throws ValidationError on the first failure.
void validate_measure_function(const MeasureFunction& mf);

/// h(t) = t^d. Admissible in the d = 1 sense only for d > 1; the exact
/// d = 1 power is still the canonical cover-cost majorant.
MeasureFunction power_measure_function(double dimension);

enum class ContentMethod { ClosedFormDisk, CoverSearch, Empty };

/// Certified bracket [lower, upper] for the lower Hausdorff content of a
/// planar set at the given dimension.
struct ContentEstimate {
    double lower = 0.0;
    double upper = 0.0;
    double dimension = 1.0;
    ContentMethod method = ContentMethod::Empty;
};

/// Exact disk value: lower = upper = radius^d.
ContentEstimate content_of_disk(double radius, double dimension);

/// Total cover cost sum_j h(side_j).
double cover_cost(std::span<const DyadicSquare> squares, const MeasureFunction& mf);

/// Bracket for a finite union of disks. Upper bound: cheapest uniform-level
/// dyadic cover over levels 0..search_depth, tightened by one greedy pass of
/// quad-splits that pay for themselves. Lower bound: largest single-disk
/// closed form (content is monotone). Single-disk input short-circuits to
/// the exact closed form; an empty list is the empty estimate.
ContentEstimate content_interval(std::span<const Disk> disks, double dimension,
                                 int search_depth = 10,
                                 std::size_t square_cap = kDefaultSquareCap);

}  // namespace bpd
