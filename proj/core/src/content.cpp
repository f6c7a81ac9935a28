#include "bpd/content.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bpd {

namespace {

void check_dimension(double d) {
    if (d == 1.0) return;
    if (d > 1.0 && d < 2.0) return;
    throw ValidationError("content dimension must be 1 or lie in (1, 2)");
}

double power_cost(double side, double dimension) {
    return dimension == 1.0 ? side : std::pow(side, dimension);
}

}  // namespace

void validate_measure_function(const MeasureFunction& mf) {
    if (!mf.h) throw ValidationError("measure function: evaluation rule is empty");
    check_dimension(mf.dimension);

    double prev = -1.0;
    for (int k = 52; k >= 0; --k) {  // t = 2^-52 .. 1
        const double t = std::ldexp(1.0, -k);
        const double v = mf.h(t);
        if (!std::isfinite(v) || v < 0.0)
            throw ValidationError("measure function: h must be finite and nonnegative");
        if (v < prev)
            throw ValidationError("measure function: h must be increasing");
        prev = v;
        if (mf.dimension == 1.0 && v > t * (1.0 + 1e-12))
            throw ValidationError("measure function: d = 1 requires h(t) <= t");
    }
    if (mf.h(0x1p-52) > 1e-9)
        throw ValidationError("measure function: h(t) must vanish as t -> 0");
    if (mf.dimension == 1.0 && mf.h(0x1p-52) > 0x1p-52 * 0.5)
        throw ValidationError("measure function: d = 1 requires h(t)/t -> 0");
}

MeasureFunction power_measure_function(double dimension) {
    check_dimension(dimension);
    return MeasureFunction{[dimension](double t) { return power_cost(t, dimension); }, dimension};
}

ContentEstimate content_of_disk(double radius, double dimension) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw ValidationError("content of disk: radius must be positive and finite");
    check_dimension(dimension);
    const double value = power_cost(radius, dimension);
    return ContentEstimate{value, value, dimension, ContentMethod::ClosedFormDisk};
}

double cover_cost(std::span<const DyadicSquare> squares, const MeasureFunction& mf) {
    if (!mf.h) throw ValidationError("cover cost: measure function rule is empty");
    double total = 0.0;
    for (const DyadicSquare& sq : squares) total += mf.h(sq.side());
    return total;
}

ContentEstimate content_interval(std::span<const Disk> disks, double dimension,
                                 int search_depth, std::size_t square_cap) {
    check_dimension(dimension);
    if (search_depth < 1) throw ValidationError("content interval: search depth must be >= 1");
    if (disks.empty()) return ContentEstimate{0.0, 0.0, dimension, ContentMethod::Empty};

    double lower = 0.0;
    for (const Disk& d : disks) {
        if (!(d.radius > 0.0))
            throw ValidationError("content interval: disk radius must be positive");
        lower = std::max(lower, power_cost(d.radius, dimension));
    }
    if (disks.size() == 1) return content_of_disk(disks[0].radius, dimension);

    auto any_intersects = [&](const DyadicSquare& sq) {
        return std::any_of(disks.begin(), disks.end(),
                           [&](const Disk& d) { return sq.intersects(d); });
    };

    double best_cost = 0.0;
    int best_level = 0;
    std::vector<DyadicSquare> best_cover;
    for (int k = 0; k <= search_depth; ++k) {
        std::vector<DyadicSquare> cover = dyadic_cover(disks, k, square_cap);
        const double cost = static_cast<double>(cover.size()) *
                            power_cost(std::ldexp(1.0, -k), dimension);
        if (k == 0 || cost < best_cost) {
            best_cost = cost;
            best_level = k;
            best_cover = std::move(cover);
        }
        // A lone square already this close to the closed-form floor cannot
        // be beaten by deeper uniform levels.
        if (best_cover.size() == 1 && best_cost <= lower * (1.0 + 1e-9)) break;
    }

    // One greedy pass: split a square into its children when the children
    // that still touch the union cost less than the parent.
    const double parent_cost = power_cost(std::ldexp(1.0, -best_level), dimension);
    const double child_cost = power_cost(std::ldexp(1.0, -(best_level + 1)), dimension);
    double refined = 0.0;
    for (const DyadicSquare& sq : best_cover) {
        int kept = 0;
        for (int ci = 0; ci < 2; ++ci)
            for (int cj = 0; cj < 2; ++cj) {
                const DyadicSquare child{best_level + 1, 2 * sq.i + ci, 2 * sq.j + cj};
                if (any_intersects(child)) ++kept;
            }
        refined += std::min(parent_cost, kept * child_cost);
    }

    const double upper = std::max(refined, lower);
    return ContentEstimate{lower, upper, dimension, ContentMethod::CoverSearch};
}

}  // namespace bpd
