#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bpd/errors.hpp"

namespace bpd {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Closed disk { |z - center| <= radius }, radius > 0.
struct Disk {
    Complex center;
    double radius = 0.0;
};

/// Closed dyadic shell around a base point:
///   A_n = { 2^-(n+1) <= |z - x0| <= 2^-n },  n >= 1.
struct Annulus {
    Complex base_point;
    int index = 1;

    double outer_radius() const { return std::ldexp(1.0, -index); }
    double inner_radius() const { return std::ldexp(1.0, -(index + 1)); }

    /// Whole closed disk inside the closed shell.
    bool contains(const Disk& d) const;
};

/// Closed axis-aligned square [i,i+1] x [j,j+1] scaled by 2^-level.
struct DyadicSquare {
    int level = 0;
    long long i = 0;
    long long j = 0;

    double side() const { return std::ldexp(1.0, -level); }
    double x_min() const { return static_cast<double>(i) * side(); }
    double y_min() const { return static_cast<double>(j) * side(); }
    double x_max() const { return static_cast<double>(i + 1) * side(); }
    double y_max() const { return static_cast<double>(j + 1) * side(); }

    /// Closed square meets closed disk (clamped-point distance test).
    bool intersects(const Disk& d) const;

    friend bool operator==(const DyadicSquare&, const DyadicSquare&) = default;
};

/// Parametric radius law r_n = c * 2^(-beta*n) * n^(-s).
///
/// `first_contained` is the smallest index from which the generated disk
/// fits inside its annulus (r_n < 2^-(n+2)) for every later index as well.
/// It is computed at construction; rules whose disks never fit are rejected.
struct RadiusRule {
    double coefficient = 1.0;        // c > 0
    double geometric_exponent = 2.0; // beta > 0
    double polynomial_exponent = 1.0;// s (any real)
    int first_contained = 1;

    double radius(int n) const;
    double log2_radius(int n) const;
};

RadiusRule make_radius_rule(double c, double beta, double s);

struct AnnulusDisks {
    int index = 1;
    std::vector<Disk> disks;
};

/// Roadrunner-style region: the unit disk about the base point minus closed
/// disks assigned to dyadic annuli. Disks come from explicit per-annulus
/// lists and/or a radius rule generating one disk per unlisted annulus,
/// centered on the real axis at base + rule_center_offset * 2^-n.
///
/// Annuli up to materialization_cap are materialized as geometry; when a
/// rule is present, deeper annuli keep only the symbolic radius law
/// (2^-n underflows double precision long before the rule stops mattering).
struct RegionSpec {
    Complex base_point;
    std::vector<AnnulusDisks> explicit_annuli;  // sorted by index, unique
    std::optional<RadiusRule> rule;
    double rule_center_offset = 0.75;
    int materialization_cap = 64;

    const AnnulusDisks* find_explicit(int n) const;
    /// Largest annulus index holding any removed disk, or 0 for a rule
    /// region (the rule touches every index) and for untouched regions.
    int max_explicit_index() const;
};

RegionSpec make_region_spec(Complex base_point,
                            std::vector<AnnulusDisks> explicit_annuli,
                            std::optional<RadiusRule> rule,
                            double rule_center_offset = 0.75,
                            int materialization_cap = 64);

/// Index of the dyadic annulus containing z, tie-breaking shared boundary
/// circles |z-x0| = 2^-k toward the annulus whose outer circle they are.
/// Empty for z = x0 and for |z - x0| > 1/2.
std::optional<int> annulus_of(Complex z, Complex x0);

/// The disk the radius rule generates for annulus n.
Disk rule_disk(const RegionSpec& region, int n);

/// The removed disks assigned to annulus n (explicit list verbatim, else
/// the rule disk, else empty). Rule disks at indices >= first_contained
/// are checked for containment; failure names n.
std::vector<Disk> complement_in_annulus(const RegionSpec& region, int n);

inline constexpr std::size_t kDefaultSquareCap = std::size_t{1} << 22;

/// All level-k dyadic squares whose closed square meets the closed union
/// of the disks, without duplicates, ordered by (i, j).
std::vector<DyadicSquare> dyadic_cover(std::span<const Disk> disks, int level,
                                       std::size_t square_cap = kDefaultSquareCap);

}  // namespace bpd
