#include "bpd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace bpd {

namespace {

std::string annulus_msg(int n, const std::string& what) {
    return "annulus " + std::to_string(n) + ": " + what;
}

// Radii this small are indistinguishable from roundoff in |z| arithmetic;
// explicit disks reject them, the symbolic rule handles deeper tails.
constexpr double kMinExplicitRadius = 0x1p-60;

}  // namespace

bool Annulus::contains(const Disk& d) const {
    const double dist = std::abs(d.center - base_point);
    return dist - d.radius >= inner_radius() && dist + d.radius <= outer_radius();
}

bool DyadicSquare::intersects(const Disk& d) const {
    const double px = std::clamp(d.center.real(), x_min(), x_max());
    const double py = std::clamp(d.center.imag(), y_min(), y_max());
    const double dx = d.center.real() - px;
    const double dy = d.center.imag() - py;
    return dx * dx + dy * dy <= d.radius * d.radius;
}

double RadiusRule::radius(int n) const {
    return std::exp2(log2_radius(n));
}

double RadiusRule::log2_radius(int n) const {
    return std::log2(coefficient) - geometric_exponent * n -
           polynomial_exponent * std::log2(static_cast<double>(n));
}

RadiusRule make_radius_rule(double c, double beta, double s) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw ValidationError("radius rule: coefficient must be positive and finite");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw ValidationError("radius rule: geometric exponent must be positive and finite");
    if (!std::isfinite(s))
        throw ValidationError("radius rule: polynomial exponent must be finite");
    if (beta < 1.0 || (beta == 1.0 && s <= 0.0))
        throw ConstructionError(
            "radius rule: r_n never falls below 2^-(n+2); disks cannot fit their annuli");

    RadiusRule rule{c, beta, s, 0};

    // fit gap g(n) = -log2 r_n - (n+2); monotone increasing once
    // n >= s / ((beta-1) ln 2), so the first fitting index past that
    // point fits forever.
    const double ln2 = std::log(2.0);
    int n_monotone = 1;
    if (s < 0.0 && beta > 1.0)
        n_monotone = std::max(1, static_cast<int>(std::ceil(-s / ((beta - 1.0) * ln2))));

    constexpr int kScanLimit = 100000;
    for (int n = 1; n <= kScanLimit; ++n) {
        const bool fits = rule.log2_radius(n) < -(n + 2);
        if (fits && n >= n_monotone) {
            rule.first_contained = n;
            return rule;
        }
    }
    throw ConstructionError("radius rule: no annulus within scan limit admits the rule disk");
}

const AnnulusDisks* RegionSpec::find_explicit(int n) const {
    const auto it = std::lower_bound(
        explicit_annuli.begin(), explicit_annuli.end(), n,
        [](const AnnulusDisks& a, int idx) { return a.index < idx; });
    if (it != explicit_annuli.end() && it->index == n) return &*it;
    return nullptr;
}

int RegionSpec::max_explicit_index() const {
    if (rule) return 0;
    return explicit_annuli.empty() ? 0 : explicit_annuli.back().index;
}

RegionSpec make_region_spec(Complex base_point,
                            std::vector<AnnulusDisks> explicit_annuli,
                            std::optional<RadiusRule> rule,
                            double rule_center_offset, int materialization_cap) {
    if (!is_finite(base_point))
        throw ValidationError("region: base point must be finite");
    if (materialization_cap < 1)
        throw ValidationError("region: materialization cap must be >= 1");
    if (!(rule_center_offset > 0.5) || !(rule_center_offset < 1.0))
        throw ValidationError("region: rule disk center offset must lie in (0.5, 1) "
                              "so the center sits inside the annulus");

    std::sort(explicit_annuli.begin(), explicit_annuli.end(),
              [](const AnnulusDisks& a, const AnnulusDisks& b) { return a.index < b.index; });
    for (std::size_t k = 0; k < explicit_annuli.size(); ++k) {
        const auto& entry = explicit_annuli[k];
        if (entry.index < 1)
            throw ValidationError(annulus_msg(entry.index, "index must be >= 1"));
        if (k > 0 && explicit_annuli[k - 1].index == entry.index)
            throw ValidationError(annulus_msg(entry.index, "listed more than once"));
        const Annulus shell{base_point, entry.index};
        for (const Disk& d : entry.disks) {
            if (!is_finite(d.center) || !std::isfinite(d.radius))
                throw ValidationError(annulus_msg(entry.index, "disk has non-finite data"));
            if (!(d.radius > 0.0))
                throw ValidationError(annulus_msg(entry.index, "disk radius must be positive"));
            if (d.radius < kMinExplicitRadius)
                throw ValidationError(
                    annulus_msg(entry.index, "disk radius below 2^-60; use the radius rule"));
            if (!shell.contains(d))
                throw ValidationError(
                    annulus_msg(entry.index, "explicit disk is not contained in its annulus"));
        }
    }

    RegionSpec region;
    region.base_point = base_point;
    region.explicit_annuli = std::move(explicit_annuli);
    region.rule = std::move(rule);
    region.rule_center_offset = rule_center_offset;
    region.materialization_cap = materialization_cap;
    return region;
}

std::optional<int> annulus_of(Complex z, Complex x0) {
    const double r = std::abs(z - x0);
    if (!(r > 0.0) || r > 0.5 || !std::isfinite(r)) return std::nullopt;

    int n = static_cast<int>(std::floor(-std::log2(r)));
    // log2 roundoff can land one shell off; fix against the exact bounds.
    if (std::ldexp(1.0, -n) < r)
        --n;
    else if (std::ldexp(1.0, -(n + 1)) > r)
        ++n;
    if (n < 1) return std::nullopt;
    return n;
}

Disk rule_disk(const RegionSpec& region, int n) {
    if (!region.rule) throw ConstructionError(annulus_msg(n, "region has no radius rule"));
    if (n < 1) throw ValidationError("annulus index must be >= 1");
    const double r = region.rule->radius(n);
    if (!(r > 0.0) || !std::isfinite(r))
        throw ConstructionError(
            annulus_msg(n, "rule radius underflows double precision; keep it symbolic"));
    const double offset = region.rule_center_offset * std::ldexp(1.0, -n);
    return Disk{region.base_point + Complex{offset, 0.0}, r};
}

std::vector<Disk> complement_in_annulus(const RegionSpec& region, int n) {
    if (n < 1) throw ValidationError("annulus index must be >= 1");
    if (const AnnulusDisks* entry = region.find_explicit(n)) return entry->disks;
    if (!region.rule) return {};

    const Disk d = rule_disk(region, n);
    if (n >= region.rule->first_contained && !Annulus{region.base_point, n}.contains(d))
        throw ConstructionError(annulus_msg(n, "rule-generated disk fails containment"));
    return {d};
}

std::vector<DyadicSquare> dyadic_cover(std::span<const Disk> disks, int level,
                                       std::size_t square_cap) {
    if (level < 0) throw ValidationError("dyadic cover: level must be >= 0");
    if (disks.empty()) throw ValidationError("dyadic cover: disk list must be nonempty");

    const double side = std::ldexp(1.0, -level);
    std::set<std::pair<long long, long long>> seen;
    for (const Disk& d : disks) {
        if (!(d.radius > 0.0)) throw ValidationError("dyadic cover: disk radius must be positive");
        const auto lo_i = static_cast<long long>(std::floor((d.center.real() - d.radius) / side)) - 1;
        const auto hi_i = static_cast<long long>(std::floor((d.center.real() + d.radius) / side)) + 1;
        const auto lo_j = static_cast<long long>(std::floor((d.center.imag() - d.radius) / side)) - 1;
        const auto hi_j = static_cast<long long>(std::floor((d.center.imag() + d.radius) / side)) + 1;
        for (long long i = lo_i; i <= hi_i; ++i) {
            for (long long j = lo_j; j <= hi_j; ++j) {
                const DyadicSquare sq{level, i, j};
                if (!sq.intersects(d)) continue;
                seen.emplace(i, j);
                if (seen.size() > square_cap)
                    throw ResourceError("dyadic cover: square count exceeds cap at level " +
                                        std::to_string(level));
            }
        }
    }

    std::vector<DyadicSquare> cover;
    cover.reserve(seen.size());
    for (const auto& [i, j] : seen) cover.push_back(DyadicSquare{level, i, j});
    return cover;
}

}  // namespace bpd
