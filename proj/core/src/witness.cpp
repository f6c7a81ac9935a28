#include "bpd/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bpd/content.hpp"
#include "bpd/series.hpp"

namespace bpd {

namespace {

double factorial(int t) {
    if (t > 150) throw ValidationError("derivation order too large for double factorials");
    double f = 1.0;
    for (int k = 2; k <= t; ++k) f *= k;
    return f;
}

Complex unit_power(Complex zeta, int t) {
    const double mod = std::abs(zeta);
    if (!(mod > 0.0)) throw std::domain_error("measure atom sits at the base point");
    const Complex u = zeta / mod;
    Complex p{1.0, 0.0};
    for (int k = 0; k <= t; ++k) p *= u;  // u^(t+1)
    return p;
}

// Largest removed disk of the annulus carries the measure; its radius is
// the closed-form content lower bound the mass target uses.
const Disk* largest_disk(const std::vector<Disk>& disks) {
    const Disk* best = nullptr;
    for (const Disk& d : disks)
        if (!best || d.radius > best->radius) best = &d;
    return best;
}

double delta_weight(int m) {
    return 1.0 / (1.0 + std::log(1.0 + std::log(static_cast<double>(m) + 1.0)));
}

// Raw criterion term 2^((t+1)m) * (largest radius) of annulus m, 0 when
// the annulus is untouched.
double raw_term(const RegionSpec& region, int t, int m) {
    const std::vector<Disk> disks = complement_in_annulus(region, m);
    const Disk* big = largest_disk(disks);
    if (!big) return 0.0;
    const double term = std::ldexp(big->radius, (t + 1) * m);
    if (std::isinf(term))
        throw std::overflow_error("criterion term overflows double at annulus " +
                                  std::to_string(m));
    return term;
}

ContentEstimate measure_content(const Disk& d) { return content_of_disk(d.radius, 1.0); }

}  // namespace

double DiscreteMeasure::total_mass() const {
    double mass = 0.0;
    for (const WeightedAtom& a : atoms) mass += a.weight;
    return mass;
}

DiscreteMeasure frostman_on_circle(const Disk& disk, double epsilon, int atom_count,
                                   Complex base_point, const FrostmanOptions& options) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw ValidationError("frostman measure: epsilon must be positive and finite");
    if (atom_count < 8) throw ValidationError("frostman measure: need at least 8 atoms");
    if (!(disk.radius > 0.0) || !is_finite(disk.center))
        throw ValidationError("frostman measure: invalid support disk");

    DiscreteMeasure measure;
    measure.support_center = disk.center - base_point;
    measure.declared_growth = epsilon;
    measure.support_annulus = annulus_of(disk.center, base_point).value_or(0);
    measure.atoms.reserve(atom_count);
    const double weight = epsilon * disk.radius / atom_count;
    for (int k = 0; k < atom_count; ++k) {
        const double angle =
            2.0 * std::numbers::pi * (static_cast<double>(k) + options.phase) / atom_count;
        measure.atoms.push_back(
            WeightedAtom{disk.radius * Complex{std::cos(angle), std::sin(angle)}, weight});
    }
    measure.min_spacing =
        2.0 * disk.radius * std::sin(std::numbers::pi / atom_count);

    // Growth certificate: mass in sampled balls must stay below
    // epsilon * rho * (1 + slack) for dyadic rho down to the atom spacing.
    // Ball membership only involves atom offsets, so the check is exact at
    // any annulus depth.
    const int stride = std::max(1, atom_count / std::max(1, options.ball_centers));
    double worst_ratio = 0.0;
    double worst_rho = 0.0;
    Complex worst_center;
    for (int k = 0; k < atom_count; k += stride) {
        const Complex atom_center = measure.atoms[k].offset;
        const Complex gap_center =
            0.5 * (measure.atoms[k].offset + measure.atoms[(k + 1) % atom_count].offset);
        for (const Complex center : {atom_center, gap_center}) {
            for (double rho = 2.0 * disk.radius; rho >= measure.min_spacing; rho *= 0.5) {
                double mass = 0.0;
                for (const WeightedAtom& a : measure.atoms)
                    if (std::abs(a.offset - center) <= rho) mass += a.weight;
                const double ratio = mass / (epsilon * rho);
                if (ratio > worst_ratio) {
                    worst_ratio = ratio;
                    worst_rho = rho;
                    worst_center = center;
                }
            }
        }
    }
    if (worst_ratio > 1.0 + options.slack) {
        std::ostringstream msg;
        msg << "frostman measure: growth certificate fails at ball offset ("
            << worst_center.real() << ", " << worst_center.imag() << ") radius " << worst_rho
            << " with mass/(eps*rho) = " << worst_ratio;
        throw ConstructionError(msg.str());
    }
    return measure;
}

Complex cauchy_transform(const DiscreteMeasure& measure, int t, Complex z, double guard) {
    if (t < 0) throw ValidationError("cauchy transform: order must be >= 0");
    if (measure.atoms.empty()) throw ValidationError("cauchy transform: empty measure");
    if (guard < 0.0) guard = 0.5 * measure.min_spacing;

    const Complex shift = measure.support_center - z;
    Complex sum{0.0, 0.0};
    for (const WeightedAtom& a : measure.atoms) {
        const Complex delta = shift + a.offset;  // zeta - z
        if (guard > 0.0 && std::abs(delta) < guard) {
            std::ostringstream msg;
            msg << "cauchy transform: point (" << z.real() << ", " << z.imag()
                << ") violates the guard distance " << guard << " around an atom";
            throw EvaluationError(msg.str());
        }
        sum += a.weight * unit_power(measure.support_center + a.offset, t) / delta;
    }
    return sum;
}

double derivative_at_base(const DiscreteMeasure& measure, int t) {
    if (t < 0) throw ValidationError("derivative: order must be >= 0");
    if (measure.atoms.empty()) throw ValidationError("derivative: empty measure");
    double sum = 0.0;
    for (const WeightedAtom& a : measure.atoms) {
        const double mod = std::abs(measure.support_center + a.offset);
        if (!(mod > 0.0)) throw std::domain_error("measure atom sits at the base point");
        sum += a.weight / std::pow(mod, t + 1);
    }
    return factorial(t) * sum;
}

Complex numeric_derivative(const std::function<Complex(Complex)>& f, Complex z0, int t,
                           double contour_radius, int nodes) {
    if (!f) throw ValidationError("numeric derivative: empty function");
    if (t < 0) throw ValidationError("numeric derivative: order must be >= 0");
    if (!(contour_radius > 0.0))
        throw ValidationError("numeric derivative: contour radius must be positive");
    if (nodes < 16) throw ValidationError("numeric derivative: need at least 16 nodes");

    Complex acc{0.0, 0.0};
    for (int k = 0; k < nodes; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / nodes;
        const Complex dir{std::cos(theta), std::sin(theta)};
        const Complex v = f(z0 + contour_radius * dir);
        if (!is_finite(v)) {
            std::ostringstream msg;
            msg << "numeric derivative: non-finite evaluation on the contour at angle "
                << theta;
            throw QuadratureError(msg.str());
        }
        Complex spin{1.0, 0.0};  // e^{-i t theta}
        const Complex conj_dir = std::conj(dir);
        for (int j = 0; j < t; ++j) spin *= conj_dir;
        acc += v * spin;
    }
    return acc * factorial(t) / (static_cast<double>(nodes) * std::pow(contour_radius, t));
}

EpsilonRule default_epsilon_rule(const RegionSpec& region, int t) {
    auto region_copy = std::make_shared<RegionSpec>(region);
    auto running_max = std::make_shared<std::vector<double>>();
    return [region_copy, running_max, t](int m) -> double {
        if (m < 1) throw ValidationError("epsilon rule: index must be >= 1");
        auto& cache = *running_max;
        while (static_cast<int>(cache.size()) < m) {
            const int k = static_cast<int>(cache.size()) + 1;
            const double term = raw_term(*region_copy, t, k);
            cache.push_back(std::max(term, cache.empty() ? 0.0 : cache.back()));
        }
        return delta_weight(m) / std::max(1.0, cache[m - 1]);
    };
}

Complex BlockWitness::evaluate(Complex z) const {
    const Complex rel = z - base_point;
    Complex sum{0.0, 0.0};
    for (const PreparedMeasure& pm : *prepared) {
        const Complex shift = pm.center - rel;
        for (const auto& [offset, dir_weight] : pm.atoms)
            sum += dir_weight / (shift + offset);
    }
    return sum;
}

SampledFunction BlockWitness::as_sampled_function() const {
    SampledFunction f;
    auto self = *this;  // value copy shares the prepared atoms
    f.eval = [self](Complex z) { return self.evaluate(z); };
    std::vector<Disk> circles = support_disks;
    f.singularity_distance = [circles](Complex z) {
        double best = std::numeric_limits<double>::infinity();
        for (const Disk& d : circles)
            best = std::min(best, std::abs(std::abs(z - d.center) - d.radius));
        return best;
    };
    return f;
}

BlockWitness build_block(const RegionSpec& region, int t, int start_n,
                         EpsilonRule epsilon, int atom_count) {
    if (start_n < 1) throw ValidationError("witness block: start index must be >= 1");
    if (t < 0) throw ValidationError("witness block: order must be >= 0");
    if (!region.rule)
        throw ValidationError(
            "witness block: divergence cannot be certified without a radius rule");
    if (classify_symbolic(*region.rule, t, 1.0).verdict != Verdict::Diverges)
        throw ValidationError("criterion converges; no witness exists");
    if (!epsilon) epsilon = default_epsilon_rule(region, t);

    BlockWitness block;
    block.start = start_n;
    block.derivation_order = t;
    block.base_point = region.base_point;
    auto prepared = std::make_shared<std::vector<BlockWitness::PreparedMeasure>>();

    double previous_eps = std::numeric_limits<double>::infinity();
    int p = -1;
    for (int m = start_n; m <= region.materialization_cap; ++m) {
        const std::vector<Disk> disks = complement_in_annulus(region, m);
        const Disk* big = largest_disk(disks);
        const double eps_m = epsilon(m);
        if (!(eps_m > 0.0) || eps_m > previous_eps * (1.0 + 1e-12))
            throw ValidationError("witness block: epsilon sequence must be positive and "
                                  "decreasing");
        previous_eps = eps_m;
        if (!big) continue;  // untouched annulus contributes nothing

        const double content = measure_content(*big).lower;
        const double term = eps_m * std::ldexp(content, (t + 1) * m);
        if (term > 1.0 + 1e-9)
            throw ConsistencyError(
                "witness block: weighted term exceeds 1 at annulus " + std::to_string(m));

        DiscreteMeasure measure =
            frostman_on_circle(*big, eps_m, atom_count, region.base_point);
        BlockWitness::PreparedMeasure pm;
        pm.center = measure.support_center;
        pm.atoms.reserve(measure.atoms.size());
        for (const WeightedAtom& a : measure.atoms)
            pm.atoms.emplace_back(
                a.offset, a.weight * unit_power(measure.support_center + a.offset, t));
        prepared->push_back(std::move(pm));

        block.derivative_formula += derivative_at_base(measure, t);
        block.measures.push_back(std::move(measure));
        block.epsilons.push_back(eps_m);
        block.support_disks.push_back(*big);
        block.block_sum += term;
        if (block.block_sum >= 1.0) {
            p = m;
            break;
        }
    }
    if (p < 0)
        throw ResourceError(
            "witness block: divergence too slow for the materialization cap (block sum " +
            std::to_string(block.block_sum) + " after annulus " +
            std::to_string(region.materialization_cap) + ")");
    if (block.block_sum > 2.0 + 1e-9)
        throw ConsistencyError("witness block: block sum exceeded 2");

    block.end = p;
    block.prepared = std::move(prepared);
    return block;
}

namespace {

// Oscillation of f probed on two dyadic scales of cubes straddling the
// support circle.
double probe_circle_oscillation(const SampledFunction& f, const Disk& support,
                                const WitnessProbeParams& probe) {
    OscillationParams params;
    params.scales = {4.0 * support.radius, 2.0 * support.radius};
    params.per_scale_grid = probe.positions;
    params.nodes = probe.nodes;
    const Cube window{support.center, 8.0 * support.radius};
    return bmo_seminorm(f, window, params).bmo_seminorm_estimate;
}

}  // namespace

std::vector<WitnessRow> witness_report(const RegionSpec& region, int t,
                                       const std::vector<int>& starts,
                                       const WitnessProbeParams& probe,
                                       EpsilonRule epsilon, int atom_count) {
    if (starts.empty()) throw ValidationError("witness report: no start indices");
    std::vector<WitnessRow> rows;
    rows.reserve(starts.size());
    for (int n : starts) {
        const BlockWitness block = build_block(region, t, n, epsilon, atom_count);
        WitnessRow row;
        row.start = block.start;
        row.end = block.end;
        row.block_sum = block.block_sum;
        row.deriv_formula = block.derivative_formula;

        // Contour differentiation mixes scales badly across a deep block:
        // one contour inside the deepest circle leaves the shallow
        // measures' derivative signal below roundoff. Differentiate each
        // transform on its own contour and add (derivatives are linear).
        for (const DiscreteMeasure& m : block.measures) {
            double closest = std::numeric_limits<double>::infinity();
            for (const WeightedAtom& a : m.atoms)
                closest = std::min(closest, std::abs(m.support_center + a.offset));
            auto f_m = [&m, t](Complex z) { return cauchy_transform(m, t, z); };
            row.deriv_contour += std::abs(
                numeric_derivative(f_m, Complex{0.0, 0.0}, t, 0.4 * closest, 256));
        }
        const SampledFunction g = block.as_sampled_function();

        const int windows =
            std::min<int>(probe.windows_per_block, static_cast<int>(block.measures.size()));
        for (int w = 0; w < windows; ++w)
            row.bmo_seminorm =
                std::max(row.bmo_seminorm,
                         probe_circle_oscillation(g, block.support_disks[w], probe));
        rows.push_back(row);
    }
    return rows;
}

Complex pole_test_derivative(const Disk& disk, Complex x0, int t) {
    if (t < 0) throw ValidationError("pole derivative: order must be >= 0");
    const Complex rel = x0 - disk.center;
    if (!(std::abs(rel) > disk.radius))
        throw ValidationError("pole derivative: base point lies inside the pole disk");
    // d^t/dz^t (z-c)^-(t+1) = (-1)^t (2t)!/t! (z-c)^-(2t+1)
    Complex denom{1.0, 0.0};
    for (int k = 0; k < 2 * t + 1; ++k) denom *= rel;
    const double coeff = factorial(2 * t) / factorial(t) * ((t % 2 == 0) ? 1.0 : -1.0);
    return coeff * std::pow(disk.radius, t + 1) / denom;
}

std::vector<RatioRow> ratio_table(const RegionSpec& region, int t,
                                  const std::vector<int>& depths,
                                  const WitnessProbeParams& probe, int atom_count) {
    if (depths.empty()) throw ValidationError("ratio table: no depths");
    for (std::size_t k = 0; k < depths.size(); ++k) {
        if (depths[k] < 1) throw ValidationError("ratio table: depths must be >= 1");
        if (k > 0 && depths[k] <= depths[k - 1])
            throw ValidationError("ratio table: depths must be strictly increasing");
    }
    const int first = depths.front();
    const int last = depths.back();
    if (last > region.materialization_cap)
        throw ValidationError("ratio table: depth exceeds the materialization cap");

    // Unit-growth measure per annulus in range; the depth-n test function
    // sums the transforms of the first n of them.
    struct Entry {
        Disk disk;
        DiscreteMeasure measure;
        double derivative = 0.0;
        std::vector<std::pair<Complex, Complex>> atoms;
    };
    std::vector<Entry> entries;  // index: annulus - first where present
    std::vector<int> entry_annulus;
    for (int m = first; m <= last; ++m) {
        const std::vector<Disk> disks = complement_in_annulus(region, m);
        const Disk* big = largest_disk(disks);
        if (!big) continue;
        Entry e;
        e.disk = *big;
        e.measure = frostman_on_circle(*big, 1.0, atom_count, region.base_point);
        e.derivative = derivative_at_base(e.measure, t);
        for (const WeightedAtom& a : e.measure.atoms)
            e.atoms.emplace_back(
                a.offset, a.weight * unit_power(e.measure.support_center + a.offset, t));
        entries.push_back(std::move(e));
        entry_annulus.push_back(m);
    }

    std::vector<RatioRow> rows;
    rows.reserve(depths.size());
    for (int depth : depths) {
        std::size_t active = 0;
        while (active < entries.size() && entry_annulus[active] <= depth) ++active;

        RatioRow row;
        row.depth = depth;
        for (std::size_t k = 0; k < active; ++k)
            row.cumulative_derivative += entries[k].derivative;
        if (active > 0 && entry_annulus[active - 1] == depth)
            row.pole_derivative =
                pole_test_derivative(entries[active - 1].disk, region.base_point, t);

        const Complex base = region.base_point;
        SampledFunction f;
        f.eval = [&entries, active, base](Complex z) {
            const Complex rel = z - base;
            Complex sum{0.0, 0.0};
            for (std::size_t k = 0; k < active; ++k) {
                const Complex shift = entries[k].measure.support_center - rel;
                for (const auto& [offset, w] : entries[k].atoms) sum += w / (shift + offset);
            }
            return sum;
        };
        f.singularity_distance = [&entries, active](Complex z) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < active; ++k) {
                const Disk& d = entries[k].disk;
                best = std::min(best, std::abs(std::abs(z - d.center) - d.radius));
            }
            return best;
        };

        for (std::size_t k = 0; k < active; ++k)
            row.seminorm_estimate = std::max(
                row.seminorm_estimate, probe_circle_oscillation(f, entries[k].disk, probe));
        row.ratio = row.seminorm_estimate > 0.0
                        ? row.cumulative_derivative / row.seminorm_estimate
                        : 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace bpd
