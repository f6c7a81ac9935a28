#include "bpd/series.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bpd {

namespace {

// Exponent-gap comparisons tolerate the roundoff of beta*d.
double gap_epsilon(double scale) { return 1e-12 * std::max(1.0, std::abs(scale)); }

void check_query(const CriterionQuery& q) {
    if (q.derivation_order < 0)
        throw ValidationError("criterion: derivation order must be >= 0");
    if (q.horizon < 1) throw ValidationError("criterion: horizon must be >= 1");
    if (!(q.dimension == 1.0 || (q.dimension > 1.0 && q.dimension < 2.0)))
        throw ValidationError("criterion: dimension must be 1 or lie in (1, 2)");
}

// 2^((t+1)n) * r_n^d straight from the radius law, entirely in log2 space;
// the linear-space route dies of underflow hundreds of annuli earlier.
double rule_term(const RadiusRule& rule, int n, int t, double d) {
    const double log2_term = static_cast<double>(t + 1) * n + d * rule.log2_radius(n);
    if (log2_term > 1020.0)
        throw std::overflow_error("criterion term overflows double at annulus " +
                                  std::to_string(n));
    return std::exp2(log2_term);
}

// Upper bound for the term of an explicit annulus: each disk fits in one
// dyadic square of side <= 4r.
double explicit_term_upper(const AnnulusDisks& entry, int t, double d) {
    double content_upper = 0.0;
    for (const Disk& disk : entry.disks)
        content_upper += std::pow(4.0 * disk.radius, d);
    if (content_upper == 0.0) return 0.0;
    const int shift = (t + 1) * entry.index;
    const double term = std::ldexp(content_upper, shift);
    if (std::isinf(term))
        throw std::overflow_error("criterion term overflows double at annulus " +
                                  std::to_string(entry.index));
    return term;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Converges: return "converges";
        case Verdict::Diverges: return "diverges";
        default: return "inconclusive";
    }
}

std::string to_string(VerdictSource s) {
    switch (s) {
        case VerdictSource::Symbolic: return "symbolic";
        case VerdictSource::NumericWithTail: return "numeric_with_tail";
        default: return "numeric_trend_only";
    }
}

std::pair<double, double> series_term(int n, int t, const ContentEstimate& content) {
    if (n < 1) throw ValidationError("series term: annulus index must be >= 1");
    if (t < 0) throw ValidationError("series term: derivation order must be >= 0");
    const int shift = (t + 1) * n;
    auto scale = [&](double value) {
        if (value == 0.0) return 0.0;
        const double term = std::ldexp(value, shift);
        if (std::isinf(term))
            throw std::overflow_error("criterion term overflows double at annulus " +
                                      std::to_string(n));
        return term;
    };
    return {scale(content.lower), scale(content.upper)};
}

SymbolicCertificate classify_symbolic(const RadiusRule& rule, int t, double d) {
    if (t < 0) throw ValidationError("classifier: derivation order must be >= 0");
    if (!(d == 1.0 || (d > 1.0 && d < 2.0)))
        throw ValidationError("classifier: dimension must be 1 or lie in (1, 2)");

    SymbolicCertificate cert;
    cert.geometric_gap = rule.geometric_exponent * d - static_cast<double>(t + 1);
    cert.polynomial_exponent = rule.polynomial_exponent * d;
    cert.coefficient_power = std::pow(rule.coefficient, d);

    const double eps = gap_epsilon(rule.geometric_exponent * d);
    std::ostringstream cmp;
    if (cert.geometric_gap > eps) {
        cert.verdict = Verdict::Converges;
        cmp << "terms ~ c^d 2^(-g n) n^(-p), geometric with gap g = " << cert.geometric_gap;
    } else if (cert.geometric_gap >= -eps) {
        cert.geometric_gap = 0.0;
        if (cert.polynomial_exponent > 1.0) {
            cert.verdict = Verdict::Converges;
            cmp << "terms ~ c^d n^(-p), p-series with p = " << cert.polynomial_exponent << " > 1";
        } else {
            cert.verdict = Verdict::Diverges;
            cmp << "terms ~ c^d n^(-p), p-series with p = " << cert.polynomial_exponent
                << " <= 1";
        }
    } else {
        cert.verdict = Verdict::Diverges;
        cmp << "terms ~ c^d 2^(|g| n) n^(-p) grow without bound, g = " << cert.geometric_gap;
    }
    cert.comparison = cmp.str();
    return cert;
}

std::optional<double> symbolic_tail_bound(const RadiusRule& rule, int t, double d,
                                          int horizon) {
    const SymbolicCertificate cert = classify_symbolic(rule, t, d);
    if (cert.verdict != Verdict::Converges) return std::nullopt;

    const double g = cert.geometric_gap;
    const double p = cert.polynomial_exponent;
    const double cd = cert.coefficient_power;
    const double n0 = static_cast<double>(horizon);

    if (g == 0.0)  // p > 1: integral test
        return cd * std::pow(n0, 1.0 - p) / (p - 1.0);

    if (p >= 0.0)  // n^(-p) <= N^(-p) past the horizon
        return cd * std::pow(n0, -p) * std::exp2(-g * n0) / (1.0 - std::exp2(-g));

    // p < 0: term ratio 2^-g (1+1/n)^|p| eventually drops below 1; sum
    // explicitly until it does, then close with the geometric bound.
    double tail = 0.0;
    double m = n0 + 1.0;
    auto term_at = [&](double n) {
        return cd * std::exp2(-g * n) * std::pow(n, -p);
    };
    for (int guard = 0; guard < 1 << 22; ++guard) {
        const double q = std::exp2(-g) * std::pow(1.0 + 1.0 / m, -p);
        if (q < 1.0) return tail + term_at(m) / (1.0 - q);
        tail += term_at(m);
        m += 1.0;
    }
    throw ResourceError("tail bound: ratio test failed to stabilize");
}

SeriesReport evaluate_numeric(const CriterionQuery& query) {
    check_query(query);
    const RegionSpec& region = query.region;
    const int t = query.derivation_order;
    const double d = query.dimension;
    const int horizon = query.horizon;

    SeriesReport report;
    report.terms_lower.reserve(horizon);
    report.terms_upper.reserve(horizon);

    for (int n = 1; n <= horizon; ++n) {
        double lo = 0.0, hi = 0.0;
        if (const AnnulusDisks* entry = region.find_explicit(n)) {
            ContentEstimate content;
            if (entry->disks.empty())
                content = ContentEstimate{0.0, 0.0, d, ContentMethod::Empty};
            else if (entry->disks.size() == 1)
                content = content_of_disk(entry->disks[0].radius, d);
            else
                content = content_interval(entry->disks, d, query.content_search_depth);
            std::tie(lo, hi) = series_term(n, t, content);
        } else if (region.rule) {
            // Single rule disk: content is the closed form r_n^d exactly.
            lo = hi = rule_term(*region.rule, n, t, d);
        }
        report.terms_lower.push_back(lo);
        report.terms_upper.push_back(hi);
        report.partial_sum_lower += lo;
        report.partial_sum_upper += hi;
        if (report.first_nonzero_term == 0 && hi > 0.0) report.first_nonzero_term = n;
    }

    // Contributions of explicit annuli past the horizon (a finite list).
    double beyond_horizon = 0.0;
    for (const AnnulusDisks& entry : region.explicit_annuli)
        if (entry.index > horizon) beyond_horizon += explicit_term_upper(entry, t, d);

    if (region.rule) {
        const SymbolicCertificate cert = classify_symbolic(*region.rule, t, d);
        if (cert.verdict == Verdict::Converges) {
            report.tail_bound = *symbolic_tail_bound(*region.rule, t, d, horizon) +
                                beyond_horizon;
            report.verdict = Verdict::Converges;
            report.verdict_source = VerdictSource::NumericWithTail;
        } else {
            report.verdict = Verdict::Diverges;
            report.verdict_source = VerdictSource::Symbolic;
        }
    } else {
        // Finitely many removed disks: the series is a finite sum.
        report.tail_bound = beyond_horizon;
        report.verdict = Verdict::Converges;
        report.verdict_source = VerdictSource::NumericWithTail;
    }
    return report;
}

VerdictReport bpd_verdict(const CriterionQuery& query) {
    VerdictReport result;
    result.derivation_order = query.derivation_order;
    result.dimension = query.dimension;
    result.series = evaluate_numeric(query);

    if (query.region.rule) {
        const SymbolicCertificate cert =
            classify_symbolic(*query.region.rule, query.derivation_order, query.dimension);
        if (query.region.explicit_annuli.empty()) {
            if (cert.verdict == Verdict::Converges) {
                double symbolic_partial = 0.0;
                for (int n = 1; n <= query.horizon; ++n)
                    symbolic_partial += rule_term(*query.region.rule, n,
                                                  query.derivation_order, query.dimension);
                const double total_upper =
                    symbolic_partial + *symbolic_tail_bound(*query.region.rule,
                                                            query.derivation_order,
                                                            query.dimension, query.horizon);
                if (result.series.partial_sum_lower > total_upper * (1.0 + 1e-9))
                    throw ConsistencyError(
                        "criterion: numeric partial sum exceeds the symbolic total");
            }
            if (cert.verdict != result.series.verdict)
                throw ConsistencyError("criterion: symbolic and numeric verdicts disagree");
        }
        result.certificate = cert;
    }

    switch (result.series.verdict) {
        case Verdict::Converges: result.answer = "admits"; break;
        case Verdict::Diverges: result.answer = "not_admits"; break;
        default: result.answer = "inconclusive"; break;
    }
    return result;
}

}  // namespace bpd
