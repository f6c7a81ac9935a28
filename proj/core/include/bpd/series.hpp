#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bpd/content.hpp"
#include "bpd/geometry.hpp"

namespace bpd {

/// One criterion evaluation request: does the order-t series at dimension d
/// (1 for the VMO space, 1+alpha for the little-Lipschitz one) converge?
struct CriterionQuery {
    RegionSpec region;
    int derivation_order = 0;  // t >= 0
    double dimension = 1.0;    // 1 or (1, 2)
    int horizon = 32;          // N >= 1, number of leading terms evaluated
    int content_search_depth = 10;
};

enum class Verdict { Converges, Diverges, Inconclusive };
enum class VerdictSource { Symbolic, NumericWithTail, NumericTrendOnly };

std::string to_string(Verdict v);
std::string to_string(VerdictSource s);

/// Closed-form classification of the parametric term family
///   term(n) = c^d * 2^((t+1) - beta*d)*n * n^(-s*d):
/// converges iff the geometric gap beta*d - (t+1) is positive, or zero with
/// polynomial exponent s*d > 1.
struct SymbolicCertificate {
    Verdict verdict = Verdict::Inconclusive;
    double geometric_gap = 0.0;        // beta*d - (t+1)
    double polynomial_exponent = 0.0;  // s*d
    double coefficient_power = 1.0;    // c^d
    std::string comparison;            // the comparison series, human readable
};

/// Geometric (gap > 0) or integral-test (gap = 0, s*d > 1) bound on the
/// series tail past horizon N. Empty when the series diverges.
std::optional<double> symbolic_tail_bound(const RadiusRule& rule, int t, double d, int horizon);

SymbolicCertificate classify_symbolic(const RadiusRule& rule, int t, double d);

struct SeriesReport {
    std::vector<double> terms_lower;
    std::vector<double> terms_upper;
    double partial_sum_lower = 0.0;
    double partial_sum_upper = 0.0;
    std::optional<double> tail_bound;
    Verdict verdict = Verdict::Inconclusive;
    VerdictSource verdict_source = VerdictSource::NumericTrendOnly;
    int first_nonzero_term = 0;  // 1-based index; 0 when every term vanishes
};

/// Bracket of 2^((t+1)n) * content: exact power-of-two scaling, computed in
/// log2 space when linear-space scaling would overflow the conversion.
std::pair<double, double> series_term(int n, int t, const ContentEstimate& content);

/// Leading terms of the criterion series for the region. Annuli holding a
/// single disk use the exact closed-form content; multi-disk annuli go
/// through the cover search; annuli past the materialization cap fall back
/// to the symbolic rule radius. The tail bound (hence any Converges
/// verdict) comes from the rule when present, or is exactly zero for
/// finitely supported explicit regions.
SeriesReport evaluate_numeric(const CriterionQuery& query);

/// Combined answer. "admits" iff the series converges.
struct VerdictReport {
    int derivation_order = 0;
    double dimension = 1.0;
    std::string answer;  // "admits" | "not_admits" | "inconclusive"
    std::optional<SymbolicCertificate> certificate;
    SeriesReport series;
};

/// Runs both the symbolic classifier (when a rule exists) and the numeric
/// evaluator, cross-checks them on the rule family, and merges the result.
/// Disagreement beyond 1e-9 relative raises ConsistencyError.
VerdictReport bpd_verdict(const CriterionQuery& query);

}  // namespace bpd
