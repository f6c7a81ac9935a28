#include "bpd/report_io.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace bpd {

namespace {

using nlohmann::ordered_json;

const char* method_name(ContentMethod m) {
    switch (m) {
        case ContentMethod::ClosedFormDisk: return "closed_form_disk";
        case ContentMethod::CoverSearch: return "cover_search";
        default: return "empty";
    }
}

ordered_json certificate_json(const SymbolicCertificate& cert) {
    return ordered_json{{"verdict", to_string(cert.verdict)},
                        {"geometric_gap", cert.geometric_gap},
                        {"polynomial_exponent", cert.polynomial_exponent},
                        {"coefficient_power", cert.coefficient_power},
                        {"comparison", cert.comparison}};
}

}  // namespace

std::string format_double(double value) {
    // Shortest decimal that round-trips, via increasing precision.
    char buf[64];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, value);
        double parsed = 0.0;
        std::sscanf(buf, "%lf", &parsed);
        if (parsed == value) break;
    }
    return buf;
}

std::string verdict_to_json(const VerdictReport& report) {
    ordered_json j;
    j["t"] = report.derivation_order;
    j["d"] = report.dimension;
    j["verdict"] = report.answer;
    ordered_json sums;
    sums["horizon"] = static_cast<int>(report.series.terms_lower.size());
    sums["lower"] = report.series.partial_sum_lower;
    sums["upper"] = report.series.partial_sum_upper;
    if (report.series.tail_bound)
        sums["tail_bound"] = *report.series.tail_bound;
    else
        sums["tail_bound"] = nullptr;
    sums["verdict_source"] = to_string(report.series.verdict_source);
    sums["first_nonzero_term"] = report.series.first_nonzero_term;
    sums["terms_lower"] = report.series.terms_lower;
    sums["terms_upper"] = report.series.terms_upper;
    j["partial_sums"] = std::move(sums);
    if (report.certificate)
        j["certificate"] = certificate_json(*report.certificate);
    else
        j["certificate"] = nullptr;
    return j.dump(2) + "\n";
}

std::string verdict_to_text(const VerdictReport& report) {
    std::ostringstream out;
    const char* space = report.dimension == 1.0 ? "A0(X)" : "A_alpha(X)";
    if (report.answer == "admits")
        out << space << " admits a bounded point derivation of order "
            << report.derivation_order << " at the base point\n";
    else if (report.answer == "not_admits")
        out << space << " does NOT admit a bounded point derivation of order "
            << report.derivation_order << " at the base point\n";
    else
        out << "inconclusive for order " << report.derivation_order << "\n";

    out << "series verdict: " << to_string(report.series.verdict) << " ("
        << to_string(report.series.verdict_source) << ")\n";
    out << "partial sum over " << report.series.terms_lower.size() << " annuli: ["
        << format_double(report.series.partial_sum_lower) << ", "
        << format_double(report.series.partial_sum_upper) << "]\n";
    if (report.series.tail_bound)
        out << "tail bound: " << format_double(*report.series.tail_bound) << "\n";
    if (report.series.first_nonzero_term > 0)
        out << "first nonzero term: n = " << report.series.first_nonzero_term << "\n";
    if (report.certificate) {
        out << "certificate: " << report.certificate->comparison << "\n";
        out << "  geometric gap beta*d - (t+1) = "
            << format_double(report.certificate->geometric_gap) << "\n";
        out << "  polynomial exponent s*d = "
            << format_double(report.certificate->polynomial_exponent) << "\n";
    }
    out << "terms (n, lower, upper):\n";
    for (std::size_t k = 0; k < report.series.terms_lower.size(); ++k)
        out << "  " << (k + 1) << " " << format_double(report.series.terms_lower[k]) << " "
            << format_double(report.series.terms_upper[k]) << "\n";
    return out.str();
}

std::string series_terms_csv(const SeriesReport& report) {
    std::ostringstream out;
    out << "n,term_lower,term_upper\n";
    for (std::size_t k = 0; k < report.terms_lower.size(); ++k)
        out << (k + 1) << "," << format_double(report.terms_lower[k]) << ","
            << format_double(report.terms_upper[k]) << "\n";
    return out.str();
}

std::string content_rows_json(const std::vector<AnnulusContentRow>& rows, double dimension) {
    ordered_json j;
    j["dimension"] = dimension;
    j["annuli"] = ordered_json::array();
    for (const AnnulusContentRow& row : rows)
        j["annuli"].push_back({{"n", row.index},
                               {"disks", row.disk_count},
                               {"lower", row.estimate.lower},
                               {"upper", row.estimate.upper},
                               {"method", method_name(row.estimate.method)}});
    return j.dump(2) + "\n";
}

std::string content_rows_csv(const std::vector<AnnulusContentRow>& rows) {
    std::ostringstream out;
    out << "n,disks,lower,upper,method\n";
    for (const AnnulusContentRow& row : rows)
        out << row.index << "," << row.disk_count << "," << format_double(row.estimate.lower)
            << "," << format_double(row.estimate.upper) << ","
            << method_name(row.estimate.method) << "\n";
    return out.str();
}

std::string content_rows_text(const std::vector<AnnulusContentRow>& rows, double dimension) {
    std::ostringstream out;
    out << "per-annulus content estimates at dimension " << format_double(dimension) << "\n";
    for (const AnnulusContentRow& row : rows)
        out << "  n=" << row.index << " disks=" << row.disk_count << " ["
            << format_double(row.estimate.lower) << ", " << format_double(row.estimate.upper)
            << "] " << method_name(row.estimate.method) << "\n";
    return out.str();
}

std::string oscillation_to_json(const OscillationReport& report) {
    ordered_json j;
    j["bmo_seminorm_estimate"] = report.bmo_seminorm_estimate;
    j["vmo_consistent"] = report.vmo_consistent;
    j["cubes_examined"] = report.cubes_examined;
    j["modulus_samples"] = ordered_json::array();
    for (const auto& [scale, value] : report.modulus_samples)
        j["modulus_samples"].push_back({{"scale", scale}, {"oscillation", value}});
    return j.dump(2) + "\n";
}

std::string oscillation_to_csv(const OscillationReport& report) {
    std::ostringstream out;
    out << "scale,oscillation\n";
    for (const auto& [scale, value] : report.modulus_samples)
        out << format_double(scale) << "," << format_double(value) << "\n";
    return out.str();
}

std::string bmo_norm_to_json(const OscillationReport& report, double region_norm) {
    ordered_json j;
    j["bmo_region_norm"] = region_norm;
    j["bmo_seminorm_estimate"] = report.bmo_seminorm_estimate;
    j["vmo_consistent"] = report.vmo_consistent;
    j["cubes_examined"] = report.cubes_examined;
    j["modulus_samples"] = ordered_json::array();
    for (const auto& [scale, value] : report.modulus_samples)
        j["modulus_samples"].push_back({{"scale", scale}, {"oscillation", value}});
    return j.dump(2) + "\n";
}

std::string witness_rows_json(const std::vector<WitnessRow>& rows) {
    ordered_json j = ordered_json::array();
    for (const WitnessRow& row : rows)
        j.push_back({{"n", row.start},
                     {"p", row.end},
                     {"block_sum", row.block_sum},
                     {"deriv_formula", row.deriv_formula},
                     {"deriv_contour", row.deriv_contour},
                     {"bmo_seminorm", row.bmo_seminorm}});
    return j.dump(2) + "\n";
}

std::string witness_rows_csv(const std::vector<WitnessRow>& rows) {
    std::ostringstream out;
    out << "n,p,block_sum,deriv_formula,deriv_contour,bmo_seminorm\n";
    for (const WitnessRow& row : rows)
        out << row.start << "," << row.end << "," << format_double(row.block_sum) << ","
            << format_double(row.deriv_formula) << "," << format_double(row.deriv_contour)
            << "," << format_double(row.bmo_seminorm) << "\n";
    return out.str();
}

std::string witness_rows_text(const std::vector<WitnessRow>& rows) {
    std::ostringstream out;
    out << "witness blocks (divergent-case construction)\n";
    out << "  n    p    block_sum      g^(t)(x0)      contour        seminorm\n";
    for (const WitnessRow& row : rows) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-4d %-4d %-14.8g %-14.8g %-14.8g %-14.8g\n",
                      row.start, row.end, row.block_sum, row.deriv_formula,
                      row.deriv_contour, row.bmo_seminorm);
        out << line;
    }
    return out.str();
}

std::string ratio_rows_json(const std::vector<RatioRow>& rows) {
    ordered_json j = ordered_json::array();
    for (const RatioRow& row : rows)
        j.push_back({{"depth", row.depth},
                     {"pole_derivative",
                      {row.pole_derivative.real(), row.pole_derivative.imag()}},
                     {"cumulative_derivative", row.cumulative_derivative},
                     {"seminorm_estimate", row.seminorm_estimate},
                     {"ratio", row.ratio}});
    return j.dump(2) + "\n";
}

std::string ratio_rows_csv(const std::vector<RatioRow>& rows) {
    std::ostringstream out;
    out << "depth,pole_deriv_abs,cum_deriv,seminorm,ratio\n";
    for (const RatioRow& row : rows)
        out << row.depth << "," << format_double(std::abs(row.pole_derivative)) << ","
            << format_double(row.cumulative_derivative) << ","
            << format_double(row.seminorm_estimate) << "," << format_double(row.ratio)
            << "\n";
    return out.str();
}

std::string ratio_rows_text(const std::vector<RatioRow>& rows) {
    std::ostringstream out;
    out << "derivative / seminorm ratio evidence\n";
    out << "  depth  |pole f^(t)|   cumulative     seminorm       ratio\n";
    for (const RatioRow& row : rows) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-6d %-14.8g %-14.8g %-14.8g %-14.8g\n",
                      row.depth, std::abs(row.pole_derivative), row.cumulative_derivative,
                      row.seminorm_estimate, row.ratio);
        out << line;
    }
    return out.str();
}

}  // namespace bpd
