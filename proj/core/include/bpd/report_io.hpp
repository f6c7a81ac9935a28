#pragma once

#include <string>
#include <vector>

#include "bpd/content.hpp"
#include "bpd/oscillation.hpp"
#include "bpd/series.hpp"
#include "bpd/witness.hpp"

namespace bpd {

/// Shortest round-trip decimal form (%.17g trimmed); identical inputs give
/// byte-identical report files.
std::string format_double(double value);

std::string verdict_to_json(const VerdictReport& report);
std::string verdict_to_text(const VerdictReport& report);
std::string series_terms_csv(const SeriesReport& report);

struct AnnulusContentRow {
    int index = 0;
    int disk_count = 0;
    ContentEstimate estimate;
};
std::string content_rows_json(const std::vector<AnnulusContentRow>& rows, double dimension);
std::string content_rows_csv(const std::vector<AnnulusContentRow>& rows);
std::string content_rows_text(const std::vector<AnnulusContentRow>& rows, double dimension);

std::string oscillation_to_json(const OscillationReport& report);
std::string oscillation_to_csv(const OscillationReport& report);
std::string bmo_norm_to_json(const OscillationReport& report, double region_norm);

std::string witness_rows_json(const std::vector<WitnessRow>& rows);
std::string witness_rows_csv(const std::vector<WitnessRow>& rows);
std::string witness_rows_text(const std::vector<WitnessRow>& rows);

std::string ratio_rows_json(const std::vector<RatioRow>& rows);
std::string ratio_rows_csv(const std::vector<RatioRow>& rows);
std::string ratio_rows_text(const std::vector<RatioRow>& rows);

}  // namespace bpd
