#pragma once

#include <string>

#include "bpd/geometry.hpp"

namespace bpd {

/// Region JSON schema:
///   {"x0": [re, im],
///    "annuli": [{"n": int, "disks": [{"center": [re, im], "radius": r}]}],
///    "rule": {"c": real, "beta": real, "s": real} | null}
/// Validation errors name the offending annulus index.
RegionSpec parse_region_json(const std::string& text);

RegionSpec load_region_file(const std::string& path);

std::string region_to_json(const RegionSpec& region);

}  // namespace bpd
