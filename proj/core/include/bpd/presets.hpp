#pragma once

#include <string_view>
#include <vector>

#include "bpd/geometry.hpp"

namespace bpd {

/// Built-in roadrunner regions:
///   roadrunner-harmonic  r_n = 4^-n / n    (no order-1 derivation bound at d = 1)
///   roadrunner-square    r_n = 4^-n / n^2  (order-1 derivation bound at d = 1)
RegionSpec preset_region(std::string_view name);

std::vector<std::string_view> preset_names();

}  // namespace bpd
