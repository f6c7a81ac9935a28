#include "bpd/presets.hpp"

#include <string>

namespace bpd {

RegionSpec preset_region(std::string_view name) {
    if (name == "roadrunner-harmonic")
        return make_region_spec(Complex{0.0, 0.0}, {}, make_radius_rule(1.0, 2.0, 1.0));
    if (name == "roadrunner-square")
        return make_region_spec(Complex{0.0, 0.0}, {}, make_radius_rule(1.0, 2.0, 2.0));
    throw ValidationError("unknown preset '" + std::string(name) +
                          "'; expected roadrunner-harmonic or roadrunner-square");
}

std::vector<std::string_view> preset_names() {
    return {"roadrunner-harmonic", "roadrunner-square"};
}

}  // namespace bpd
