#include "bpd/region_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bpd {

namespace {

using nlohmann::ordered_json;

Complex parse_point(const ordered_json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError(what + " must be a [re, im] pair");
    return Complex{j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

RegionSpec parse_region_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ValidationError(std::string("region JSON does not parse: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("region JSON must be an object");
    if (!j.contains("x0")) throw ValidationError("region JSON is missing \"x0\"");

    const Complex x0 = parse_point(j["x0"], "\"x0\"");

    std::vector<AnnulusDisks> annuli;
    if (j.contains("annuli")) {
        if (!j["annuli"].is_array()) throw ValidationError("\"annuli\" must be an array");
        for (const auto& entry : j["annuli"]) {
            if (!entry.is_object() || !entry.contains("n") ||
                !entry["n"].is_number_integer())
                throw ValidationError("each annulus entry needs an integer \"n\"");
            AnnulusDisks a;
            a.index = entry["n"].get<int>();
            const std::string where = "annulus " + std::to_string(a.index);
            if (entry.contains("disks")) {
                if (!entry["disks"].is_array())
                    throw ValidationError(where + ": \"disks\" must be an array");
                for (const auto& dj : entry["disks"]) {
                    if (!dj.is_object() || !dj.contains("center") || !dj.contains("radius") ||
                        !dj["radius"].is_number())
                        throw ValidationError(where +
                                              ": each disk needs \"center\" and \"radius\"");
                    a.disks.push_back(Disk{parse_point(dj["center"], where + " disk center"),
                                           dj["radius"].get<double>()});
                }
            }
            annuli.push_back(std::move(a));
        }
    }

    std::optional<RadiusRule> rule;
    if (j.contains("rule") && !j["rule"].is_null()) {
        const auto& rj = j["rule"];
        if (!rj.is_object() || !rj.contains("c") || !rj.contains("beta") ||
            !rj.contains("s") || !rj["c"].is_number() || !rj["beta"].is_number() ||
            !rj["s"].is_number())
            throw ValidationError("\"rule\" must be {\"c\": real, \"beta\": real, \"s\": real}");
        rule = make_radius_rule(rj["c"].get<double>(), rj["beta"].get<double>(),
                                rj["s"].get<double>());
    }

    return make_region_spec(x0, std::move(annuli), std::move(rule));
}

RegionSpec load_region_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read region file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_region_json(buffer.str());
}

std::string region_to_json(const RegionSpec& region) {
    ordered_json j;
    j["x0"] = {region.base_point.real(), region.base_point.imag()};
    j["annuli"] = ordered_json::array();
    for (const AnnulusDisks& a : region.explicit_annuli) {
        ordered_json entry;
        entry["n"] = a.index;
        entry["disks"] = ordered_json::array();
        for (const Disk& d : a.disks)
            entry["disks"].push_back(
                {{"center", {d.center.real(), d.center.imag()}}, {"radius", d.radius}});
        j["annuli"].push_back(std::move(entry));
    }
    if (region.rule)
        j["rule"] = {{"c", region.rule->coefficient},
                     {"beta", region.rule->geometric_exponent},
                     {"s", region.rule->polynomial_exponent}};
    else
        j["rule"] = nullptr;
    return j.dump(2) + "\n";
}

}  // namespace bpd
