// bpd: decide bounded point derivations on analytic VMO / little-Lipschitz
// spaces over roadrunner-style regions, and build the divergent-case
// witness diagnostics.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bpd/presets.hpp"
#include "bpd/region_io.hpp"
#include "bpd/report_io.hpp"

namespace {

using namespace bpd;

struct CommonOptions {
    std::string preset;
    std::string region_file;
    std::string format = "text";
    std::string output = "-";
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool need_region = true) {
    if (need_region) {
        cmd->add_option("--preset", opts.preset, "built-in region name");
        cmd->add_option("--region", opts.region_file, "region JSON file");
    }
    cmd->add_option("--format", opts.format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--output,-o", opts.output, "output path ('-' for stdout)");
}

RegionSpec resolve_region(const CommonOptions& opts) {
    const bool has_preset = !opts.preset.empty();
    const bool has_file = !opts.region_file.empty();
    if (has_preset == has_file)
        throw ValidationError("give exactly one region source: --preset or --region");
    return has_preset ? preset_region(opts.preset) : load_region_file(opts.region_file);
}

void emit(const CommonOptions& opts, const std::string& text) {
    if (opts.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.output, std::ios::binary);
    if (!out) throw ValidationError("cannot write output file '" + opts.output + "'");
    out << text;
}

int worker_count() {
    const char* env = std::getenv("BPD_WORKERS");
    if (!env) return 1;
    const int n = std::atoi(env);
    if (n < 1) throw ValidationError("BPD_WORKERS must be a positive integer");
    return n;
}

double resolve_dimension(const std::optional<double>& alpha) {
    if (!alpha) return 1.0;
    if (!(*alpha > 0.0 && *alpha < 1.0))
        throw ValidationError("--alpha must lie in (0, 1)");
    return 1.0 + *alpha;
}

std::vector<int> parse_index_list(const std::string& text) {
    std::vector<int> values;
    const auto range_sep = text.find("..");
    if (range_sep != std::string::npos) {
        const int lo = std::stoi(text.substr(0, range_sep));
        const int hi = std::stoi(text.substr(range_sep + 2));
        if (hi < lo) throw ValidationError("empty index range '" + text + "'");
        for (int v = lo; v <= hi; ++v) values.push_back(v);
        return values;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        values.push_back(std::stoi(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (values.empty()) throw ValidationError("empty index list");
    return values;
}

int run_criterion(const CommonOptions& opts, int t, std::optional<double> alpha, int horizon,
                  int depth) {
    CriterionQuery query{resolve_region(opts), t, resolve_dimension(alpha), horizon, depth};
    const VerdictReport report = bpd_verdict(query);
    if (opts.format == "json")
        emit(opts, verdict_to_json(report));
    else if (opts.format == "csv")
        emit(opts, series_terms_csv(report.series));
    else
        emit(opts, verdict_to_text(report));
    return 0;
}

int run_content(const CommonOptions& opts, std::optional<double> alpha, int horizon,
                int depth) {
    const RegionSpec region = resolve_region(opts);
    const double d = resolve_dimension(alpha);

    auto row_for = [&](int n) {
        AnnulusContentRow row;
        row.index = n;
        const std::vector<Disk> disks = complement_in_annulus(region, n);
        row.disk_count = static_cast<int>(disks.size());
        row.estimate = content_interval(disks, d, depth);
        return row;
    };

    std::vector<AnnulusContentRow> rows(horizon);
    const int workers = worker_count();
    if (workers <= 1) {
        for (int n = 1; n <= horizon; ++n) rows[n - 1] = row_for(n);
    } else {
        std::vector<std::future<AnnulusContentRow>> futures;
        futures.reserve(horizon);
        for (int n = 1; n <= horizon; ++n)
            futures.push_back(std::async(std::launch::async, row_for, n));
        for (int n = 1; n <= horizon; ++n) rows[n - 1] = futures[n - 1].get();
    }

    if (opts.format == "json")
        emit(opts, content_rows_json(rows, d));
    else if (opts.format == "csv")
        emit(opts, content_rows_csv(rows));
    else
        emit(opts, content_rows_text(rows, d));
    return 0;
}

int run_witness(const CommonOptions& opts, int t, const std::string& starts_text, int atoms,
                int nodes) {
    const RegionSpec region = resolve_region(opts);
    WitnessProbeParams probe;
    probe.nodes = nodes;
    const std::vector<WitnessRow> rows =
        witness_report(region, t, parse_index_list(starts_text), probe, {}, atoms);
    if (opts.format == "json")
        emit(opts, witness_rows_json(rows));
    else if (opts.format == "csv")
        emit(opts, witness_rows_csv(rows));
    else
        emit(opts, witness_rows_text(rows));
    return 0;
}

int run_ratios(const CommonOptions& opts, int t, const std::string& depths_text, int atoms,
               int nodes) {
    const RegionSpec region = resolve_region(opts);
    WitnessProbeParams probe;
    probe.nodes = nodes;
    const std::vector<RatioRow> rows =
        ratio_table(region, t, parse_index_list(depths_text), probe, atoms);
    if (opts.format == "json")
        emit(opts, ratio_rows_json(rows));
    else if (opts.format == "csv")
        emit(opts, ratio_rows_csv(rows));
    else
        emit(opts, ratio_rows_text(rows));
    return 0;
}

int run_bmo_norm(const CommonOptions& opts, const std::string& function_name, int pole_depth,
                 int nodes, int scale_count, int integral_nodes) {
    const RegionSpec region = resolve_region(opts);

    SampledFunction f;
    if (function_name == "re") {
        f.eval = [](Complex z) { return Complex{z.real(), 0.0}; };
    } else if (function_name == "im") {
        f.eval = [](Complex z) { return Complex{z.imag(), 0.0}; };
    } else if (function_name == "zsq") {
        f.eval = [](Complex z) { return z * z; };
    } else if (function_name == "pole") {
        const std::vector<Disk> disks = complement_in_annulus(region, pole_depth);
        if (disks.empty())
            throw ValidationError("annulus " + std::to_string(pole_depth) +
                                  " holds no removed disk for the pole function");
        const Disk d = disks.front();
        f.eval = [d](Complex z) { return d.radius / (z - d.center); };
        f.singularity_distance = [d](Complex z) { return std::abs(z - d.center); };
    } else {
        throw ValidationError("unknown --function '" + function_name +
                              "'; expected re, im, zsq or pole");
    }

    OscillationParams params;
    for (int j = 0; j < scale_count; ++j) params.scales.push_back(std::ldexp(1.0, -j));
    params.nodes = nodes;

    const double norm = bmo_region_norm(f, region, params, integral_nodes);
    const OscillationReport osc = bmo_seminorm(f, Cube{region.base_point, 2.0}, params);

    if (opts.format == "json") {
        emit(opts, bmo_norm_to_json(osc, norm));
    } else if (opts.format == "csv") {
        emit(opts, oscillation_to_csv(osc));
    } else {
        std::ostringstream out;
        out << "bmo region norm (seminorm + |integral|): " << format_double(norm) << "\n";
        out << "seminorm estimate: " << format_double(osc.bmo_seminorm_estimate) << "\n";
        out << "vmo consistent: " << (osc.vmo_consistent ? "yes" : "no") << "\n";
        out << "modulus samples (scale, oscillation):\n";
        for (const auto& [scale, value] : osc.modulus_samples)
            out << "  " << format_double(scale) << " " << format_double(value) << "\n";
        emit(opts, out.str());
    }
    return 0;
}

int run_preset(const CommonOptions& opts, const std::string& name) {
    emit(opts, region_to_json(preset_region(name)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded point derivation criterion and witness toolkit"};
    app.require_subcommand(1);

    CommonOptions opts;
    int t = 0;
    std::optional<double> alpha;
    int horizon = 32;
    int depth = 10;
    int atoms = 256;
    int nodes = 12;
    int scale_count = 9;
    int integral_nodes = 1024;
    int pole_depth = 2;
    std::string starts = "1..4";
    std::string depths = "2..8";
    std::string function_name = "re";
    std::string preset_name;

    CLI::App* criterion = app.add_subcommand("criterion", "evaluate the series criterion");
    add_common(criterion, opts);
    criterion->add_option("--t", t, "derivation order (default 0)");
    criterion->add_option("--alpha", alpha, "little-Lipschitz exponent in (0,1)");
    criterion->add_option("--horizon", horizon, "number of leading terms");
    criterion->add_option("--depth", depth, "cover search depth");

    CLI::App* content = app.add_subcommand("content", "per-annulus content estimates");
    add_common(content, opts);
    content->add_option("--alpha", alpha, "little-Lipschitz exponent in (0,1)");
    content->add_option("--horizon", horizon, "number of annuli");
    content->add_option("--depth", depth, "cover search depth");

    CLI::App* witness = app.add_subcommand("witness", "divergent-case witness table");
    add_common(witness, opts);
    witness->add_option("--t", t, "derivation order");
    witness->add_option("--starts", starts, "block start indices, e.g. 1..6 or 1,3,5");
    witness->add_option("--atoms", atoms, "atoms per circle measure");
    witness->add_option("--nodes", nodes, "quadrature nodes per axis");

    CLI::App* ratios = app.add_subcommand("ratios", "derivative/seminorm ratio table");
    add_common(ratios, opts);
    ratios->add_option("--t", t, "derivation order");
    ratios->add_option("--depths", depths, "pole depths, e.g. 2..8");
    ratios->add_option("--atoms", atoms, "atoms per circle measure");
    ratios->add_option("--nodes", nodes, "quadrature nodes per axis");

    CLI::App* bmo = app.add_subcommand("bmo-norm", "BMO norm of a sample function");
    add_common(bmo, opts);
    bmo->add_option("--function", function_name, "re, im, zsq or pole");
    bmo->add_option("--pole-depth", pole_depth, "annulus for the pole function");
    bmo->add_option("--nodes", nodes, "quadrature nodes per axis");
    bmo->add_option("--scales", scale_count, "number of dyadic probe scales");
    bmo->add_option("--integral-nodes", integral_nodes, "nodes per axis for the integral");

    CLI::App* preset = app.add_subcommand("preset", "write a built-in region as JSON");
    add_common(preset, opts, false);
    preset->add_option("name", preset_name, "preset name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (criterion->parsed()) return run_criterion(opts, t, alpha, horizon, depth);
        if (content->parsed()) return run_content(opts, alpha, horizon, depth);
        if (witness->parsed()) return run_witness(opts, t, starts, atoms, nodes);
        if (ratios->parsed()) return run_ratios(opts, t, depths, atoms, nodes);
        if (bmo->parsed())
            return run_bmo_norm(opts, function_name, pole_depth, nodes, scale_count,
                                integral_nodes);
        if (preset->parsed()) return run_preset(opts, preset_name);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConstructionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
