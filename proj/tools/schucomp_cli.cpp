#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "schucomp/sweep.hpp"
#include "schucomp/verify.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    int samples = 0;
    bool seed_set = false, samples_set = false;
};

schucomp::ExperimentConfig resolve_config(const CommonFlags& flags) {
    schucomp::ExperimentConfig cfg = flags.config_path.empty()
                                         ? schucomp::ExperimentConfig::defaults()
                                         : schucomp::load_config(flags.config_path);
    // flags win over the file
    if (flags.seed_set) cfg.seed = flags.seed;
    if (flags.samples_set) cfg.samples = flags.samples;
    if (!flags.out_path.empty()) cfg.out_path = flags.out_path;
    cfg.validate();
    return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + out_path);
    out << text;
}

int cmd_example3() {
    using namespace schucomp;
    const TypicalSpec spec = three_qubit_typical_spec();
    const double delta = spec.delta;
    const double overlap = three_qubit_guess_overlap_avg();
    const double fid = three_qubit_ideal_fidelity_avg();
    const EncodingPlan ref = three_qubit_reference_plan();
    const double matrix_err =
        (ref.U.matrix() - three_qubit_reference_matrix()).cwiseAbs().maxCoeff();

    const bool delta_ok = std::abs(delta - 0.058) <= 0.005;
    const bool fid_ok = std::abs(fid - 0.92) <= 0.01;
    const bool ovl_ok = std::abs(std::sqrt(overlap) - 0.79) <= 0.005;
    const bool mat_ok = matrix_err <= 1e-9;

    std::cout << "delta                 = " << format_float(delta)
              << (delta_ok ? "  [ok]" : "  [FAIL]") << "\n";
    std::cout << "avg_guess_overlap_sq  = " << format_float(overlap) << "\n";
    std::cout << "avg_guess_amplitude   = " << format_float(std::sqrt(overlap))
              << (ovl_ok ? "  [ok]" : "  [FAIL]") << "\n";
    std::cout << "avg_ideal_fidelity    = " << format_float(fid)
              << (fid_ok ? "  [ok]" : "  [FAIL]") << "\n";
    std::cout << "encode_matrix_max_err = " << format_float(matrix_err)
              << (mat_ok ? "  [ok]" : "  [FAIL]") << "\n";
    return (delta_ok && fid_ok && ovl_ok && mat_ok) ? 0 : 1;
}

int cmd_sweep(const std::string& kind, const CommonFlags& flags) {
    const schucomp::ExperimentConfig cfg = resolve_config(flags);
    const schucomp::CsvTable table = schucomp::run_sweep(kind, cfg);
    emit(table.serialize(), cfg.out_path);
    return 0;
}

int cmd_verify(const CommonFlags& flags) {
    const schucomp::ExperimentConfig cfg = resolve_config(flags);
    const auto records = schucomp::run_verification(cfg);
    bool all_ok = true;
    for (const auto& r : records) {
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name;
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << "\n";
        all_ok = all_ok && r.pass;
    }
    std::cout << (all_ok ? "verify: all checks passed" : "verify: FAILURES present") << "\n";
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-resource fidelity simulator for lossless qubit-block compression"};
    app.require_subcommand(1);

    CommonFlags flags;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", flags.config_path, "JSON config file");
        sub->add_option("--out", flags.out_path, "output path (default stdout)");
        sub->add_option("--seed", flags.seed, "RNG seed")->each([&](const std::string&) {
            flags.seed_set = true;
        });
        sub->add_option("--samples", flags.samples, "Monte Carlo sample count")
            ->each([&](const std::string&) { flags.samples_set = true; });
    };

    CLI::App* example3 = app.add_subcommand("example3", "reproduce the three-qubit worked example");
    add_common(example3);

    std::string kind;
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep, CSV output");
    sweep->add_option("kind", kind, "probe-beta | probe-dim | clock-sigma | append-eta | append-beta | cooling")
        ->required();
    add_common(sweep);

    CLI::App* verify = app.add_subcommand("verify", "run the invariant/bound suite");
    add_common(verify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (example3->parsed()) return cmd_example3();
        if (sweep->parsed()) return cmd_sweep(kind, flags);
        if (verify->parsed()) return cmd_verify(flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
