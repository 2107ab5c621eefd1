#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "schucomp/textbook.hpp"
#include "schucomp/thermo.hpp"

namespace schucomp {

/// Flat experiment configuration. Defaults reproduce the three-qubit worked
/// example; a JSON file overrides fields, CLI flags override the file.
struct ExperimentConfig {
    // source
    std::vector<std::vector<std::pair<double, double>>> letters;  // (re, im) amplitudes
    std::vector<double> probs;
    int n = 3;
    double epsilon = 0;          // 0 means "use the worked-example midpoint"
    int kept_qubits = -1;        // -1 means default m = ceil(nS + eps), clamped

    // thermal probe
    int probe_d = 2;
    double probe_beta = 1.0;
    std::vector<double> probe_energies;  // empty means qubit {-1, +1} / qudit E_i = i
    std::vector<double> probe_beta_grid{0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0};
    std::vector<int> probe_dim_grid{2, 4, 8, 16, 32};

    // clocks
    std::vector<double> sigma_grid{0.0, 0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0};

    // appends
    std::vector<double> eta_grid{0.0, 0.01, 0.05, 0.1, 0.2, 0.3, 0.5};
    std::vector<double> append_beta_grid{0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0};

    // cooling
    std::vector<long long> cooling_l_grid{5, 10, 20, 40, 80, 120, 160, 200};
    double cooling_kappa = 0.1;

    std::uint64_t seed = 20240817;
    int samples = 10000;
    std::string out_path;  // empty means stdout

    static ExperimentConfig defaults() { return ExperimentConfig{}; }

    QubitSource make_source() const {
        if (letters.empty()) return three_qubit_source();
        std::vector<StateVector> kets;
        for (const auto& amps : letters) {
            Vec v(amps.size());
            for (size_t i = 0; i < amps.size(); ++i) v(i) = cplx(amps[i].first, amps[i].second);
            kets.emplace_back(std::move(v));
        }
        return QubitSource::create(std::move(kets), probs);
    }

    double effective_epsilon() const {
        return epsilon > 0 ? epsilon : three_qubit_epsilon();
    }

    TypicalSpec make_typical_spec() const {
        return build_typical_spec(make_source(), n, effective_epsilon());
    }

    EncodingPlan make_plan() const {
        std::optional<int> m;
        if (kept_qubits >= 0) m = kept_qubits;
        else if (letters.empty() && n == 3 && epsilon == 0) m = 2;
        return build_encoding_plan(make_source(), make_typical_spec(), m);
    }

    ThermalProbe make_probe(double beta) const {
        if (!probe_energies.empty()) return ThermalProbe::create(probe_energies, beta);
        if (probe_d == 2) return ThermalProbe::qubit(beta);
        return ThermalProbe::qudit(probe_d, beta);
    }

    void validate() const {
        if (n < 1 || n > numeric_config().max_qubits)
            throw std::invalid_argument("config: n out of range");
        if (epsilon < 0) throw std::invalid_argument("config: epsilon must be >= 0");
        if (samples < 100) throw std::invalid_argument("config: samples must be >= 100");
        if (probe_beta_grid.empty() || probe_dim_grid.empty() || sigma_grid.empty() ||
            eta_grid.empty() || append_beta_grid.empty() || cooling_l_grid.empty())
            throw std::invalid_argument("config: grids must be nonempty");
        if (cooling_kappa <= 0) throw std::invalid_argument("config: kappa must be > 0");
    }
};

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    nlohmann::json j;
    in >> j;

    ExperimentConfig cfg;
    if (j.contains("letters")) {
        for (const auto& letter : j.at("letters")) {
            std::vector<std::pair<double, double>> amps;
            for (const auto& a : letter)
                amps.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
            cfg.letters.push_back(std::move(amps));
        }
        cfg.probs = j.at("probs").get<std::vector<double>>();
    }
    if (j.contains("n")) cfg.n = j.at("n").get<int>();
    if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
    if (j.contains("kept_qubits")) cfg.kept_qubits = j.at("kept_qubits").get<int>();
    if (j.contains("probe_d")) cfg.probe_d = j.at("probe_d").get<int>();
    if (j.contains("probe_beta")) cfg.probe_beta = j.at("probe_beta").get<double>();
    if (j.contains("probe_energies"))
        cfg.probe_energies = j.at("probe_energies").get<std::vector<double>>();
    if (j.contains("probe_beta_grid"))
        cfg.probe_beta_grid = j.at("probe_beta_grid").get<std::vector<double>>();
    if (j.contains("probe_dim_grid"))
        cfg.probe_dim_grid = j.at("probe_dim_grid").get<std::vector<int>>();
    if (j.contains("sigma_grid")) cfg.sigma_grid = j.at("sigma_grid").get<std::vector<double>>();
    if (j.contains("eta_grid")) cfg.eta_grid = j.at("eta_grid").get<std::vector<double>>();
    if (j.contains("append_beta_grid"))
        cfg.append_beta_grid = j.at("append_beta_grid").get<std::vector<double>>();
    if (j.contains("cooling_l_grid"))
        cfg.cooling_l_grid = j.at("cooling_l_grid").get<std::vector<long long>>();
    if (j.contains("cooling_kappa")) cfg.cooling_kappa = j.at("cooling_kappa").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
    if (j.contains("out")) cfg.out_path = j.at("out").get<std::string>();
    cfg.validate();
    return cfg;
}

}  // namespace schucomp
