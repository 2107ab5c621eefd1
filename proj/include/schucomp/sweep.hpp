#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "schucomp/append.hpp"
#include "schucomp/config.hpp"
#include "schucomp/cooling.hpp"
#include "schucomp/thermo.hpp"
#include "schucomp/timing.hpp"

namespace schucomp {

/// 12 significant digits, locale-independent.
inline std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string serialize() const {
        std::string out;
        for (size_t i = 0; i < header.size(); ++i) {
            if (i) out += ',';
            out += header[i];
        }
        out += '\n';
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += row[i];
            }
            out += '\n';
        }
        return out;
    }
};

inline CsvTable sweep_probe_beta(const ExperimentConfig& cfg) {
    const QubitSource src = cfg.make_source();
    const TypicalSpec spec = cfg.make_typical_spec();
    const MessageEnsemble ens = enumerate_messages(src, cfg.n);
    const StateVector g = guess_state(src, cfg.n);
    const double ovl = ensemble_average(
        ens, [&](const StateVector& psi) { return std::norm(g.amps().dot(psi.amps())); });

    CsvTable t;
    t.header = {"beta", "c_max", "avg_fidelity", "bound", "bound_tight"};
    for (double beta : cfg.probe_beta_grid) {
        const ThermalProbe probe = cfg.make_probe(beta);
        const double f = ensemble_average(ens, [&](const StateVector& psi) {
            return fidelity_pure_mixed(psi, received_ensemble_thermal(psi, spec, probe, g));
        });
        t.rows.push_back({format_float(beta), format_float(probe.c_max), format_float(f),
                          format_float(probe_fidelity_bound(probe.c_max, spec.delta)),
                          format_float(probe_fidelity_bound_tight(probe.c_max, spec.delta, ovl))});
    }
    return t;
}

inline CsvTable sweep_probe_dim(const ExperimentConfig& cfg) {
    const QubitSource src = cfg.make_source();
    const TypicalSpec spec = cfg.make_typical_spec();
    const MessageEnsemble ens = enumerate_messages(src, cfg.n);
    const StateVector g = guess_state(src, cfg.n);

    CsvTable t;
    t.header = {"d", "c_max", "avg_fidelity", "bound"};
    for (int d : cfg.probe_dim_grid) {
        const ThermalProbe probe = ThermalProbe::qudit(d, cfg.probe_beta);
        const double f = ensemble_average(ens, [&](const StateVector& psi) {
            return fidelity_pure_mixed(psi, received_ensemble_thermal(psi, spec, probe, g));
        });
        t.rows.push_back({format_float(d), format_float(probe.c_max), format_float(f),
                          format_float(probe_fidelity_bound(probe.c_max, spec.delta))});
    }
    return t;
}

inline CsvTable sweep_clock_sigma(const ExperimentConfig& cfg) {
    const QubitSource src = cfg.make_source();
    const TypicalSpec spec = cfg.make_typical_spec();
    const EncodingPlan plan = cfg.make_plan();
    const GeneratorSpec gen = GeneratorSpec::from_plan(plan);
    const MessageEnsemble ens = enumerate_messages(src, cfg.n);
    const StateVector g = guess_state(src, cfg.n);
    const double c = cfg.make_probe(cfg.probe_beta).c_max;

    CsvTable t;
    t.header = {"sigma", "avg_typical_fidelity", "avg_full_fidelity"};
    for (double sigma : cfg.sigma_grid) {
        const ClockSpec clock(1.0, sigma);
        const double ft = ensemble_average(ens, [&](const StateVector& psi) {
            return clock_limited_fidelity(psi, spec, gen, clock);
        });
        const double ff = ensemble_average(ens, [&](const StateVector& psi) {
            return clock_limited_fidelity_full(psi, spec, gen, clock, c, g);
        });
        t.rows.push_back({format_float(sigma), format_float(ft), format_float(ff)});
    }
    return t;
}

inline CsvTable sweep_append_eta(const ExperimentConfig& cfg) {
    const EncodingPlan plan = cfg.make_plan();
    const StateVector typical_msg = eigenstring_ket(plan.source, 0, plan.n);

    CsvTable t;
    t.header = {"eta", "beta_equiv", "fidelity", "fidelity_simulated"};
    for (double eta : cfg.eta_grid) {
        const NoisyGroundQubit q = NoisyGroundQubit::from_eta(eta);
        t.rows.push_back({format_float(eta), format_float(q.beta_equiv),
                          format_float(append_fidelity_closed(eta, plan.J)),
                          format_float(append_fidelity_simulated(typical_msg, plan, eta))});
    }
    return t;
}

inline CsvTable sweep_append_beta(const ExperimentConfig& cfg) {
    const EncodingPlan plan = cfg.make_plan();

    CsvTable t;
    t.header = {"beta", "eta_equiv", "fidelity"};
    for (double beta : cfg.append_beta_grid) {
        const NoisyGroundQubit q = NoisyGroundQubit::from_beta(beta);
        t.rows.push_back({format_float(beta), format_float(q.eta),
                          format_float(append_fidelity_closed(q.eta, plan.J))});
    }
    return t;
}

inline CsvTable sweep_cooling(const ExperimentConfig& cfg) {
    const EncodingPlan plan = cfg.make_plan();
    const double kappa = cfg.cooling_kappa;

    CsvTable t;
    t.header = {"L", "eta_achieved", "ground_pop_bound", "g",
                "append_ceiling", "measure_ceiling"};
    for (long long L : cfg.cooling_l_grid) {
        const double gp = ground_pop_bound(L, kappa);
        std::vector<std::string> row{format_float(static_cast<double>(L)),
                                     format_float(eta_achieved(L, kappa)), format_float(gp)};
        if (gp < 0) {
            // radicand of g exceeds 1; the bound carries no information here
            row.insert(row.end(), {"vacuous", "vacuous", "vacuous"});
        } else {
            const FidelityCeilings c = fidelity_ceilings(cfg.n, plan.J, L, kappa);
            row.insert(row.end(), {format_float(g_function(L, kappa)),
                                   format_float(c.append_ceiling),
                                   format_float(c.measure_ceiling)});
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline CsvTable run_sweep(const std::string& kind, const ExperimentConfig& cfg) {
    if (kind == "probe-beta") return sweep_probe_beta(cfg);
    if (kind == "probe-dim") return sweep_probe_dim(cfg);
    if (kind == "clock-sigma") return sweep_clock_sigma(cfg);
    if (kind == "append-eta") return sweep_append_eta(cfg);
    if (kind == "append-beta") return sweep_append_beta(cfg);
    if (kind == "cooling") return sweep_cooling(cfg);
    throw std::invalid_argument("run_sweep: unknown kind " + kind);
}

}  // namespace schucomp
