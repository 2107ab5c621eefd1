#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "schucomp/append.hpp"
#include "schucomp/config.hpp"
#include "schucomp/cooling.hpp"
#include "schucomp/sweep.hpp"
#include "schucomp/thermo.hpp"
#include "schucomp/timing.hpp"

namespace schucomp {

struct CheckRecord {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Full invariant/bound suite behind the `verify` subcommand. Each record is
/// an independently named pass/fail with a numeric detail string.
inline std::vector<CheckRecord> run_verification(const ExperimentConfig& cfg) {
    std::vector<CheckRecord> out;
    const QubitSource src = cfg.make_source();
    const double eps = cfg.effective_epsilon();

    {  // lower-bound grid: average received fidelity vs both bound forms
        bool ok = true;
        double worst = 1e300;
        for (int n = 3; n <= 4; ++n) {
            const TypicalSpec spec = build_typical_spec(src, n, eps);
            const MessageEnsemble ens = enumerate_messages(src, n);
            const StateVector g = guess_state(src, n);
            const double ovl = ensemble_average(
                ens, [&](const StateVector& p) { return std::norm(g.amps().dot(p.amps())); });
            for (double c = 0.5; c <= 1.0 + 1e-12; c += 0.1) {
                const double cm = std::min(c, 1.0);
                const double f = ensemble_average(ens, [&](const StateVector& p) {
                    return fidelity_pure_mixed(p, received_ensemble_thermal(p, spec, cm, g));
                });
                const double slack =
                    f - probe_fidelity_bound_tight(cm, spec.delta, ovl);
                worst = std::min(worst, slack);
                if (slack < -1e-10 || f - probe_fidelity_bound(cm, spec.delta) < -1e-10) ok = false;
            }
        }
        out.push_back({"fidelity_lower_bounds", ok, "min_slack=" + format_float(worst)});
    }

    {  // trace-norm perturbation bound on random messages
        std::mt19937_64 rng(cfg.seed);
        const TypicalSpec spec = build_typical_spec(src, cfg.n, eps);
        bool ok = true;
        double worst = 1e300;
        for (int i = 0; i < 100; ++i) {
            const StateVector psi = haar_random_state(1 << cfg.n, rng);
            for (double c : {0.7, 0.9}) {
                const GentleBound gb = gentle_bound_check(psi, spec, c);
                worst = std::min(worst, gb.rhs - gb.lhs);
                if (gb.lhs > gb.rhs + 1e-10) ok = false;
            }
        }
        out.push_back({"trace_norm_perturbation_bound", ok, "min_slack=" + format_float(worst)});
    }

    {  // Monte Carlo Haar average vs closed form
        bool ok = true;
        double worst_z = 0;
        const TypicalSpec spec = build_typical_spec(src, cfg.n, eps);
        const double t = spec.projector.matrix().trace().real();
        int idx = 0;
        for (double c : {0.6, 0.8, 0.95}) {
            const McEstimate mc =
                haar_average_fidelity_mc(spec.projector, c, cfg.samples, cfg.seed + ++idx);
            const double exact =
                instrument_average_fidelity_analytic(1 << cfg.n, t, c);
            const double z = std::abs(mc.mean - exact) / mc.std_err;
            worst_z = std::max(worst_z, z);
            if (z > 3.0) ok = false;
        }
        out.push_back({"haar_average_vs_analytic", ok, "max_z=" + format_float(worst_z)});
    }

    {  // dephasing double sum vs channel pipeline, and sigma monotonicity
        const TypicalSpec spec = build_typical_spec(src, cfg.n, eps);
        const EncodingPlan plan = cfg.make_plan();
        const GeneratorSpec gen = GeneratorSpec::from_plan(plan);
        const MessageEnsemble ens = enumerate_messages(src, cfg.n);
        bool ok = true;
        double max_gap = 0;
        double prev = 2.0;
        const Mat& lam = spec.projector.matrix();
        for (double sigma : cfg.sigma_grid) {
            const ClockSpec clock(1.0, sigma);
            const double f = ensemble_average(ens, [&](const StateVector& p) {
                const double direct = clock_limited_fidelity(p, spec, gen, clock);
                // cross-check against the channel pipeline on the projected branch
                const Vec lp = lam * p.amps();
                const double w = lp.squaredNorm();
                if (w > 1e-12) {
                    const DensityMatrix branch =
                        DensityMatrix::from_channel_output(lp * lp.adjoint() / w);
                    const double piped = w * fidelity_pure_mixed(p, double_dephase(branch, gen, clock));
                    max_gap = std::max(max_gap, std::abs(direct - piped));
                }
                return direct;
            });
            if (f > prev + 1e-12) ok = false;
            prev = f;
        }
        if (max_gap > 1e-10) ok = false;
        out.push_back({"dephasing_sum_vs_pipeline_and_monotone", ok,
                       "max_gap=" + format_float(max_gap)});
    }

    {  // cooling round-trip and ceilings
        bool ok = true;
        for (int li = 1; li <= 20; ++li)
            for (int ki = 1; ki <= 20; ++ki) {
                const long long L = 10 * li;
                const double kappa = 0.02 * ki;
                const double eta = eta_achieved(L, kappa);
                if (eta < 1.0 && steps_required(kappa, eta) > L) ok = false;
                const double gp = ground_pop_bound(L, kappa);
                if (gp >= 0 && eta <= 1.0 && gp < 1.0 - eta - 1e-10) ok = false;
            }
        out.push_back({"cooling_round_trip_and_bound", ok, ""});
    }

    {  // entropy production diagnostic trivial cases
        const DensityMatrix tau = thermal_state({0.0, 1.0}, 1.0);
        const Operator id4 = Operator::identity(4);
        Mat swap = Mat::Zero(4, 4);
        swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
        const double d_id = entropy_production_diagnostic(tau, tau, id4);
        const double d_swap =
            entropy_production_diagnostic(tau, tau, Operator(swap, OperatorKind::unitary));
        const bool ok = std::abs(d_id) < 1e-10 && std::abs(d_swap) < 1e-10;
        out.push_back({"entropy_production_trivial_cases", ok,
                       "id=" + format_float(d_id) + " swap=" + format_float(d_swap)});
    }

    return out;
}

}  // namespace schucomp
