#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "schucomp/coding.hpp"

namespace schucomp {

/// Thermal measurement probe: d-level Gibbs state, energies ascending.
/// c_max is the lower-half population sum, the probe's correlation figure.
struct ThermalProbe {
    int d = 0;
    double beta = 0;
    std::vector<double> energies;
    std::vector<double> populations;
    double c_max = 0;

    static ThermalProbe create(std::vector<double> energies, double beta) {
        const int d = static_cast<int>(energies.size());
        if (d < 2 || d % 2 != 0)
            throw std::invalid_argument("ThermalProbe: dimension must be even and >= 2");
        if (beta < 0) throw std::invalid_argument("ThermalProbe: beta must be >= 0");
        for (int i = 1; i < d; ++i)
            if (energies[i] < energies[i - 1])
                throw std::invalid_argument("ThermalProbe: energies must be ascending");
        // populations relative to the ground level to avoid overflow at large beta
        std::vector<double> pop(d);
        double z = 0;
        for (int i = 0; i < d; ++i) {
            pop[i] = std::exp(-beta * (energies[i] - energies[0]));
            z += pop[i];
        }
        double cmax = 0;
        for (int i = 0; i < d; ++i) {
            pop[i] /= z;
            if (i < d / 2) cmax += pop[i];
        }
        return ThermalProbe{d, beta, std::move(energies), std::move(pop), cmax};
    }

    /// Qubit probe of H = -sigma_z (hbar*omega = 1): energies {-1, +1}.
    static ThermalProbe qubit(double beta) { return create({-1.0, 1.0}, beta); }

    /// Equally spaced qudit spectrum E_i = i.
    static ThermalProbe qudit(int d, double beta) {
        std::vector<double> e(d);
        for (int i = 0; i < d; ++i) e[i] = static_cast<double>(i);
        return create(std::move(e), beta);
    }
};

/// Diagonal Gibbs state e^{-beta H}/Z for H = diag(energies).
inline DensityMatrix thermal_state(const std::vector<double>& energies, double beta) {
    if (beta < 0) throw std::invalid_argument("thermal_state: beta must be >= 0");
    const int d = static_cast<int>(energies.size());
    if (d < 1) throw std::invalid_argument("thermal_state: empty spectrum");
    const double e0 = *std::min_element(energies.begin(), energies.end());
    Mat m = Mat::Zero(d, d);
    double z = 0;
    for (int i = 0; i < d; ++i) {
        const double w = std::exp(-beta * (energies[i] - e0));
        m(i, i) = w;
        z += w;
    }
    return DensityMatrix(m / z);
}

/// V_d = Lam (x) 1_d + (1 - Lam) (x) X_half, where X_half swaps the lower
/// and upper halves of the probe spectrum (|i> <-> |i + d/2>). Reduces to
/// Lam (x) 1 + (1-Lam) (x) sigma_x for d = 2, and is an involution.
inline Operator dilated_measurement_unitary(const TypicalSpec& spec, int d) {
    if (d < 2 || !is_power_of_two(d))
        throw std::invalid_argument("dilated_measurement_unitary: d must be a power of 2, >= 2");
    const int dim = spec.projector.dim();
    Mat xhalf = Mat::Zero(d, d);
    for (int i = 0; i < d / 2; ++i) {
        xhalf(i, i + d / 2) = 1.0;
        xhalf(i + d / 2, i) = 1.0;
    }
    const Mat& lam = spec.projector.matrix();
    const Mat lperp = Mat::Identity(dim, dim) - lam;
    Mat v = kron(lam, Mat::Identity(d, d)) + kron(lperp, xhalf);
    return Operator(v, OperatorKind::unitary);
}

/// Conditional post-measurement states and outcome probabilities for a
/// typical measurement read out through a thermal probe.
struct MeasurementOutcome {
    DensityMatrix typical_state;
    DensityMatrix atypical_state;
    double p_typical = 0;
    double p_atypical = 0;
};

inline MeasurementOutcome imperfect_typical_measurement(const DensityMatrix& message,
                                                        const TypicalSpec& spec,
                                                        const ThermalProbe& probe) {
    if (message.dim() != spec.projector.dim())
        throw std::invalid_argument("imperfect_typical_measurement: dimension mismatch");
    const Mat& lam = spec.projector.matrix();
    const Mat lperp = Mat::Identity(message.dim(), message.dim()) - lam;
    const Mat rl = lam * message.matrix() * lam;
    const Mat rp = lperp * message.matrix() * lperp;
    const double wl = rl.trace().real();
    const double wp = rp.trace().real();
    const double c = probe.c_max;

    const double p0 = c * wl + (1 - c) * wp;
    const double p1 = (1 - c) * wl + c * wp;
    Mat cond0 = c * rl + (1 - c) * rp;
    Mat cond1 = (1 - c) * rl + c * rp;
    if (p0 > 0) cond0 /= p0;
    if (p1 > 0) cond1 /= p1;
    // a zero-probability branch gets a placeholder maximally mixed state
    const Mat mm = Mat::Identity(message.dim(), message.dim()) / message.dim();
    return MeasurementOutcome{
        DensityMatrix::from_channel_output(p0 > 0 ? cond0 : mm),
        DensityMatrix::from_channel_output(p1 > 0 ? cond1 : mm), p0, p1};
}

/// The ensemble Bob receives under a thermal probe with correlation c_max:
/// c Lam psi Lam + (1-c) Lam_perp psi Lam_perp
///   + [c <Lam_perp> + (1-c) <Lam>] |G><G|.
inline DensityMatrix received_ensemble_thermal(const StateVector& message,
                                               const TypicalSpec& spec, double c_max,
                                               const StateVector& guess) {
    const Mat& lam = spec.projector.matrix();
    const Vec lpsi = lam * message.amps();
    const Vec ppsi = message.amps() - lpsi;
    const double wl = lpsi.squaredNorm();
    const double wp = ppsi.squaredNorm();
    Mat rho = c_max * (lpsi * lpsi.adjoint()) + (1 - c_max) * (ppsi * ppsi.adjoint()) +
              (c_max * wp + (1 - c_max) * wl) * (guess.amps() * guess.amps().adjoint());
    return DensityMatrix::from_channel_output(rho);
}

inline DensityMatrix received_ensemble_thermal(const StateVector& message,
                                               const TypicalSpec& spec,
                                               const ThermalProbe& probe,
                                               const StateVector& guess) {
    return received_ensemble_thermal(message, spec, probe.c_max, guess);
}

/// C_Max (1 - 2 delta) + (1 - C_Max) delta^2.
inline double probe_fidelity_bound(double c_max, double delta) {
    if (c_max < 0.5 || c_max > 1.0)
        throw std::invalid_argument("probe_fidelity_bound: c_max outside [1/2, 1]");
    if (delta < 0 || delta > 1) throw std::invalid_argument("probe_fidelity_bound: delta outside [0,1]");
    return c_max * (1 - 2 * delta) + (1 - c_max) * delta * delta;
}

/// Pre-drop version keeping the guess-state term.
inline double probe_fidelity_bound_tight(double c_max, double delta, double guess_overlap_avg) {
    if (guess_overlap_avg < 0 || guess_overlap_avg > 1)
        throw std::invalid_argument("probe_fidelity_bound_tight: overlap outside [0,1]");
    return probe_fidelity_bound(c_max, delta) +
           ((1 - c_max) * (1 - delta) + c_max * delta) * guess_overlap_avg;
}

/// Kraus weight of the probe noise channel, K = (sqrt(C) - sqrt(1-C)) 1.
inline double noise_kraus_scale(double c_max) {
    return std::sqrt(c_max) - std::sqrt(1 - c_max);
}

/// Haar-average fidelity reported for the noise channel alone:
/// (2^{2n} (sqrt(C) - sqrt(1-C))^2 + 2^n) / (2^{2n} + 2^n).
inline double haar_average_fidelity_analytic(int n, double c_max) {
    if (c_max < 0.5 || c_max > 1.0)
        throw std::invalid_argument("haar_average_fidelity_analytic: c_max outside [1/2, 1]");
    const double d = std::pow(2.0, n);
    const double k2 = std::pow(noise_kraus_scale(c_max), 2);
    return (d * d * k2 + d) / (d * d + d);
}

/// Exact Haar average of <psi| N(T(|psi><psi|)) |psi> for the instrument with
/// Kraus {Lam, Lam_perp} followed by K = k 1. Equals the trace formula
/// (sum_i |tr K_i|^2 + sum_i tr K_i^dag K_i) / (d^2 + d) with K_1 = k Lam,
/// K_2 = k Lam_perp.
inline double instrument_average_fidelity_analytic(int dim, double tr_lambda, double c_max) {
    const double d = dim;
    const double t = tr_lambda;
    const double k2 = std::pow(noise_kraus_scale(c_max), 2);
    return k2 * (t * t + (d - t) * (d - t) + d) / (d * d + d);
}

/// Haar-random pure state: complex Gaussian vector, normalised.
inline StateVector haar_random_state(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cplx(normal(rng), normal(rng));
    return StateVector(std::move(v));
}

struct McEstimate {
    double mean = 0;
    double std_err = 0;
};

/// Monte Carlo estimate of the Haar-average fidelity of the noisy-measured
/// state with the input, via the full matrix pipeline.
inline McEstimate haar_average_fidelity_mc(const Operator& projector, double c_max,
                                           int samples, std::uint64_t seed) {
    if (samples < 100) throw std::invalid_argument("haar_average_fidelity_mc: samples < 100");
    if (projector.kind() != OperatorKind::projector)
        throw std::invalid_argument("haar_average_fidelity_mc: projector required");
    const int dim = projector.dim();
    const Mat& lam = projector.matrix();
    const Mat lperp = Mat::Identity(dim, dim) - lam;
    const double k = noise_kraus_scale(c_max);
    std::mt19937_64 rng(seed);
    double sum = 0, sumsq = 0;
    for (int i = 0; i < samples; ++i) {
        const StateVector psi = haar_random_state(dim, rng);
        const Mat rho = psi.amps() * psi.amps().adjoint();
        const Mat measured = lam * rho * lam + lperp * rho * lperp;
        const Mat noisy = (k * k) * measured;  // K rho K^dag with K = k 1
        const double f = psi.amps().dot(noisy * psi.amps()).real();
        sum += f;
        sumsq += f * f;
    }
    const double mean = sum / samples;
    const double var = std::max(0.0, sumsq / samples - mean * mean);
    return McEstimate{mean, std::sqrt(var / samples)};
}

struct GentleBound {
    double lhs = 0;
    double rhs = 0;
};

/// Trace-norm distance between |psi><psi| and the noisy-measured state
/// c Lam psi Lam + (1-c) Lam_perp psi Lam_perp, and the bound
/// 2 sqrt(delta_psi) + (1 - c_max) with delta_psi = <psi|Lam_perp|psi>.
inline GentleBound gentle_bound_check(const StateVector& message, const TypicalSpec& spec,
                                      double c_max) {
    const Mat& lam = spec.projector.matrix();
    const Vec lpsi = lam * message.amps();
    const Vec ppsi = message.amps() - lpsi;
    const double delta_psi = ppsi.squaredNorm();
    const Mat measured =
        c_max * (lpsi * lpsi.adjoint()) + (1 - c_max) * (ppsi * ppsi.adjoint());
    const Mat diff = message.amps() * message.amps().adjoint() - measured;
    return GentleBound{trace_norm_hermitian(diff), 2 * std::sqrt(delta_psi) + (1 - c_max)};
}

}  // namespace schucomp
