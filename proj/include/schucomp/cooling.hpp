#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "schucomp/linalg.hpp"

namespace schucomp {

// Closed-form relations for the swap-based cooling protocol that prepares
// near-ground qubits out of thermal ones. Entropies here are in nats.

/// L = ceil( (e+1)/(e kappa) * ln( (e+1)/(eta kappa) ) ).
inline long long steps_required(double kappa, double eta) {
    if (kappa <= 0 || eta <= 0 || eta >= 1)
        throw std::invalid_argument("steps_required: need kappa > 0 and eta in (0,1)");
    const double e = std::exp(1.0);
    const double v = (e + 1) / (e * kappa) * std::log((e + 1) / (eta * kappa));
    // guard the ceiling against round-off when v is an exact integer
    return static_cast<long long>(std::ceil(v - 1e-9));
}

/// eta = (e+1)/kappa * e^{-(e/(e+1)) L kappa}.
inline double eta_achieved(long long steps, double kappa) {
    if (steps < 1 || kappa <= 0)
        throw std::invalid_argument("eta_achieved: need L >= 1 and kappa > 0");
    const double e = std::exp(1.0);
    return (e + 1) / kappa * std::exp(-(e / (e + 1)) * steps * kappa);
}

/// Ground-population bound 1 - (1/Sigma) e^{-L Sigma}. May be negative for
/// tiny Sigma; returned verbatim (the bound is then vacuous).
inline double ground_pop_bound(long long steps, double sigma_prod) {
    if (sigma_prod <= 0) throw std::invalid_argument("ground_pop_bound: Sigma must be > 0");
    return 1.0 - std::exp(-static_cast<double>(steps) * sigma_prod) / sigma_prod;
}

/// g(L, Sigma) = sqrt(1 - x) - sqrt(x) with x = (1/Sigma) e^{-L Sigma}.
inline double g_function(long long steps, double sigma_prod) {
    if (sigma_prod <= 0) throw std::invalid_argument("g_function: Sigma must be > 0");
    const double x = std::exp(-static_cast<double>(steps) * sigma_prod) / sigma_prod;
    if (x < 0 || x > 1) throw std::invalid_argument("g_function: radicand outside [0,1]");
    return std::sqrt(1.0 - x) - std::sqrt(x);
}

struct FidelityCeilings {
    double append_ceiling = 0;   // (1 - (1/Sigma) e^{-L Sigma})^J
    double measure_ceiling = 0;  // (2^{2n} g^2 + 2^n) / (2^{2n} + 2^n)
};

inline FidelityCeilings fidelity_ceilings(int n, int J, long long steps, double sigma_prod) {
    if (J < 0) throw std::invalid_argument("fidelity_ceilings: J must be >= 0");
    const double g = g_function(steps, sigma_prod);
    const double base = ground_pop_bound(steps, sigma_prod);
    const double d = std::pow(2.0, n);
    return FidelityCeilings{std::pow(base, J), (d * d * g * g + d) / (d * d + d)};
}

/// Protocol length and entropy budget; eta_target is what the budget buys.
struct CoolingBudget {
    long long L = 0;
    double kappa = 0;
    double eta_target = 0;
    double sigma_prod = 0;  // achieved <Sigma>, <= kappa

    static CoolingBudget from_kappa_eta(double kappa, double eta) {
        const long long L = steps_required(kappa, eta);
        return CoolingBudget{L, kappa, eta, kappa};
    }
};

/// <Sigma> = I(S':E') + D(E'||E) in nats for the process
/// rho_SE -> U (rho_S (x) rho_E) U^dag. Returns +inf when the relative
/// entropy support condition fails.
inline double entropy_production_diagnostic(const DensityMatrix& sys_init,
                                            const DensityMatrix& env_init,
                                            const Operator& global_u) {
    const int ds = sys_init.dim();
    const int de = env_init.dim();
    if (global_u.kind() != OperatorKind::unitary)
        throw std::invalid_argument("entropy_production_diagnostic: unitary required");
    if (static_cast<long long>(ds) * de != global_u.dim())
        throw std::invalid_argument("entropy_production_diagnostic: dimension mismatch");

    const Mat joint0 = kron(sys_init.matrix(), env_init.matrix());
    const Mat joint = global_u.matrix() * joint0 * global_u.matrix().adjoint();
    const DensityMatrix joint_dm = DensityMatrix::from_channel_output(joint);
    const std::vector<int> dims{ds, de};
    const DensityMatrix sys_f = DensityMatrix::from_channel_output(
        partial_trace_raw(joint_dm.matrix(), {0}, dims));
    const DensityMatrix env_f = DensityMatrix::from_channel_output(
        partial_trace_raw(joint_dm.matrix(), {1}, dims));

    const double e_nat = std::exp(1.0);
    const double mutual = spectral_entropy(sys_f, e_nat) + spectral_entropy(env_f, e_nat) -
                          spectral_entropy(joint_dm, e_nat);

    // D(E'||E) = tr rho' (ln rho' - ln rho); +inf if supp(rho') !<= supp(rho)
    Eigen::SelfAdjointEigenSolver<Mat> esp(env_f.matrix());
    Eigen::SelfAdjointEigenSolver<Mat> es0(env_init.matrix());
    const double tol = 1e-12;
    Mat log0 = Mat::Zero(de, de);
    for (int i = 0; i < de; ++i) {
        const double lam = es0.eigenvalues()(i);
        if (lam > tol)
            log0 += std::log(lam) * (es0.eigenvectors().col(i) * es0.eigenvectors().col(i).adjoint());
    }
    double rel = -spectral_entropy(env_f, e_nat);
    for (int i = 0; i < de; ++i) {
        const double lam = esp.eigenvalues()(i);
        if (lam <= tol) continue;
        const Vec v = esp.eigenvectors().col(i);
        // support check: weight of v outside supp(env_init)
        double inside = 0;
        for (int j = 0; j < de; ++j)
            if (es0.eigenvalues()(j) > tol) inside += std::norm(es0.eigenvectors().col(j).dot(v));
        if (inside < 1.0 - 1e-9) return std::numeric_limits<double>::infinity();
        rel -= lam * v.dot(log0 * v).real();
    }
    return mutual + rel;
}

}  // namespace schucomp
