#pragma once

#include <cmath>
#include <stdexcept>

#include "schucomp/coding.hpp"

namespace schucomp {

/// Gaussian tick distribution of the encode/decode clocks.
struct ClockSpec {
    double tau = 1.0;    // mean tick duration
    double sigma = 0.0;  // tick standard deviation; sigma^2 enters the kernel

    ClockSpec(double tau_, double sigma_) : tau(tau_), sigma(sigma_) {
        if (sigma < 0) throw std::invalid_argument("ClockSpec: sigma must be >= 0");
    }
};

/// Hamiltonian generating the encode/decode unitaries, with cached
/// eigendecomposition.
struct GeneratorSpec {
    Operator H;
    Eigen::VectorXd energies;
    Mat eigenbasis;  // columns are eigenkets

    static GeneratorSpec from_hamiltonian(const Operator& h) {
        if (h.kind() != OperatorKind::hermitian && h.kind() != OperatorKind::projector)
            throw std::invalid_argument("GeneratorSpec: Hamiltonian must be Hermitian");
        Eigen::SelfAdjointEigenSolver<Mat> es(h.matrix());
        return GeneratorSpec{h, es.eigenvalues(), es.eigenvectors()};
    }

    /// Default generator tied to the encoding unitary: H = log(U)/tau.
    static GeneratorSpec from_plan(const EncodingPlan& plan, double tau = 1.0) {
        const Operator h = matrix_log_principal(plan.U);
        return from_hamiltonian(Operator(h.matrix() / tau, OperatorKind::hermitian));
    }
};

/// In the generator eigenbasis, each coherence (j,k) is multiplied by
/// e^{-sigma^2 (E_k - E_j)^2}; populations are untouched. This is the net
/// effect of two independently Gaussian-timed encode/decode stages.
inline DensityMatrix double_dephase(const DensityMatrix& rho, const GeneratorSpec& gen,
                                    const ClockSpec& clock) {
    if (rho.dim() != gen.H.dim())
        throw std::invalid_argument("double_dephase: dimension mismatch");
    const Mat& q = gen.eigenbasis;
    Mat r = q.adjoint() * rho.matrix() * q;
    const int d = rho.dim();
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            const double gap = gen.energies(k) - gen.energies(j);
            r(j, k) *= std::exp(-clock.sigma * clock.sigma * gap * gap);
        }
    return DensityMatrix::from_channel_output(q * r * q.adjoint());
}

/// Typical-branch clock-limited fidelity, evaluated as the explicit double
/// sum over generator eigenstates:
///   sum_{j,k} e^{-sigma^2 (E_k-E_j)^2} <k|psi><psi|j><psi|Lam|k><j|Lam|psi>.
inline double clock_limited_fidelity(const StateVector& message, const TypicalSpec& spec,
                                     const GeneratorSpec& gen, const ClockSpec& clock) {
    if (message.dim() != spec.projector.dim() || message.dim() != gen.H.dim())
        throw std::invalid_argument("clock_limited_fidelity: dimension mismatch");
    const Mat& q = gen.eigenbasis;
    const Vec a = q.adjoint() * message.amps();                          // <j|psi>
    const Vec b = q.adjoint() * (spec.projector.matrix() * message.amps());  // <j|Lam|psi>
    const int d = message.dim();
    cplx acc = 0;
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            const double gap = gen.energies(k) - gen.energies(j);
            const double kernel = std::exp(-clock.sigma * clock.sigma * gap * gap);
            // <k|psi><psi|j> <psi|Lam|k> <j|Lam|psi>
            acc += kernel * a(k) * std::conj(a(j)) * std::conj(b(k)) * b(j);
        }
    if (std::abs(acc.imag()) > numeric_config().atol)
        throw std::runtime_error("clock_limited_fidelity: imaginary residue");
    return acc.real();
}

/// Combined thermal-probe + clock fidelity: the dephased compression branches
/// weighted by c_max plus the (dephasing-free) guess-state term.
inline double clock_limited_fidelity_full(const StateVector& message, const TypicalSpec& spec,
                                          const GeneratorSpec& gen, const ClockSpec& clock,
                                          double c_max, const StateVector& guess) {
    if (c_max < 0.5 || c_max > 1.0)
        throw std::invalid_argument("clock_limited_fidelity_full: c_max outside [1/2, 1]");
    const int d = message.dim();
    const Mat& lam = spec.projector.matrix();
    const Vec lpsi = lam * message.amps();
    const Vec ppsi = message.amps() - lpsi;
    const double wl = lpsi.squaredNorm();
    const double wp = ppsi.squaredNorm();

    const Mat& q = gen.eigenbasis;
    const Vec a = q.adjoint() * message.amps();
    const Vec bl = q.adjoint() * lpsi;
    const Vec bp = q.adjoint() * ppsi;
    cplx acc = 0;
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            const double gap = gen.energies(k) - gen.energies(j);
            const double kernel = std::exp(-clock.sigma * clock.sigma * gap * gap);
            const cplx branches = c_max * std::conj(bl(k)) * bl(j) +
                                  (1 - c_max) * std::conj(bp(k)) * bp(j);
            acc += kernel * a(k) * std::conj(a(j)) * branches;
        }
    const double overlap = std::norm(guess.amps().dot(message.amps()));
    const double guess_term = (c_max * wp + (1 - c_max) * wl) * overlap;
    if (std::abs(acc.imag()) > numeric_config().atol)
        throw std::runtime_error("clock_limited_fidelity_full: imaginary residue");
    return acc.real() + guess_term;
}

}  // namespace schucomp
