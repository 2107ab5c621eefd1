#pragma once

#include <cmath>
#include <stdexcept>

#include "schucomp/coding.hpp"

namespace schucomp {

/// Nominally-ground-state qubit with excited population eta; the equivalent
/// inverse temperature follows 1 - eta = (1 + tanh(beta)) / 2 (hbar*omega = 1).
struct NoisyGroundQubit {
    double eta = 0;
    double beta_equiv = 0;

    static NoisyGroundQubit from_eta(double eta) {
        if (eta < 0 || eta > 1) throw std::invalid_argument("NoisyGroundQubit: eta outside [0,1]");
        // tanh(beta) = 1 - 2 eta; eta = 0 gives beta = +inf, eta > 1/2 a
        // population inversion with negative beta.
        return NoisyGroundQubit{eta, std::atanh(1.0 - 2.0 * eta)};
    }

    static NoisyGroundQubit from_beta(double beta) {
        return NoisyGroundQubit{0.5 * (1.0 - std::tanh(beta)), beta};
    }

    DensityMatrix density() const {
        Mat m = Mat::Zero(2, 2);
        m(0, 0) = 1.0 - eta;
        m(1, 1) = eta;
        return DensityMatrix(m);
    }
};

/// (1 - eta)^J.
inline double append_fidelity_closed(double eta, int J) {
    if (eta < 0 || eta > 1) throw std::invalid_argument("append_fidelity_closed: eta outside [0,1]");
    if (J < 0) throw std::invalid_argument("append_fidelity_closed: J must be >= 0");
    return std::pow(1.0 - eta, J);
}

/// (1/2^J)(1 + tanh(beta))^J with J = n - ceil(n S + eps); equals the
/// (1-eta)^J form under the eta <-> beta map.
inline double append_fidelity_beta(double beta, int n, double entropy_bits, double epsilon) {
    if (beta < 0) throw std::invalid_argument("append_fidelity_beta: beta must be >= 0");
    const int J = n - static_cast<int>(std::ceil(n * entropy_bits + epsilon));
    if (J < 0)
        throw std::invalid_argument("append_fidelity_beta: negative J (over-aggressive compression)");
    return std::pow(0.5 * (1.0 + std::tanh(beta)), J);
}

/// Full matrix pipeline: decode the compressed message with thermal appends
/// and take the fidelity with the original. For typical-subspace messages
/// this equals (1 - eta)^J exactly. Messages outside the typical subspace
/// are rejected unless `require_typical` is false (the value is still
/// well-defined, just outside the closed form's derivation).
inline double append_fidelity_simulated(const StateVector& message, const EncodingPlan& plan,
                                        double eta, bool require_typical = true) {
    if (message.dim() != (1 << plan.n))
        throw std::invalid_argument("append_fidelity_simulated: dimension mismatch");
    if (eta < 0 || eta > 1)
        throw std::invalid_argument("append_fidelity_simulated: eta outside [0,1]");

    const Vec rotated = plan.U.matrix() * message.amps();
    if (require_typical && plan.J > 0) {
        // the message must live in the last-J-bits-zero block
        const int block = 1 << plan.J;
        double outside = 0;
        for (int i = 0; i < message.dim(); ++i)
            if (i % block != 0) outside += std::norm(rotated(i));
        if (outside > numeric_config().atol)
            throw std::invalid_argument(
                "append_fidelity_simulated: message not in the typical subspace");
    }

    const DensityMatrix compressed = compress(message, plan);
    const NoisyGroundQubit q = NoisyGroundQubit::from_eta(eta);
    Mat app = Mat::Identity(1, 1);
    for (int j = 0; j < plan.J; ++j) app = kron(app, q.density().matrix());
    const Mat& u = plan.U.matrix();
    const Mat nu = u.adjoint() * kron(compressed.matrix(), app) * u;
    const cplx f = message.amps().dot(nu * message.amps());
    return f.real();
}

}  // namespace schucomp
