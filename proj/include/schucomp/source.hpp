#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "schucomp/linalg.hpp"

namespace schucomp {

/// i.i.d. qubit source: pure-state letters with sampling probabilities, plus
/// the cached spectral decomposition of the per-sample density.
struct QubitSource {
    std::vector<StateVector> letters;
    std::vector<double> probs;
    double gamma0 = 0, gamma1 = 0;  // eigenvalues, gamma0 >= gamma1
    StateVector eigket0, eigket1;   // |0'>, |1'>
    double entropy_bits = 0;        // S(rho_chi)

    static QubitSource create(std::vector<StateVector> letters, std::vector<double> probs);
};

inline DensityMatrix source_density(const QubitSource& src) {
    Mat rho = Mat::Zero(2, 2);
    for (size_t i = 0; i < src.letters.size(); ++i)
        rho += src.probs[i] * (src.letters[i].amps() * src.letters[i].amps().adjoint());
    return DensityMatrix::from_channel_output(rho);
}

/// von Neumann entropy in bits.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    return spectral_entropy(rho, 2.0);
}

inline QubitSource QubitSource::create(std::vector<StateVector> letters,
                                       std::vector<double> probs) {
    if (letters.empty() || letters.size() != probs.size())
        throw std::invalid_argument("QubitSource: letters/probs size mismatch");
    for (const auto& l : letters)
        if (l.dim() != 2) throw std::invalid_argument("QubitSource: letters must be qubits");
    double psum = 0;
    for (double p : probs) {
        if (p < 0) throw std::invalid_argument("QubitSource: negative probability");
        psum += p;
    }
    if (std::abs(psum - 1.0) > numeric_config().prob_tol)
        throw std::invalid_argument("QubitSource: probabilities must sum to 1");

    QubitSource src{std::move(letters), std::move(probs),
                    0, 0, StateVector::basis(2, 0), StateVector::basis(2, 1), 0};
    const DensityMatrix rho = source_density(src);
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix());
    // Fix the eigenvector phase so the first non-negligible component is
    // real positive; downstream basis constructions depend on it.
    auto canonical = [](Vec v) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (std::abs(v(i)) > 1e-12) {
                v *= std::conj(v(i)) / std::abs(v(i));
                break;
            }
        }
        return v;
    };
    // SelfAdjointEigenSolver sorts ascending; gamma0 is the larger eigenvalue.
    src.gamma0 = es.eigenvalues()(1);
    src.gamma1 = es.eigenvalues()(0);
    src.eigket0 = StateVector(canonical(es.eigenvectors().col(1)));
    src.eigket1 = StateVector(canonical(es.eigenvectors().col(0)));
    src.entropy_bits = von_neumann_entropy(rho);
    return src;
}

/// Eigenvalue of the length-n eigen-string s (bit k selects gamma0/gamma1).
inline double eigenstring_weight(const QubitSource& src, std::uint32_t s, int n) {
    double lam = 1.0;
    for (int k = 0; k < n; ++k)
        lam *= ((s >> (n - 1 - k)) & 1u) ? src.gamma1 : src.gamma0;
    return lam;
}

/// Product eigenket |s'> with bit 0 of the string the leftmost tensor factor.
inline StateVector eigenstring_ket(const QubitSource& src, std::uint32_t s, int n) {
    Vec v(1);
    v(0) = 1.0;
    for (int k = 0; k < n; ++k) {
        const StateVector& letter = ((s >> (n - 1 - k)) & 1u) ? src.eigket1 : src.eigket0;
        v = kron(v, letter.amps());
    }
    return StateVector(std::move(v));
}

struct MessageEnsemble {
    int n = 0;
    std::vector<std::pair<StateVector, double>> messages;
};

/// All l^n product messages with their product probabilities.
inline MessageEnsemble enumerate_messages(const QubitSource& src, int n) {
    const long long l = static_cast<long long>(src.letters.size());
    long long count = 1;
    for (int k = 0; k < n; ++k) {
        count *= l;
        if (count > numeric_config().enumeration_cap)
            throw std::invalid_argument("enumerate_messages: enumeration cap exceeded");
    }
    MessageEnsemble ens{n, {}};
    ens.messages.reserve(count);
    std::vector<int> idx(n, 0);
    for (long long c = 0; c < count; ++c) {
        Vec v(1);
        v(0) = 1.0;
        double p = 1.0;
        for (int k = 0; k < n; ++k) {
            v = kron(v, src.letters[idx[k]].amps());
            p *= src.probs[idx[k]];
        }
        ens.messages.emplace_back(StateVector(std::move(v)), p);
        for (int k = n - 1; k >= 0; --k) {
            if (++idx[k] < l) break;
            idx[k] = 0;
        }
    }
    return ens;
}

/// The eps-typical set over eigen-letters, its projector and weight deficit.
struct TypicalSpec {
    int n = 0;
    double epsilon = 0;
    std::vector<std::uint32_t> typical_strings;  // sorted ascending
    Operator projector;
    double delta = 0;
};

/// Per-string typicality: |-(1/n) log2 lambda(s) - S(rho_chi)| <= eps.
/// Membership depends only on lambda(s), so degenerate strings are included
/// or excluded together.
inline TypicalSpec build_typical_spec(const QubitSource& src, int n, double epsilon) {
    if (epsilon <= 0) throw std::invalid_argument("build_typical_spec: epsilon must be > 0");
    if (n < 1 || n > numeric_config().max_qubits)
        throw std::invalid_argument("build_typical_spec: n out of range");
    const int dim = 1 << n;
    const double s_bits = src.entropy_bits;

    std::vector<std::uint32_t> typical;
    for (std::uint32_t str = 0; str < static_cast<std::uint32_t>(dim); ++str) {
        const double lam = eigenstring_weight(src, str, n);
        const double dist = std::abs(-std::log2(lam) / n - s_bits);
        if (dist <= epsilon) typical.push_back(str);
    }
    if (typical.empty())
        throw std::invalid_argument("build_typical_spec: epsilon yields an empty typical set");

    Mat basis(dim, typical.size());
    double weight = 0;
    for (size_t i = 0; i < typical.size(); ++i) {
        basis.col(i) = eigenstring_ket(src, typical[i], n).amps();
        weight += eigenstring_weight(src, typical[i], n);
    }
    Mat proj = basis * basis.adjoint();
    return TypicalSpec{n, epsilon, std::move(typical),
                       Operator(hermitize(proj), OperatorKind::projector), 1.0 - weight};
}

/// rho_chi^{tensor n}.
inline DensityMatrix source_density_power(const QubitSource& src, int n) {
    Mat rho = source_density(src).matrix();
    Mat out = rho;
    for (int k = 1; k < n; ++k) out = kron(out, rho);
    return DensityMatrix::from_channel_output(out);
}

}  // namespace schucomp
