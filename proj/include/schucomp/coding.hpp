#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "schucomp/source.hpp"

namespace schucomp {

/// Encoding plan: a bijection from eigen-strings to computational-basis
/// strings realised as the unitary U = sum_k |c_k><e_k|, with typical
/// strings mapped into the block whose last J bits are zero so the trailing
/// J qubits can be discarded.
struct EncodingPlan {
    int n = 0;  // message qubits
    int m = 0;  // kept qubits
    int J = 0;  // discarded / appended qubits
    std::vector<std::uint32_t> basis_map;  // basis_map[eigen-string] = comp string
    Operator U;
    QubitSource source;
};

/// Deterministic default assignment: typical eigen-strings sorted by
/// descending eigenvalue (ties lexicographic) take the last-J-bits-zero
/// computational strings in lexicographic order; atypical strings fill the
/// remainder lexicographically.
inline std::vector<std::uint32_t> default_basis_assignment(const QubitSource& src,
                                                           const TypicalSpec& spec, int m) {
    const int n = spec.n;
    const std::uint32_t dim = 1u << n;
    const int J = n - m;

    std::vector<std::uint32_t> typ = spec.typical_strings;
    std::stable_sort(typ.begin(), typ.end(), [&](std::uint32_t a, std::uint32_t b) {
        const double la = eigenstring_weight(src, a, n), lb = eigenstring_weight(src, b, n);
        if (la != lb) return la > lb;
        return a < b;
    });

    std::vector<bool> is_typical(dim, false);
    for (auto s : typ) is_typical[s] = true;

    std::vector<std::uint32_t> map(dim, 0);
    std::vector<bool> used(dim, false);
    const std::uint32_t low_mask = (J == 0) ? 0u : ((1u << J) - 1u);
    std::uint32_t next_prefix = 0;
    for (auto s : typ) {
        const std::uint32_t c = next_prefix++ << J;
        (void)low_mask;
        map[s] = c;
        used[c] = true;
    }
    std::uint32_t next_free = 0;
    for (std::uint32_t s = 0; s < dim; ++s) {
        if (is_typical[s]) continue;
        while (used[next_free]) ++next_free;
        map[s] = next_free;
        used[next_free] = true;
    }
    return map;
}

/// Build the encoding unitary for an explicit or default assignment.
/// `kept_qubits` defaults to ceil(n*S + eps) clamped to [ceil(log2 |T|), n];
/// the worked three-qubit example overrides it to 2.
inline EncodingPlan build_encoding_plan(const QubitSource& src, const TypicalSpec& spec,
                                        std::optional<int> kept_qubits = std::nullopt,
                                        std::optional<std::vector<std::uint32_t>> assignment =
                                            std::nullopt) {
    const int n = spec.n;
    const std::uint32_t dim = 1u << n;

    int min_m = 0;
    while ((1u << min_m) < spec.typical_strings.size()) ++min_m;
    int m;
    if (kept_qubits) {
        m = *kept_qubits;
    } else {
        m = static_cast<int>(std::ceil(n * src.entropy_bits + spec.epsilon));
        m = std::clamp(m, min_m, n);
    }
    if (m < 0 || m > n) throw std::invalid_argument("build_encoding_plan: bad kept_qubits");
    if (spec.typical_strings.size() > (1ull << m))
        throw std::invalid_argument("build_encoding_plan: typical set exceeds 2^m capacity");

    std::vector<std::uint32_t> map =
        assignment ? std::move(*assignment) : default_basis_assignment(src, spec, m);
    if (map.size() != dim) throw std::invalid_argument("build_encoding_plan: bad assignment size");
    std::vector<bool> seen(dim, false);
    for (auto c : map) {
        if (c >= dim || seen[c])
            throw std::invalid_argument("build_encoding_plan: assignment not a bijection");
        seen[c] = true;
    }

    Mat u = Mat::Zero(dim, dim);
    for (std::uint32_t s = 0; s < dim; ++s)
        u.row(map[s]) += eigenstring_ket(src, s, n).amps().adjoint();
    return EncodingPlan{n, m, n - m, std::move(map),
                        Operator(u, OperatorKind::unitary), src};
}

/// m-qubit reduced state of U|psi>: the trailing J qubits are traced out.
inline DensityMatrix compress(const StateVector& message, const EncodingPlan& plan) {
    if (message.dim() != (1 << plan.n))
        throw std::invalid_argument("compress: dimension mismatch");
    const Vec rotated = plan.U.matrix() * message.amps();
    if (plan.J == 0) return DensityMatrix(rotated * rotated.adjoint());
    const Mat full = rotated * rotated.adjoint();
    std::vector<int> dims{1 << plan.m, 1 << plan.J};
    return DensityMatrix::from_channel_output(partial_trace_raw(full, {0}, dims));
}

/// U^dagger (compressed tensor append) U.
inline DensityMatrix decode(const DensityMatrix& compressed, const DensityMatrix& append,
                            const EncodingPlan& plan) {
    if (static_cast<long long>(compressed.dim()) * append.dim() != (1LL << plan.n))
        throw std::invalid_argument("decode: dimension mismatch");
    const Mat joint = kron(compressed.matrix(), append.matrix());
    const Mat& u = plan.U.matrix();
    return DensityMatrix::from_channel_output(u.adjoint() * joint * u);
}

/// Highest-weight eigenket |0'>^n (lowest-index eigenket on a tie).
inline StateVector guess_state(const QubitSource& src, int n) {
    return eigenstring_ket(src, 0, n);
}

/// rho_R = Lam |psi><psi| Lam + <psi|(1-Lam)|psi> |G><G|.
inline DensityMatrix received_ensemble_ideal(const StateVector& message, const TypicalSpec& spec,
                                             const StateVector& guess) {
    const Mat& lam = spec.projector.matrix();
    const Vec lpsi = lam * message.amps();
    const double atypical = 1.0 - lpsi.squaredNorm();
    Mat rho = lpsi * lpsi.adjoint() + atypical * (guess.amps() * guess.amps().adjoint());
    return DensityMatrix::from_channel_output(rho);
}

/// |<psi|Lam|psi>|^2 + <psi|(1-Lam)|psi> |<G|psi>|^2.
inline double protocol_fidelity_ideal(const StateVector& message, const TypicalSpec& spec,
                                      const StateVector& guess) {
    const Mat& lam = spec.projector.matrix();
    const double typ = message.amps().dot(lam * message.amps()).real();
    const double overlap = std::norm(guess.amps().dot(message.amps()));
    return typ * typ + (1.0 - typ) * overlap;
}

/// Probability-weighted average of a per-message fidelity functional.
template <typename F>
double ensemble_average(const MessageEnsemble& ens, F&& fidelity) {
    double acc = 0;
    for (const auto& [msg, p] : ens.messages) acc += p * fidelity(msg);
    return acc;
}

}  // namespace schucomp
