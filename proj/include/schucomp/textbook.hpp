#pragma once

#include <cmath>
#include <utility>

#include "schucomp/coding.hpp"

namespace schucomp {

// Worked three-qubit fixture: letters |0> and |+> drawn with probability 1/2
// each, compressed from three qubits to two. All reference numbers below are
// reproduced by the test suite from first principles.

inline QubitSource three_qubit_source() {
    Vec zero(2), plus(2);
    zero << 1.0, 0.0;
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return QubitSource::create({StateVector(std::move(zero)), StateVector(std::move(plus))},
                               {0.5, 0.5});
}

/// Open interval of epsilon values for which the n=3 typical set is exactly
/// {000, 001, 010, 100} over eigen-letters.
inline std::pair<double, double> three_qubit_epsilon_window() {
    const QubitSource src = three_qubit_source();
    const double s = src.entropy_bits;
    const double lo = std::abs(-std::log2(eigenstring_weight(src, 0b001, 3)) / 3 - s);
    const double hi = std::abs(-std::log2(eigenstring_weight(src, 0b011, 3)) / 3 - s);
    return {lo, hi};
}

/// Midpoint of the window; the fixture default.
inline double three_qubit_epsilon() {
    const auto [lo, hi] = three_qubit_epsilon_window();
    return 0.5 * (lo + hi);
}

inline TypicalSpec three_qubit_typical_spec(double epsilon = three_qubit_epsilon()) {
    return build_typical_spec(three_qubit_source(), 3, epsilon);
}

/// Two-qubit compression plan with the deterministic default assignment.
inline EncodingPlan three_qubit_plan() {
    return build_encoding_plan(three_qubit_source(), three_qubit_typical_spec(), 2);
}

/// Bit-reversal assignment, eigen-string s -> comp string reverse(s). The
/// reference matrix below realises exactly this assignment (it differs from
/// the block-structured default).
inline std::vector<std::uint32_t> three_qubit_reversal_assignment() {
    std::vector<std::uint32_t> map(8);
    for (std::uint32_t s = 0; s < 8; ++s)
        map[s] = ((s & 1u) << 2) | (s & 2u) | ((s >> 2) & 1u);
    return map;
}

inline EncodingPlan three_qubit_reference_plan() {
    return build_encoding_plan(three_qubit_source(), three_qubit_typical_spec(), 2,
                               three_qubit_reversal_assignment());
}

/// Reference 8x8 encoding matrix in terms of c = cos(pi/8), s = sin(pi/8).
inline Mat three_qubit_reference_matrix() {
    const double c = std::cos(M_PI / 8), s = std::sin(M_PI / 8);
    const double c3 = c * c * c, s3 = s * s * s, sc2 = s * c * c, s2c = s * s * c;
    Mat u(8, 8);
    u.row(0) << c3, sc2, sc2, s2c, sc2, s2c, s2c, s3;
    u.row(1) << sc2, s2c, s2c, s3, -c3, -sc2, -sc2, -s2c;
    u.row(2) << sc2, s2c, -c3, -sc2, s2c, s3, -sc2, -s2c;
    u.row(3) << s2c, s3, -sc2, -s2c, -sc2, -s2c, c3, sc2;
    u.row(4) << sc2, -c3, s2c, -sc2, s2c, -sc2, s3, -s2c;
    u.row(5) << s2c, -sc2, s3, -s2c, -sc2, c3, -s2c, sc2;
    u.row(6) << s2c, -sc2, -sc2, c3, s3, -s2c, -s2c, sc2;
    u.row(7) << s3, -s2c, -s2c, sc2, -s2c, sc2, sc2, -c3;
    return u;
}

/// Ensemble-average |<G|psi>|^2 over the eight product messages.
inline double three_qubit_guess_overlap_avg() {
    const QubitSource src = three_qubit_source();
    const StateVector g = guess_state(src, 3);
    return ensemble_average(enumerate_messages(src, 3),
                            [&](const StateVector& psi) { return std::norm(g.amps().dot(psi.amps())); });
}

inline double three_qubit_ideal_fidelity_avg() {
    const QubitSource src = three_qubit_source();
    const TypicalSpec spec = three_qubit_typical_spec();
    const StateVector g = guess_state(src, 3);
    return ensemble_average(enumerate_messages(src, 3), [&](const StateVector& psi) {
        return protocol_fidelity_ideal(psi, spec, g);
    });
}

}  // namespace schucomp
