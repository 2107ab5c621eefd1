#pragma once

#include <complex>
#include <Eigen/Dense>

namespace schucomp {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Global numeric policy. All structural invariants (unitarity, hermiticity,
// trace normalisation, positivity) are checked against `atol`; probability
// sums against `prob_tol`.
struct NumericConfig {
    double atol = 1e-10;
    double prob_tol = 1e-12;
    int max_qubits = 12;
    long long enumeration_cap = 1LL << 20;
};

inline NumericConfig& numeric_config() {
    static NumericConfig cfg;
    return cfg;
}

// (A + A^dagger)/2, used after channel arithmetic to suppress roundoff drift.
inline Mat hermitize(const Mat& a) {
    return 0.5 * (a + a.adjoint());
}

inline bool is_power_of_two(long long v) {
    return v > 0 && (v & (v - 1)) == 0;
}

inline int log2_exact(long long v) {
    int k = 0;
    while ((1LL << k) < v) ++k;
    return k;
}

}  // namespace schucomp
