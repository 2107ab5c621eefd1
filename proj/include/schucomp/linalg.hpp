#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "schucomp/numeric.hpp"

namespace schucomp {

// ---------------------------------------------------------------------------
// Domain value types. Immutable after construction; constructors validate.
// ---------------------------------------------------------------------------

/// Pure state on a 2^k-dimensional space. Normalised on construction.
class StateVector {
  public:
    explicit StateVector(Vec amps) : amps_(std::move(amps)) {
        if (amps_.size() < 1 || !is_power_of_two(amps_.size()))
            throw std::invalid_argument("StateVector: dim must be a positive power of 2");
        const double nrm = amps_.norm();
        if (nrm < numeric_config().atol)
            throw std::invalid_argument("StateVector: zero vector");
        amps_ /= nrm;
    }

    static StateVector basis(int dim, int index) {
        Vec v = Vec::Zero(dim);
        v(index) = 1.0;
        return StateVector(std::move(v));
    }

    int dim() const { return static_cast<int>(amps_.size()); }
    const Vec& amps() const { return amps_; }

  private:
    Vec amps_;
};

/// Hermitian, PSD, trace-one matrix.
class DensityMatrix {
  public:
    explicit DensityMatrix(Mat entries) : m_(std::move(entries)) {
        const double tol = numeric_config().atol;
        if (m_.rows() != m_.cols() || m_.rows() < 1)
            throw std::invalid_argument("DensityMatrix: not square");
        if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol)
            throw std::invalid_argument("DensityMatrix: not Hermitian");
        if (std::abs(m_.trace().real() - 1.0) > tol || std::abs(m_.trace().imag()) > tol)
            throw std::invalid_argument("DensityMatrix: trace != 1");
        Eigen::SelfAdjointEigenSolver<Mat> es(m_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol)
            throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    }

    /// Hermitizes first; for matrices produced by channel arithmetic.
    static DensityMatrix from_channel_output(const Mat& m) {
        return DensityMatrix(hermitize(m));
    }

    static DensityMatrix pure(const StateVector& psi) {
        return DensityMatrix(psi.amps() * psi.amps().adjoint());
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Mat& matrix() const { return m_; }

  private:
    Mat m_;
};

enum class OperatorKind { unitary, projector, hermitian, general };

class Operator {
  public:
    Operator(Mat entries, OperatorKind kind) : m_(std::move(entries)), kind_(kind) {
        const double tol = numeric_config().atol;
        if (m_.rows() != m_.cols() || m_.rows() < 1)
            throw std::invalid_argument("Operator: not square");
        const Mat id = Mat::Identity(m_.rows(), m_.cols());
        switch (kind_) {
            case OperatorKind::unitary:
                if ((m_.adjoint() * m_ - id).cwiseAbs().maxCoeff() > tol)
                    throw std::invalid_argument("Operator: not unitary");
                break;
            case OperatorKind::projector:
                if ((m_ * m_ - m_).cwiseAbs().maxCoeff() > tol ||
                    (m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol)
                    throw std::invalid_argument("Operator: not a projector");
                break;
            case OperatorKind::hermitian:
                if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol)
                    throw std::invalid_argument("Operator: not Hermitian");
                break;
            case OperatorKind::general:
                break;
        }
    }

    static Operator identity(int dim) {
        return Operator(Mat::Identity(dim, dim), OperatorKind::unitary);
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Mat& matrix() const { return m_; }
    OperatorKind kind() const { return kind_; }

  private:
    Mat m_;
    OperatorKind kind_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Vec kron(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

inline StateVector tensor(const StateVector& a, const StateVector& b) {
    return StateVector(kron(a.amps(), b.amps()));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(kron(a.matrix(), b.matrix()));
}

inline Operator tensor(const Operator& a, const Operator& b) {
    OperatorKind k = (a.kind() == b.kind()) ? a.kind() : OperatorKind::general;
    return Operator(kron(a.matrix(), b.matrix()), k);
}

/// Reduced matrix on the kept subsystems. `dims` lists subsystem dimensions
/// with dims[0] the leftmost (most significant) tensor factor; `keep` indexes
/// into dims and must be strictly increasing.
inline Mat partial_trace_raw(const Mat& rho, const std::vector<int>& keep,
                             const std::vector<int>& dims) {
    long long total = 1;
    for (int d : dims) total *= d;
    if (total != rho.rows() || rho.rows() != rho.cols())
        throw std::invalid_argument("partial_trace: dimension mismatch");
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep must be nonempty");

    const int ns = static_cast<int>(dims.size());
    std::vector<bool> kept(ns, false);
    for (int k : keep) {
        if (k < 0 || k >= ns) throw std::invalid_argument("partial_trace: bad keep index");
        kept[k] = true;
    }
    long long dk = 1, dt = 1;
    for (int i = 0; i < ns; ++i) (kept[i] ? dk : dt) *= dims[i];

    // strides of each subsystem in the full index
    std::vector<long long> stride(ns, 1);
    for (int i = ns - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

    // enumerate kept / traced multi-indices
    auto expand = [&](bool want_kept, long long flat) {
        long long full = 0;
        for (int i = ns - 1; i >= 0; --i) {
            if (kept[i] != want_kept) continue;
            full += (flat % dims[i]) * stride[i];
            flat /= dims[i];
        }
        return full;
    };

    Mat out = Mat::Zero(dk, dk);
    for (long long r = 0; r < dk; ++r) {
        const long long fr = expand(true, r);
        for (long long c = 0; c < dk; ++c) {
            const long long fc = expand(true, c);
            cplx acc = 0.0;
            for (long long t = 0; t < dt; ++t) {
                const long long ft = expand(false, t);
                acc += rho(fr + ft, fc + ft);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep,
                                   const std::vector<int>& dims) {
    return DensityMatrix::from_channel_output(partial_trace_raw(rho.matrix(), keep, dims));
}

/// <psi|sigma|psi>. Squared-overlap convention for pure/mixed fidelity.
inline double fidelity_pure_mixed(const StateVector& psi, const DensityMatrix& sigma) {
    if (psi.dim() != sigma.dim())
        throw std::invalid_argument("fidelity_pure_mixed: dimension mismatch");
    const cplx v = psi.amps().dot(sigma.matrix() * psi.amps());
    if (std::abs(v.imag()) > numeric_config().atol)
        throw std::runtime_error("fidelity_pure_mixed: imaginary residue");
    return v.real();
}

/// Hermitian H with e^{-iH} = u, eigenphases in (-pi, pi]. Uses the Schur
/// form so degenerate eigenvalues keep an orthonormal basis. With
/// `strict_branch` an eigenvalue at -1 throws (the +pi/-pi branch is then a
/// convention, not forced); by default -1 maps to phase +pi.
inline Operator matrix_log_principal(const Operator& u, bool strict_branch = false) {
    if (u.kind() != OperatorKind::unitary)
        throw std::invalid_argument("matrix_log_principal: operator must be unitary");
    Eigen::ComplexSchur<Mat> schur(u.matrix());
    const Mat& q = schur.matrixU();
    const int d = u.dim();
    Eigen::VectorXd phases(d);
    for (int i = 0; i < d; ++i) {
        const cplx lam = schur.matrixT()(i, i);
        if (strict_branch && std::abs(lam + 1.0) < numeric_config().atol)
            throw std::runtime_error("matrix_log_principal: eigenvalue -1, branch ambiguity");
        double th = -std::arg(lam);  // in (-pi, pi]
        if (th <= -M_PI + 1e-14) th = M_PI;
        phases(i) = th;
    }
    Mat h = q * phases.asDiagonal() * q.adjoint();
    return Operator(hermitize(h), OperatorKind::hermitian);
}

/// Trace norm of a Hermitian matrix (sum of absolute eigenvalues).
inline double trace_norm_hermitian(const Mat& a) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

/// -sum lambda log_b lambda over the spectrum, with 0 log 0 = 0.
inline double spectral_entropy(const DensityMatrix& rho, double log_base) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix(), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int i = 0; i < rho.dim(); ++i) {
        const double lam = es.eigenvalues()(i);
        if (lam > 0) s -= lam * std::log(lam);
    }
    return s / std::log(log_base);
}

}  // namespace schucomp
