#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "schucomp/linalg.hpp"

using namespace schucomp;

TEST_CASE("StateVector normalises and validates") {
    Vec v(2);
    v << 3.0, 4.0;
    const StateVector psi(v);
    CHECK(psi.amps().norm() == Catch::Approx(1.0).margin(1e-14));
    CHECK(psi.amps()(0).real() == Catch::Approx(0.6));

    Vec bad(3);
    bad << 1, 0, 0;
    CHECK_THROWS_AS(StateVector(bad), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(Vec::Zero(4)), std::invalid_argument);
}

TEST_CASE("DensityMatrix rejects invalid matrices") {
    Mat ok = Mat::Zero(2, 2);
    ok(0, 0) = 0.5;
    ok(1, 1) = 0.5;
    CHECK_NOTHROW(DensityMatrix(ok));

    Mat bad_trace = 2.0 * ok;
    CHECK_THROWS_AS(DensityMatrix(bad_trace), std::invalid_argument);

    Mat non_herm = ok;
    non_herm(0, 1) = cplx(0.0, 0.3);
    CHECK_THROWS_AS(DensityMatrix(non_herm), std::invalid_argument);

    Mat neg = Mat::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix(neg), std::invalid_argument);
}

TEST_CASE("Operator kind validation") {
    Mat h = Mat::Zero(2, 2);
    h(0, 1) = cplx(0, -1);
    h(1, 0) = cplx(0, 1);  // sigma_y
    CHECK_NOTHROW(Operator(h, OperatorKind::hermitian));
    CHECK_NOTHROW(Operator(h, OperatorKind::unitary));
    CHECK_THROWS_AS(Operator(h, OperatorKind::projector), std::invalid_argument);

    Mat p = Mat::Zero(2, 2);
    p(0, 0) = 1.0;
    CHECK_NOTHROW(Operator(p, OperatorKind::projector));
    CHECK_THROWS_AS(Operator(p, OperatorKind::unitary), std::invalid_argument);
}

TEST_CASE("kron and tensor compose dimensions and entries") {
    Mat a(2, 2), b(2, 2);
    a << 1, 2, 3, 4;
    b << 0, 1, 1, 0;
    const Mat k = kron(a, b);
    REQUIRE(k.rows() == 4);
    CHECK(k(0, 1) == cplx(1, 0));
    CHECK(k(2, 3) == cplx(4, 0));

    const StateVector s0 = StateVector::basis(2, 0);
    const StateVector s1 = StateVector::basis(2, 1);
    const StateVector s01 = tensor(s0, s1);
    // leftmost factor is the most significant index
    CHECK(std::abs(s01.amps()(1) - cplx(1, 0)) < 1e-14);
}

TEST_CASE("partial trace recovers marginals") {
    // Bell state: each marginal is maximally mixed
    Vec bell = Vec::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const DensityMatrix rho = DensityMatrix::pure(StateVector(bell));
    const DensityMatrix left = partial_trace(rho, {0}, {2, 2});
    CHECK((left.matrix() - Mat::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);

    // product state: marginals are the factors
    Vec a(2), b(2);
    a << 0.6, 0.8;
    b << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    const DensityMatrix prod = DensityMatrix::pure(tensor(StateVector(a), StateVector(b)));
    const DensityMatrix right = partial_trace(prod, {1}, {2, 2});
    const Mat expect = StateVector(b).amps() * StateVector(b).amps().adjoint();
    CHECK((right.matrix() - expect).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(partial_trace(rho, {0}, {2, 4}), std::invalid_argument);
}

TEST_CASE("fidelity of a pure state with itself is 1") {
    Vec a(4);
    a << cplx(0.3, 0.1), cplx(0.2, -0.4), 0.5, cplx(0.0, 0.6);
    const StateVector psi(a);
    CHECK(fidelity_pure_mixed(psi, DensityMatrix::pure(psi)) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("matrix log round-trips and handles the -1 eigenvalue") {
    // random Hermitian generator -> unitary -> log -> generator phases agree
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    Mat g(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = cplx(nd(rng), nd(rng));
    const Mat h0 = 0.3 * hermitize(g);
    Eigen::SelfAdjointEigenSolver<Mat> es(h0);
    Mat u = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
        u += std::exp(cplx(0, -es.eigenvalues()(i))) *
             (es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint());
    const Operator h = matrix_log_principal(Operator(u, OperatorKind::unitary));
    Eigen::SelfAdjointEigenSolver<Mat> es2(h.matrix());
    Mat u2 = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
        u2 += std::exp(cplx(0, -es2.eigenvalues()(i))) *
              (es2.eigenvectors().col(i) * es2.eigenvectors().col(i).adjoint());
    CHECK((u2 - u).cwiseAbs().maxCoeff() < 1e-10);

    // eigenvalue -1: default branch takes phase +pi and still round-trips
    Mat z = Mat::Identity(2, 2);
    z(1, 1) = -1.0;
    const Operator hz = matrix_log_principal(Operator(z, OperatorKind::unitary));
    CHECK(hz.matrix()(1, 1).real() == Catch::Approx(M_PI).margin(1e-12));
    CHECK_THROWS_AS(matrix_log_principal(Operator(z, OperatorKind::unitary), true),
                    std::runtime_error);
}

TEST_CASE("trace norm and spectral entropy") {
    Mat a = Mat::Zero(2, 2);
    a(0, 0) = 0.7;
    a(1, 1) = -0.3;
    CHECK(trace_norm_hermitian(a) == Catch::Approx(1.0).margin(1e-12));

    Mat half = Mat::Identity(2, 2) / 2.0;
    CHECK(spectral_entropy(DensityMatrix(half), 2.0) == Catch::Approx(1.0).margin(1e-12));
    const DensityMatrix pure0 = DensityMatrix::pure(StateVector::basis(2, 0));
    CHECK(spectral_entropy(pure0, 2.0) == Catch::Approx(0.0).margin(1e-12));
}
