#include <catch2/catch_amalgamated.hpp>

#include "schucomp/textbook.hpp"

using namespace schucomp;

TEST_CASE("worked-example source spectral data") {
    const QubitSource src = three_qubit_source();
    const double c2 = std::pow(std::cos(M_PI / 8), 2);
    CHECK(src.gamma0 == Catch::Approx(c2).margin(1e-12));
    CHECK(src.gamma1 == Catch::Approx(1 - c2).margin(1e-12));
    CHECK(src.entropy_bits == Catch::Approx(0.6008760366928562).margin(1e-12));

    // canonical eigenkets: |0'> = (cos pi/8, sin pi/8), |1'> = (sin, -cos)
    const double c = std::cos(M_PI / 8), s = std::sin(M_PI / 8);
    CHECK(std::abs(src.eigket0.amps()(0) - cplx(c, 0)) < 1e-12);
    CHECK(std::abs(src.eigket0.amps()(1) - cplx(s, 0)) < 1e-12);
    CHECK(std::abs(src.eigket1.amps()(0) - cplx(s, 0)) < 1e-12);
    CHECK(std::abs(src.eigket1.amps()(1) - cplx(-c, 0)) < 1e-12);
}

TEST_CASE("source validation") {
    Vec zero(2);
    zero << 1, 0;
    CHECK_THROWS_AS(QubitSource::create({StateVector(zero)}, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(QubitSource::create({StateVector(zero)}, {0.5, 0.5}), std::invalid_argument);
    Vec four = Vec::Zero(4);
    four(0) = 1;
    CHECK_THROWS_AS(QubitSource::create({StateVector(four)}, {1.0}), std::invalid_argument);
}

TEST_CASE("eigen-string weights and kets follow the bit convention") {
    const QubitSource src = three_qubit_source();
    // bit 0 of the string is the leftmost tensor factor
    CHECK(eigenstring_weight(src, 0b100, 3) ==
          Catch::Approx(src.gamma1 * src.gamma0 * src.gamma0).margin(1e-14));
    const StateVector k100 = eigenstring_ket(src, 0b100, 3);
    const StateVector manual = tensor(src.eigket1, tensor(src.eigket0, src.eigket0));
    CHECK((k100.amps() - manual.amps()).cwiseAbs().maxCoeff() < 1e-14);

    // weights over all strings sum to 1
    double sum = 0;
    for (std::uint32_t s = 0; s < 8; ++s) sum += eigenstring_weight(src, s, 3);
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("message enumeration covers the product ensemble") {
    const QubitSource src = three_qubit_source();
    const MessageEnsemble ens = enumerate_messages(src, 3);
    REQUIRE(ens.messages.size() == 8);
    double psum = 0;
    for (const auto& [msg, p] : ens.messages) {
        CHECK(p == Catch::Approx(0.125).margin(1e-14));
        psum += p;
    }
    CHECK(psum == Catch::Approx(1.0).margin(1e-12));

    // ensemble average density equals rho^{(x)n}
    Mat avg = Mat::Zero(8, 8);
    for (const auto& [msg, p] : ens.messages) avg += p * (msg.amps() * msg.amps().adjoint());
    CHECK((avg - source_density_power(src, 3).matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("typical set of the worked example") {
    const TypicalSpec spec = three_qubit_typical_spec();
    CHECK(spec.typical_strings == std::vector<std::uint32_t>{0b000, 0b001, 0b010, 0b100});
    CHECK(spec.delta == Catch::Approx(0.05805826175840778).margin(1e-12));
    CHECK(spec.projector.kind() == OperatorKind::projector);
    CHECK(spec.projector.matrix().trace().real() == Catch::Approx(4.0).margin(1e-10));

    const auto [lo, hi] = three_qubit_epsilon_window();
    CHECK(lo == Catch::Approx(0.47527).margin(1e-4));
    CHECK(hi == Catch::Approx(1.32298).margin(1e-4));
    // below the window the singleton set {000} appears instead
    const TypicalSpec tight = build_typical_spec(three_qubit_source(), 3, 0.42);
    CHECK(tight.typical_strings == std::vector<std::uint32_t>{0});
}

TEST_CASE("typical spec rejects bad inputs") {
    const QubitSource src = three_qubit_source();
    CHECK_THROWS_AS(build_typical_spec(src, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_typical_spec(src, 3, 0.01), std::invalid_argument);  // empty set
    CHECK_THROWS_AS(build_typical_spec(src, 0, 0.5), std::invalid_argument);
}

TEST_CASE("typical weight grows with the block length") {
    // delta is only asymptotically monotone (integer cutoffs); compare a
    // doubling of n rather than consecutive values
    const QubitSource src = three_qubit_source();
    const double eps = 0.45;
    const double d4 = build_typical_spec(src, 4, eps).delta;
    const double d8 = build_typical_spec(src, 8, eps).delta;
    CHECK(d8 < d4);
    CHECK(d8 < 0.1);
}
