#include <catch2/catch_amalgamated.hpp>

#include "schucomp/textbook.hpp"

using namespace schucomp;

TEST_CASE("default assignment packs typical strings into the kept block") {
    const EncodingPlan plan = three_qubit_plan();
    REQUIRE(plan.n == 3);
    REQUIRE(plan.m == 2);
    REQUIRE(plan.J == 1);
    const std::vector<std::uint32_t> expect{0b000, 0b010, 0b100, 0b001,
                                            0b110, 0b011, 0b101, 0b111};
    CHECK(plan.basis_map == expect);
    CHECK(plan.U.kind() == OperatorKind::unitary);
}

TEST_CASE("encoding unitary maps eigen-strings to assigned basis strings") {
    const EncodingPlan plan = three_qubit_plan();
    for (std::uint32_t s = 0; s < 8; ++s) {
        const Vec image = plan.U.matrix() * eigenstring_ket(plan.source, s, 3).amps();
        for (std::uint32_t c = 0; c < 8; ++c) {
            const double expect = (c == plan.basis_map[s]) ? 1.0 : 0.0;
            CHECK(std::abs(std::abs(image(c)) - expect) < 1e-10);
        }
    }
}

TEST_CASE("reference matrix is reproduced by the reversal assignment") {
    const EncodingPlan ref = three_qubit_reference_plan();
    CHECK((ref.U.matrix() - three_qubit_reference_matrix()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("plan validation") {
    const QubitSource src = three_qubit_source();
    const TypicalSpec spec = three_qubit_typical_spec();
    // typical set has 4 strings; one kept qubit cannot hold them
    CHECK_THROWS_AS(build_encoding_plan(src, spec, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_encoding_plan(src, spec, 7), std::invalid_argument);
    // non-bijective assignment
    std::vector<std::uint32_t> bad(8, 0);
    CHECK_THROWS_AS(build_encoding_plan(src, spec, 2, bad), std::invalid_argument);
    // default m clamps into [ceil(log2 |T|), n]
    const EncodingPlan def = build_encoding_plan(src, spec);
    CHECK(def.m == 3);  // ceil(3S + eps) = 3 after clamping to n
}

TEST_CASE("typical-subspace states survive compress/decode exactly") {
    const EncodingPlan plan = three_qubit_plan();
    const DensityMatrix ground = DensityMatrix::pure(StateVector::basis(2, 0));
    const TypicalSpec spec = three_qubit_typical_spec();

    // an arbitrary superposition of the typical eigen-strings
    Vec v = Vec::Zero(8);
    const double w[4] = {0.5, 0.4, 0.6, 0.2};
    for (size_t i = 0; i < spec.typical_strings.size(); ++i)
        v += w[i] * eigenstring_ket(plan.source, spec.typical_strings[i], 3).amps();
    const StateVector psi(v);

    const DensityMatrix out = decode(compress(psi, plan), ground, plan);
    CHECK(fidelity_pure_mixed(psi, out) == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("atypical content degrades the decoded state") {
    const EncodingPlan plan = three_qubit_plan();
    const DensityMatrix ground = DensityMatrix::pure(StateVector::basis(2, 0));
    const StateVector atypical = eigenstring_ket(plan.source, 0b111, 3);
    const DensityMatrix out = decode(compress(atypical, plan), ground, plan);
    CHECK(fidelity_pure_mixed(atypical, out) < 0.6);
}

TEST_CASE("ideal protocol fidelity matches its closed form per message") {
    const QubitSource src = three_qubit_source();
    const TypicalSpec spec = three_qubit_typical_spec();
    const StateVector g = guess_state(src, 3);
    for (const auto& [msg, p] : enumerate_messages(src, 3).messages) {
        const double direct = fidelity_pure_mixed(msg, received_ensemble_ideal(msg, spec, g));
        CHECK(direct == Catch::Approx(protocol_fidelity_ideal(msg, spec, g)).margin(1e-12));
    }
}

TEST_CASE("worked-example ensemble averages") {
    CHECK(three_qubit_ideal_fidelity_avg() == Catch::Approx(0.9233583).margin(1e-6));
    CHECK(three_qubit_guess_overlap_avg() == Catch::Approx(0.62186).margin(1e-4));
    CHECK(std::sqrt(three_qubit_guess_overlap_avg()) == Catch::Approx(0.78858).margin(1e-4));
}
