#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "schucomp/textbook.hpp"
#include "schucomp/thermo.hpp"
#include "schucomp/timing.hpp"

using namespace schucomp;

namespace {
GeneratorSpec textbook_generator() { return GeneratorSpec::from_plan(three_qubit_plan()); }
}  // namespace

TEST_CASE("plan generator reproduces the encoding unitary") {
    const EncodingPlan plan = three_qubit_plan();
    const GeneratorSpec gen = GeneratorSpec::from_plan(plan);
    Mat u = Mat::Zero(8, 8);
    for (int i = 0; i < 8; ++i)
        u += std::exp(cplx(0, -gen.energies(i))) *
             (gen.eigenbasis.col(i) * gen.eigenbasis.col(i).adjoint());
    CHECK((u - plan.U.matrix()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("double dephasing at sigma = 0 is the identity channel") {
    const GeneratorSpec gen = textbook_generator();
    std::mt19937_64 rng(11);
    const StateVector psi = haar_random_state(8, rng);
    const DensityMatrix rho = DensityMatrix::pure(psi);
    const DensityMatrix out = double_dephase(rho, gen, ClockSpec(1.0, 0.0));
    CHECK((out.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("large sigma removes eigenbasis coherences") {
    const GeneratorSpec gen = textbook_generator();
    std::mt19937_64 rng(12);
    const DensityMatrix rho = DensityMatrix::pure(haar_random_state(8, rng));
    const DensityMatrix out = double_dephase(rho, gen, ClockSpec(1.0, 50.0));
    const Mat in_basis = gen.eigenbasis.adjoint() * out.matrix() * gen.eigenbasis;
    for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k) {
            if (j == k) continue;
            const double gap = gen.energies(k) - gen.energies(j);
            if (std::abs(gap) > 1e-6) CHECK(std::abs(in_basis(j, k)) < 1e-10);
        }
    CHECK(out.matrix().trace().real() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("double sum equals the dephasing-channel pipeline") {
    const TypicalSpec spec = three_qubit_typical_spec();
    const GeneratorSpec gen = textbook_generator();
    const Mat& lam = spec.projector.matrix();
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        const StateVector psi = haar_random_state(8, rng);
        for (double sigma : {0.0, 0.1, 0.4, 1.0}) {
            const ClockSpec clock(1.0, sigma);
            const double direct = clock_limited_fidelity(psi, spec, gen, clock);
            const Vec lp = lam * psi.amps();
            const double w = lp.squaredNorm();
            double piped = 0;
            if (w > 1e-14) {
                const DensityMatrix branch =
                    DensityMatrix::from_channel_output(lp * lp.adjoint() / w);
                piped = w * fidelity_pure_mixed(psi, double_dephase(branch, gen, clock));
            }
            CHECK(std::abs(direct - piped) < 1e-10);
        }
    }
}

TEST_CASE("sigma = 0 reproduces the ideal typical term") {
    const TypicalSpec spec = three_qubit_typical_spec();
    const GeneratorSpec gen = textbook_generator();
    const Mat& lam = spec.projector.matrix();
    for (const auto& [msg, p] : enumerate_messages(three_qubit_source(), 3).messages) {
        const double f = clock_limited_fidelity(msg, spec, gen, ClockSpec(1.0, 0.0));
        const double typ = msg.amps().dot(lam * msg.amps()).real();
        CHECK(std::abs(f - typ * typ) < 1e-12);
    }
}

TEST_CASE("source-ensemble fidelity is non-increasing in sigma") {
    const TypicalSpec spec = three_qubit_typical_spec();
    const GeneratorSpec gen = textbook_generator();
    const MessageEnsemble ens = enumerate_messages(three_qubit_source(), 3);
    const StateVector g = guess_state(three_qubit_source(), 3);
    double prev_t = 2.0, prev_f = 2.0;
    for (double sigma : {0.0, 0.05, 0.1, 0.2, 0.4, 0.8, 1.6}) {
        const ClockSpec clock(1.0, sigma);
        const double ft = ensemble_average(ens, [&](const StateVector& p) {
            return clock_limited_fidelity(p, spec, gen, clock);
        });
        const double ff = ensemble_average(ens, [&](const StateVector& p) {
            return clock_limited_fidelity_full(p, spec, gen, clock, 0.9, g);
        });
        CHECK(ft <= prev_t + 1e-12);
        CHECK(ff <= prev_f + 1e-12);
        prev_t = ft;
        prev_f = ff;
    }
}

TEST_CASE("full clock fidelity reduces to components in limits") {
    const TypicalSpec spec = three_qubit_typical_spec();
    const GeneratorSpec gen = textbook_generator();
    const StateVector g = guess_state(three_qubit_source(), 3);
    for (const auto& [msg, p] : enumerate_messages(three_qubit_source(), 3).messages) {
        // c_max = 1, sigma = 0: ideal protocol fidelity
        const double f = clock_limited_fidelity_full(msg, spec, gen, ClockSpec(1.0, 0.0), 1.0, g);
        CHECK(f == Catch::Approx(protocol_fidelity_ideal(msg, spec, g)).margin(1e-10));
    }
    CHECK_THROWS_AS(clock_limited_fidelity_full(g, spec, gen, ClockSpec(1.0, 0.0), 0.2, g),
                    std::invalid_argument);
}

TEST_CASE("clock spec validation") {
    CHECK_THROWS_AS(ClockSpec(1.0, -0.1), std::invalid_argument);
}
