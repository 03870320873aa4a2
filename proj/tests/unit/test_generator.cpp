#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <random>

#include "nonmark/error.hpp"
#include "nonmark/generator.hpp"
#include "nonmark/rates.hpp"
#include "support.hpp"

using namespace nonmark;
using nonmark::testing::random_density;
using nonmark::testing::random_hermitian;

namespace {

std::vector<GeneratorSpec> sample_specs() {
    return {
        GeneratorSpec::driven(GeneratorKind::Secular, ModelParams::dimensionless(1.0, 10.0, 0.5, 0.3, 1.0)),
        GeneratorSpec::driven(GeneratorKind::FullNonsecular, ModelParams::dimensionless(3.0, 1.0, 0.5, -0.4, 0.8)),
        GeneratorSpec::driven(GeneratorKind::SimplifiedNonsecular, ModelParams::dimensionless(5.0, 0.01, 0.5, 0.2, 1.0)),
        GeneratorSpec::undriven(ReservoirParams::make(0.3, 1.0, 1.0)),
    };
}

} // namespace

TEST(Dissipator, AmplitudeDampingOfExcitedState) {
    const Mat2 excited = (Mat2() << 1, 0, 0, 0).finished();
    const Mat2 rate = nonmark::apply(dissipator(ops::sigma_minus(), 1.0), excited);
    const Mat2 expected = (Mat2() << -1, 0, 0, 1).finished();
    EXPECT_LT((rate - expected).norm(), 1e-15);
}

TEST(Dissipator, DephasingDecaysCoherenceAtTwiceTheRate) {
    const double g0 = 0.37;
    const Mat2 rho = (Mat2() << 0.6, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.4).finished();
    const Mat2 rate = nonmark::apply(dissipator(ops::sigma_z(), g0), rho);
    EXPECT_NEAR(std::abs(rate(0, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(rate(1, 1)), 0.0, 1e-15);
    EXPECT_LT(std::abs(rate(0, 1) + 2.0 * g0 * rho(0, 1)), 1e-15);
}

TEST(Dissipator, ZeroRateAndNegativeRate) {
    EXPECT_EQ(dissipator(ops::sigma_plus(), 0.0).norm(), 0.0);
    EXPECT_LT((dissipator(ops::sigma_plus(), -0.4) + 0.4 * dissipator(ops::sigma_plus(), 1.0)).norm(), 1e-15);
}

TEST(HamiltonianPart, Basics) {
    EXPECT_EQ(hamiltonian_part(Mat2::Zero()).norm(), 0.0);
    const Mat2 h = 0.7 * ops::sigma_z();
    const Mat2 diag = (Mat2() << 0.3, 0, 0, 0.7).finished();
    EXPECT_LT(nonmark::apply(hamiltonian_part(h), diag).norm(), 1e-15);
    EXPECT_THROW(hamiltonian_part(ops::sigma_plus()), InputError);
}

TEST(SecularGenerator, OriginIsPureHamiltonian) {
    const auto m = ModelParams::dimensionless(1.0, 10.0, 0.5, 0.3, 1.0);
    EXPECT_LT((secular_generator(0.0, m) - hamiltonian_part(dressed_hamiltonian(m))).norm(), 1e-15);
    EXPECT_LT((simplified_nonsecular_generator(0.0, m) - hamiltonian_part(dressed_hamiltonian(m))).norm(), 1e-15);
}

TEST(SecularGenerator, ResonantSymmetricRatesFixMaximallyMixedState) {
    const auto m = ModelParams::dimensionless(0.0, 2.0, 0.5, 0.0, 1.0);
    for (double T : {0.2, 1.0, 5.0}) {
        const auto r = rate_sample(T, 0.0, 2.0, 0.5);
        ASSERT_NEAR(r.gamma_of(Channel::Plus), r.gamma_of(Channel::Minus), 1e-15);
        EXPECT_LT(nonmark::apply(secular_generator(T, m), 0.5 * Mat2::Identity()).norm(), 1e-15);
    }
}

TEST(NonsecularTerms, VanishWithoutDrive) {
    const auto m = ModelParams::dimensionless(1.0, 0.5, 0.5, 1.0, 0.0);
    for (double T : {0.5, 3.0}) {
        EXPECT_EQ(nonsecular_terms(T, m).norm(), 0.0);
    }
}

TEST(NonsecularTerms, OrderOfAssemblyDoesNotMatter) {
    const auto m = ModelParams::dimensionless(2.0, 1.5, 0.5, 0.4, 0.9);
    auto terms = nonsecular_term_list(m.coeffs);
    const auto rates = rate_sample(1.7, m.s(), m.p(), m.alpha());
    const Superop reference = assemble_nonsecular(terms, rates);
    EXPECT_LT((reference - nonsecular_terms(1.7, m)).norm(), 1e-15);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(terms.begin(), terms.end(), rng);
        EXPECT_LT((assemble_nonsecular(terms, rates) - reference).norm(), 1e-14);
    }
}

TEST(SimplifiedGenerator, JumpOperatorIsNormalized) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const auto c = Coefficients::from_drive(u(rng), std::abs(u(rng)) + 1e-3);
        const Mat2 a = simplified_jump_operator(c);
        EXPECT_NEAR((a.adjoint() * a).trace().real(), 1.0, 1e-12);
    }
}

TEST(SimplifiedGenerator, LambShiftIsAlongX) {
    const auto c = Coefficients::from_drive(0.7, 1.3);
    EXPECT_LT((lamb_shift_hamiltonian(0.25, c) - 0.25 * c.c_zero * ops::sigma_x()).norm(), 1e-15);
}

TEST(FullGenerator, ReducesToSimplifiedAtZeroP) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const auto m = ModelParams::dimensionless(6.0 * u(rng), 0.0, 0.1 + u(rng), 4.0 * u(rng) - 2.0, 0.1 + u(rng));
        for (int k = 0; k < 100; ++k) {
            const double T = 0.3 * k;
            EXPECT_LT((full_generator(T, m) - simplified_nonsecular_generator(T, m)).norm(), 1e-10);
        }
    }
}

TEST(FullGenerator, CloseToSecularAtLargeP) {
    const auto m = ModelParams::dimensionless(1.0, 100.0, 0.5, 0.3, 1.0);
    double diff = 0.0, norm = 0.0;
    for (int k = 0; k <= 1000; ++k) {
        const double T = 0.01 * k;
        diff += (full_generator(T, m) - secular_generator(T, m)).norm();
        norm += full_generator(T, m).norm();
    }
    EXPECT_LT(diff / norm, 0.1);
}

TEST(Generators, PreserveTraceAndHermiticity) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> T(0.0, 20.0);
    for (const auto& spec : sample_specs()) {
        for (int i = 0; i < 1000; ++i) {
            const Superop L = spec(T(rng));
            const Mat2 rho = random_density(rng);
            const Mat2 out = nonmark::apply(L, rho);
            ASSERT_LT(std::abs(out.trace()), 1e-12) << to_string(spec.kind);
            ASSERT_LT(hermiticity_defect(out), 1e-12) << to_string(spec.kind);
        }
    }
}

TEST(Generators, NonsecularPartPreservesHermiticity) {
    std::mt19937_64 rng(17);
    const auto m = ModelParams::dimensionless(2.0, 1.0, 0.5, -0.3, 1.2);
    for (int i = 0; i < 100; ++i) {
        const Mat2 h = random_hermitian(rng);
        const Mat2 out = nonmark::apply(nonsecular_terms(0.1 * i, m), h);
        EXPECT_LT(hermiticity_defect(out), 1e-12);
        EXPECT_LT(std::abs(out.trace()), 1e-12);
    }
}

TEST(Generators, Linear) {
    std::mt19937_64 rng(19);
    const auto spec = sample_specs()[1];
    const Superop L = spec(2.3);
    const Mat2 a = random_density(rng), b = random_density(rng);
    const Mat2 lhs = nonmark::apply(L, 0.3 * a + 1.7 * b);
    const Mat2 rhs = 0.3 * nonmark::apply(L, a) + 1.7 * nonmark::apply(L, b);
    EXPECT_LT((lhs - rhs).norm(), 1e-12);
}

TEST(GeneratorSpec, KindsAndRegimes) {
    EXPECT_EQ(generator_for(Regime::Secular), GeneratorKind::Secular);
    EXPECT_EQ(generator_for(Regime::Intermediate), GeneratorKind::FullNonsecular);
    EXPECT_EQ(generator_for(Regime::Nonsecular), GeneratorKind::SimplifiedNonsecular);
    for (auto kind : {GeneratorKind::Secular, GeneratorKind::FullNonsecular,
                      GeneratorKind::SimplifiedNonsecular, GeneratorKind::Undriven}) {
        EXPECT_EQ(parse_generator_kind(to_string(kind)), kind);
    }
    EXPECT_THROW(parse_generator_kind("markov"), InputError);
}

TEST(GeneratorSpec, UndrivenIgnoresDrive) {
    const auto reservoir = ReservoirParams::make(0.3, 2.0, 1.0);
    const auto spec = GeneratorSpec::undriven(reservoir);
    EXPECT_FALSE(spec.params.drive.has_value());
    EXPECT_EQ(spec.time_scale(), 2.0);
    EXPECT_LT((spec(0.7) - undriven_generator(0.7, reservoir)).norm(), 1e-15);
}
