#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nonmark/dynamics.hpp"
#include "nonmark/error.hpp"
#include "nonmark/rates.hpp"
#include "nonmark/rhp.hpp"
#include "support.hpp"

using namespace nonmark;

namespace {

GeneratorSpec secular(double s, double p = 10.0) {
    return GeneratorSpec::driven(GeneratorKind::Secular, ModelParams::dimensionless(s, p, 0.5, 0.3, 1.0));
}

GeneratorSpec simplified(double s) {
    return GeneratorSpec::driven(GeneratorKind::SimplifiedNonsecular, ModelParams::dimensionless(s, 0.01, 0.5, 0.2, 1.0));
}

RateSample rates(double gp, double gm, double g0) {
    RateSample r;
    r.gamma = {gm, g0, gp};
    return r;
}

} // namespace

TEST(ChoiProbe, BellProjector) {
    const auto probe = ChoiProbe::bell();
    const Mat4 p = probe.projector();
    EXPECT_LT((p * p - p).norm(), 1e-15);
    EXPECT_NEAR(p.trace().real(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(p(0, 3)), 0.5, 1e-15);
}

TEST(ChoiAction, IdentityMapReturnsProbe) {
    const auto probe = ChoiProbe::bell(0.4);
    EXPECT_LT((choi_action(Superop::Identity(), probe.state) - probe.projector()).norm(), 1e-15);
}

TEST(TraceNormExcess, MatchesDirectEigenvalues) {
    std::mt19937_64 rng(31);
    const auto probe = ChoiProbe::bell();
    for (int i = 0; i < 50; ++i) {
        const Superop L = GeneratorSpec::driven(GeneratorKind::FullNonsecular,
                                                ModelParams::dimensionless(4.0, 1.0, 0.5, 0.3, 1.0))(0.2 * i);
        const Mat4 x = choi_action(L, probe.state);
        for (double eps : {1e-2, 1e-3}) {
            const double direct = trace_norm(probe.projector() + eps * x) - 1.0;
            EXPECT_NEAR(trace_norm_excess(probe.state, x, eps), direct, 1e-12);
        }
    }
}

TEST(GNumeric, HamiltonianIsFree) {
    for (double T : {0.0, 0.5, 3.0}) {
        EXPECT_EQ(g_numeric(hamiltonian_part(0.7 * ops::sigma_z() + 0.2 * ops::sigma_x())), 0.0);
        EXPECT_EQ(g_numeric(secular(1.0)(0.0)), 0.0) << T;
    }
}

TEST(GNumeric, PositiveRatesGiveZero) {
    const auto spec = secular(0.0);
    const auto r = rate_sample(20.0, 0.0, 10.0, 0.5);
    for (double g : r.gamma) {
        ASSERT_GT(g, 0.0);
    }
    EXPECT_EQ(g_numeric(spec, 20.0), 0.0);
}

TEST(GNumeric, MatchesSecularClosedFormWhereRatesAreNegative) {
    const auto spec = secular(1.0);
    int negative = 0;
    for (int k = 1; k <= 600; ++k) {
        const double T = 0.005 * k;
        const auto r = rate_sample(T, 1.0, 10.0, 0.5);
        negative += r.gamma_of(Channel::Plus) < 0.0;
        EXPECT_NEAR(g_numeric(spec, T), g_analytic(spec, T), 1e-5) << "T=" << T;
    }
    EXPECT_GT(negative, 0);
}

TEST(GNumeric, MatchesNonsecularClosedForm) {
    const auto spec = simplified(5.0);
    for (int k = 0; k < 50; ++k) {
        const double T = 0.1 + 0.2 * k;
        EXPECT_NEAR(g_numeric(spec, T), g_analytic(spec, T), 1e-5) << "T=" << T;
    }
}

TEST(GNumeric, MatchesUndrivenClosedForm) {
    const auto spec = GeneratorSpec::undriven(ReservoirParams::make(1.0, 1.0, 1.0));
    int checked = 0;
    for (int k = 0; k < 50; ++k) {
        const double t = 0.013 + 0.2 * k;
        try {
            EXPECT_NEAR(g_numeric(spec, t), g_analytic(spec, t), 1e-5 * std::max(1.0, g_analytic(spec, t))) << t;
            ++checked;
        } catch (const PoleError&) {
        }
    }
    EXPECT_GE(checked, 48);
}

TEST(GNumeric, GlobalPhaseInvariant) {
    const auto spec = secular(1.0);
    for (double T : {0.3, 0.9, 2.0}) {
        const double g = g_numeric(spec, T);
        EXPECT_NEAR(g_numeric(spec, T, ChoiProbe::bell(0.0, 1.1)), g, 1e-12);
        EXPECT_NEAR(g_numeric(spec, T, ChoiProbe::bell(0.0, -2.5)), g, 1e-12);
    }
}

TEST(GNumeric, NeverNegative) {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const auto m = ModelParams::dimensionless(6 * u(rng), 3 * u(rng), 0.1 + u(rng), 2 * u(rng) - 1, 0.1 + u(rng));
        const auto spec = GeneratorSpec::driven(GeneratorKind::FullNonsecular, m);
        EXPECT_GE(g_numeric(spec, 10 * u(rng)), 0.0);
    }
}

TEST(GSecularAnalytic, WorkedExample) {
    const auto c = Coefficients::from_drive(0.0, 1.0);
    const auto r = rates(-0.1, 0.2, -0.05);
    EXPECT_NEAR(g_secular_analytic(r, c, ClosedForm::AsPublished), 0.025, 1e-15);
    EXPECT_NEAR(g_secular_analytic(r, c, ClosedForm::Consistent), 0.05, 1e-15);
    EXPECT_EQ(g_secular_analytic(rates(0.1, 0.0, 0.3), c), 0.0);
    const auto scaled = rates(-0.3, 0.6, -0.15);
    EXPECT_NEAR(g_secular_analytic(scaled, c), 3.0 * g_secular_analytic(r, c), 1e-15);
}

TEST(GNonsecularAnalytic, Values) {
    const auto c = Coefficients::from_drive(0.0, 1.0);
    EXPECT_EQ(g_nonsecular_analytic(0.2, c), 0.0);
    EXPECT_NEAR(g_nonsecular_analytic(-0.3, c), 0.3, 1e-15);
    EXPECT_NEAR(g_nonsecular_analytic(-0.3, Coefficients::from_drive(2.0, 0.5)), 0.3, 1e-15);
    EXPECT_NEAR(g_nonsecular_analytic(-0.3, c, ClosedForm::AsPublished), 0.225, 1e-15);
}

TEST(GUndrivenAnalytic, Values) {
    EXPECT_EQ(g_undriven_analytic(nondriven_rate(0.0, 1.0, 1.0)), 0.0);
    EXPECT_NEAR(g_undriven_analytic(-0.4), 0.4, 1e-15);
    EXPECT_NEAR(g_undriven_analytic(-0.4, ClosedForm::AsPublished), 0.2, 1e-15);
    const double after_pole = nondriven_poles(1.0, 1.0, 10.0).front() + 0.05;
    EXPECT_GT(g_analytic(GeneratorSpec::undriven(ReservoirParams::make(1.0, 1.0, 1.0)), after_pole), 0.0);
}

TEST(RhpMeasure, MarkovianUndrivenIsZero) {
    const auto spec = GeneratorSpec::undriven(ReservoirParams::make(0.1, 1.0, 1.0));
    const auto report = rhp_measure(spec, uniform_grid(30.0, 1e-2), {RhpMethod::Both});
    EXPECT_EQ(report.measure, 0.0);
    EXPECT_EQ(report.integral, 0.0);
    EXPECT_FALSE(report.divergent);
}

TEST(RhpMeasure, StrongCouplingUndrivenDiverges) {
    const auto spec = GeneratorSpec::undriven(ReservoirParams::make(1.0, 1.0, 1.0));
    const auto report = rhp_measure(spec, uniform_grid(30.0, 1e-2));
    EXPECT_TRUE(report.divergent);
    EXPECT_GT(report.measure, 0.0);
    EXPECT_FALSE(report.poles.empty());
}

TEST(RhpMeasure, SecularIsAlwaysNonMarkovian) {
    for (double s : {0.0, 1.0, 5.0}) {
        const auto report = rhp_measure(secular(s), uniform_grid(30.0, 1e-2), {RhpMethod::Both});
        EXPECT_GT(report.measure, 0.0) << s;
        EXPECT_LT(report.measure, 1.0);
        EXPECT_LE(report.max_cross_error, 1e-5);
        EXPECT_NEAR(report.measure, report.integral / (report.integral + 1.0), 1e-15);
        for (double g : report.g_numeric) {
            EXPECT_GE(g, 0.0);
        }
    }
}

TEST(RhpMeasure, MonotoneInHorizon) {
    const auto spec = simplified(5.0);
    double previous = 0.0;
    for (double tmax : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double n = rhp_measure(spec, uniform_grid(tmax, 1e-2)).measure;
        EXPECT_GE(n, previous);
        previous = n;
    }
}

TEST(RhpMeasure, TailBound) {
    const auto spec = simplified(5.0);
    EXPECT_GT(rhp_measure(spec, uniform_grid(0.5, 1e-2), {RhpMethod::Analytic}).tail_bound, 0.0);
    EXPECT_EQ(rhp_measure(spec, uniform_grid(30.0, 1e-2), {RhpMethod::Analytic}).tail_bound, 0.0);
}

TEST(RhpMeasure, MethodSelection) {
    const auto full = GeneratorSpec::driven(GeneratorKind::FullNonsecular, ModelParams::dimensionless(3.0, 1.0, 0.5, 0.3, 1.0));
    EXPECT_THROW(rhp_measure(full, uniform_grid(1.0, 0.1), {RhpMethod::Analytic}), InputError);
    EXPECT_EQ(rhp_measure(simplified(5.0), uniform_grid(1.0, 0.1), {RhpMethod::Analytic}).method, "nonsecular-analytic");
    EXPECT_EQ(rhp_measure(secular(1.0), uniform_grid(1.0, 0.1), {RhpMethod::Analytic}).method, "secular-analytic");
    EXPECT_EQ(parse_rhp_method("both"), RhpMethod::Both);
    EXPECT_THROW(parse_rhp_method("fast"), InputError);
    const std::vector<double> single{0.0};
    EXPECT_THROW(rhp_measure(full, single), InputError);
}
