#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "nonmark/error.hpp"
#include "nonmark/params.hpp"

using namespace nonmark;

TEST(Coefficients, ResonantDriveIsSymmetric) {
    const auto c = Coefficients::from_drive(0.0, 1.0);
    EXPECT_DOUBLE_EQ(c.c_plus, 0.5);
    EXPECT_DOUBLE_EQ(c.c_minus, -0.5);
    EXPECT_DOUBLE_EQ(c.c_zero, 0.5);
}

TEST(Coefficients, ThreeFourFive) {
    const auto drive = DriveParams::make(10.0, 7.0, 4.0);
    EXPECT_DOUBLE_EQ(drive.detuning(), 3.0);
    EXPECT_DOUBLE_EQ(drive.dressed_splitting(), 5.0);
    const auto c = Coefficients::from_drive(drive.detuning(), drive.Omega);
    EXPECT_NEAR(c.c_plus, 0.8, 1e-15);
    EXPECT_NEAR(c.c_minus, -0.2, 1e-15);
    EXPECT_NEAR(c.c_zero, 0.4, 1e-15);
    EXPECT_NEAR(c.c_plus * c.c_plus + c.c_minus * c.c_minus + 2 * c.c_zero * c.c_zero, 1.0, 1e-15);
}

TEST(Coefficients, DegenerateDriveThrows) {
    EXPECT_THROW(Coefficients::from_drive(0.0, 0.0), InputError);
    const auto drive = DriveParams::make(1.0, 1.0, 0.0);
    EXPECT_THROW(derive(drive, ReservoirParams::make(0.1, 1.0, 1.0)), InputError);
}

TEST(Coefficients, IdentitiesOverRandomDrives) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> delta(-10.0, 10.0);
    std::uniform_real_distribution<double> omega(1e-3, 10.0);
    for (int i = 0; i < 10000; ++i) {
        const auto c = Coefficients::from_drive(delta(rng), omega(rng));
        EXPECT_NEAR(c.c_plus - c.c_minus, 1.0, 1e-12);
        EXPECT_NEAR(c.c_plus * c.c_plus + c.c_minus * c.c_minus + 2 * c.c_zero * c.c_zero, 1.0, 1e-12);
        EXPECT_NEAR(c.c_plus * c.c_minus, -c.c_zero * c.c_zero, 1e-12);
        ASSERT_LT(c.c_minus, 0.0);
    }
}

TEST(Derive, LaserAtReservoirCentreGivesZeroS) {
    const auto d = derive(DriveParams::make(5.0, 3.0, 0.2), ReservoirParams::make(0.3, 0.7, 3.0));
    EXPECT_EQ(d.regime.s, 0.0);
    EXPECT_NEAR(d.regime.p, std::hypot(2.0, 0.2) / 0.7, 1e-15);
}

TEST(Derive, RegimeParametersAreScaleInvariant) {
    const DriveParams drive = DriveParams::make(5.0, 3.5, 0.2);
    const ReservoirParams reservoir = ReservoirParams::make(0.3, 0.7, 4.0);
    const auto a = derive(drive, reservoir);
    for (double k : {1e-3, 0.5, 17.0, 1e4}) {
        const auto b = derive(DriveParams::make(k * drive.omega_A, k * drive.omega_L, k * drive.Omega),
                              ReservoirParams::make(reservoir.alpha, k * reservoir.lambda_width,
                                                    k * reservoir.omega_0));
        EXPECT_NEAR(b.regime.s, a.regime.s, 1e-12);
        EXPECT_NEAR(b.regime.p, a.regime.p, 1e-12);
    }
}

TEST(Validation, RejectsBadValues) {
    EXPECT_THROW(DriveParams::make(1.0, 1.0, -0.1), InputError);
    EXPECT_THROW(DriveParams::make(NAN, 1.0, 0.1), InputError);
    EXPECT_THROW(ReservoirParams::make(0.0, 1.0, 1.0), InputError);
    EXPECT_THROW(ReservoirParams::make(0.1, -1.0, 1.0), InputError);
}

TEST(ClassifyRegime, Defaults) {
    EXPECT_EQ(classify_regime(0.01), Regime::Nonsecular);
    EXPECT_EQ(classify_regime(10.0), Regime::Secular);
    EXPECT_EQ(classify_regime(1.0), Regime::Intermediate);
    EXPECT_EQ(classify_regime(0.1), Regime::Nonsecular);
    EXPECT_THROW(classify_regime(-1.0), InputError);
    EXPECT_EQ(classify_regime(1.0, {1.0, 2.0}), Regime::Nonsecular);
}

TEST(ModelParams, DimensionlessMatchesPhysical) {
    const auto drive = DriveParams::make(100.0, 99.0, 2.0);
    const auto reservoir = ReservoirParams::make(0.4, 0.5, 101.0);
    const auto m = ModelParams::make(drive, reservoir);
    const auto n = ModelParams::dimensionless(m.s(), m.p(), 0.4, drive.detuning(), drive.Omega);
    EXPECT_NEAR(m.s(), 4.0, 1e-12);
    EXPECT_NEAR(n.coeffs.c_plus, m.coeffs.c_plus, 1e-15);
    EXPECT_NEAR(n.coeffs.c_zero, m.coeffs.c_zero, 1e-15);
}

TEST(ValidityWarnings, FlagStrongDrive) {
    EXPECT_TRUE(validity_warnings(DriveParams::make(100.0, 99.5, 1.0)).empty());
    EXPECT_FALSE(validity_warnings(DriveParams::make(1.0, 1.0, 0.5)).empty());
    EXPECT_FALSE(validity_warnings(DriveParams::make(1.0, 0.5, 0.01)).empty());
}

TEST(ParamText, ParsesKeysAndComments) {
    const auto map = parse_param_text("# drive\nomega_A = 100\n\nOmega=2.5  # Rabi\nalpha = 0.5\n");
    EXPECT_EQ(map.size(), 3u);
    EXPECT_DOUBLE_EQ(map.at("omega_A"), 100.0);
    EXPECT_DOUBLE_EQ(map.at("Omega"), 2.5);
    EXPECT_DOUBLE_EQ(map.at("alpha"), 0.5);
}

TEST(ParamText, RejectsMalformedInput) {
    EXPECT_THROW(parse_param_text("omega_A = 1\nomega_A = 2\n"), InputError);
    EXPECT_THROW(parse_param_text("beta = 1\n"), InputError);
    EXPECT_THROW(parse_param_text("alpha = fast\n"), InputError);
    EXPECT_THROW(parse_param_text("alpha 0.5\n"), InputError);
    EXPECT_THROW(parse_param_text("alpha = 0.5 0.6\n"), InputError);
}

TEST(ParamText, LoadsFile) {
    const auto path = std::filesystem::temp_directory_path() / "nonmark_params_test.cfg";
    {
        std::ofstream out(path);
        out << "lambda = 2\nomega_0 = 3\n";
    }
    const auto map = load_param_file(path);
    EXPECT_DOUBLE_EQ(map.at("lambda"), 2.0);
    std::filesystem::remove(path);
    EXPECT_THROW(load_param_file(path), InputError);
}
