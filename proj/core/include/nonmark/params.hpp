// Model parameters and the dressed-basis coefficients derived from them.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nonmark {

/// Laser drive of the qubit. All frequencies share one user-chosen unit.
struct DriveParams {
    double omega_A{1.0}; // qubit transition
    double omega_L{1.0}; // laser
    double Omega{0.0};   // Rabi frequency

    /// Validates Omega >= 0 and finiteness.
    static DriveParams make(double omega_A, double omega_L, double Omega);

    double detuning() const noexcept { return omega_A - omega_L; }
    /// Dressed splitting sqrt(Delta^2 + Omega^2), recomputed on every call.
    double dressed_splitting() const noexcept;
};

/// Lorentzian reservoir, J(w) = alpha/(2 pi) * lambda^2 / (lambda^2 + (w - omega_0)^2).
struct ReservoirParams {
    double alpha{0.1};
    double lambda_width{1.0};
    double omega_0{1.0};

    static ReservoirParams make(double alpha, double lambda_width, double omega_0);
};

struct RegimeParams {
    double s{0.0}; // (omega_0 - omega_L) / lambda
    double p{0.0}; // omega / lambda
};

/// Dressed-basis weights. c_minus is signed and negative for Omega > 0.
struct Coefficients {
    double c_plus{1.0};
    double c_minus{0.0};
    double c_zero{0.0};

    /// C_pm = (Delta pm omega) / 2 omega, C_0 = Omega / 2 omega. Throws InputError when
    /// Delta = Omega = 0 (no dressed basis).
    static Coefficients from_drive(double detuning, double Omega);
};

struct Derived {
    RegimeParams regime;
    Coefficients coeffs;
};

Derived derive(const DriveParams& drive, const ReservoirParams& reservoir);

enum class Regime { Nonsecular, Intermediate, Secular };

struct RegimeThresholds {
    double p_lo{0.1};
    double p_hi{10.0};
};

Regime classify_regime(double p, const RegimeThresholds& thresholds = {});

std::string_view to_string(Regime regime);

/// Everything the driven-qubit generators need, in dimensionless form.
/// `drive` and `reservoir` are kept for provenance; the generators read only
/// s, p, alpha and the coefficients.
struct ModelParams {
    std::optional<DriveParams> drive;
    ReservoirParams reservoir;
    RegimeParams regime;
    Coefficients coeffs;

    static ModelParams make(const DriveParams& drive, const ReservoirParams& reservoir);

    /// Direct construction from the dimensionless parameters. The coefficients
    /// follow from the ratio detuning : Omega only.
    static ModelParams dimensionless(double s, double p, double alpha, double detuning,
                                     double Omega);

    double alpha() const noexcept { return reservoir.alpha; }
    double s() const noexcept { return regime.s; }
    double p() const noexcept { return regime.p; }
};

/// Non-fatal notes when the drive leaves the regime the master equation assumes
/// (Omega << omega_A, |Delta| << omega_A). Results are not altered.
std::vector<std::string> validity_warnings(const DriveParams& drive, double ratio = 0.1);

/// Flat key/value parameter file.
///
///     # comment
///     omega_A = 100.0
///     Omega   = 2.5
///
/// One `key = value` per line; blank lines and `#` comments are ignored.
/// Accepted keys: omega_A, omega_L, Omega, alpha, lambda, omega_0.
using ParamMap = std::map<std::string, double, std::less<>>;

ParamMap parse_param_text(std::string_view text);
ParamMap load_param_file(const std::filesystem::path& path);

} // namespace nonmark
