// Time-dependent decay rates and Lamb shifts.
//
// Driven qubit: Lorentzian rates as functions of the dimensionless time T = lambda t,
// returned in units of lambda. Undriven qubit: physical time t, alpha carries units of
// rate. The two parameterizations are distinct and never mixed.

#pragma once

#include <array>
#include <complex>
#include <vector>

namespace nonmark {

/// Channel index xi in {-, 0, +}.
enum class Channel : int { Minus = 0, Zero = 1, Plus = 2 };

inline constexpr std::array<Channel, 3> kChannels{Channel::Minus, Channel::Zero, Channel::Plus};

/// The sign xi of a channel.
constexpr int sign_of(Channel c) noexcept { return static_cast<int>(c) - 1; }

struct RatePair {
    double gamma{0.0};
    double lamb{0.0};
};

/// gamma(T) = a^2/(2(1+q^2)) (1 - e^-T cos qT + e^-T q sin qT)
/// lamb(T)  = a^2/(1+q^2) (-q + e^-T q cos qT + e^-T sin qT)
/// Throws DomainError for T < 0.
RatePair lorentzian_rate(double T, double q, double alpha);

/// q_xi = s - xi p.
struct QTriple {
    double q_minus{0.0};
    double q_zero{0.0};
    double q_plus{0.0};

    static QTriple make(double s, double p) noexcept { return {s + p, s, s - p}; }
    double operator[](Channel c) const noexcept;
};

struct RateSample {
    double T{0.0};
    std::array<double, 3> gamma{}; // indexed by Channel
    std::array<double, 3> lamb{};

    double gamma_of(Channel c) const noexcept { return gamma[static_cast<int>(c)]; }
    double lamb_of(Channel c) const noexcept { return lamb[static_cast<int>(c)]; }
    /// Gamma_xi = gamma_xi / 2 - i lamb_xi.
    std::complex<double> complex_rate(Channel c) const noexcept {
        return {gamma_of(c) / 2.0, -lamb_of(c)};
    }
};

RateSample rate_sample(double T, double s, double p, double alpha);

/// Lower envelope alpha^2/(2(1+q^2)) (1 - e^-T sqrt(1+q^2)); gamma(T) never falls below it.
double lorentzian_gamma_floor(double T, double q, double alpha);

/// Smallest T beyond which gamma is guaranteed positive: ln sqrt(1+q^2).
double lorentzian_positive_after(double q);

/// min over a uniform scan T in [0, t_max] (step dT) of gamma(T; q), alpha = 1.
double min_lorentzian_gamma(double q, double t_max = 50.0, double dT = 1e-3);

struct ThresholdSearch {
    double t_max{50.0};
    double dT{1e-3};
    double s_hi{10.0};
    double tolerance{1e-6};
};

/// Smallest s* >= 0 such that the single-channel Lorentzian rate with q = s*
/// turns negative somewhere in [0, t_max]. Bisection on s over a dense T scan.
double negativity_threshold_s(const ThresholdSearch& search = {});

/// Undriven resonant qubit:
///     gamma(t) = 2 a l sinh(dt/2) / (d cosh(dt/2) + l sinh(dt/2)),  d = sqrt(l^2 - 2 a l).
/// For l < 2a the trigonometric continuation is used and the rate has poles;
/// evaluating within 1e-9 (relative) of one throws PoleError. l = 2a uses the
/// limit 2 a l t / (2 + l t).
double nondriven_rate(double t, double alpha, double lambda_width);

/// Excited-state amplitude G(t) of the undriven model: gamma = -2 G'/G and
/// exp(-int_0^t gamma) = G(t)^2. Regular for all t, sign changes at the poles of gamma.
double nondriven_amplitude(double t, double alpha, double lambda_width);
double nondriven_amplitude_rate(double t, double alpha, double lambda_width);

/// int_0^t gamma(s) ds = -2 ln|G(t)|; +inf exactly at a pole.
double nondriven_decay_integral(double t, double alpha, double lambda_width);

/// Pole locations of the undriven rate in [0, t_max] (empty for l >= 2a).
std::vector<double> nondriven_poles(double alpha, double lambda_width, double t_max);

} // namespace nonmark
