#include "nonmark/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nonmark/error.hpp"

namespace nonmark {

namespace {

void require_nonnegative_time(double t) {
    if (!(t >= 0.0)) {
        std::ostringstream os;
        os << "time must be >= 0 (got " << t << ")";
        throw DomainError(os.str());
    }
}

// Branch of the undriven model: sign of lambda^2 - 2 alpha lambda.
struct UndrivenBranch {
    enum Kind { Hyperbolic, Critical, Oscillatory } kind;
    double d; // |lambda^2 - 2 alpha lambda|^(1/2)
};

UndrivenBranch branch_of(double alpha, double lambda_width) {
    const double disc = lambda_width * lambda_width - 2.0 * alpha * lambda_width;
    if (disc > 0.0) {
        return {UndrivenBranch::Hyperbolic, std::sqrt(disc)};
    }
    if (disc < 0.0) {
        return {UndrivenBranch::Oscillatory, std::sqrt(-disc)};
    }
    return {UndrivenBranch::Critical, 0.0};
}

// sinh(x)/x, accurate near 0
double sinhc(double x) {
    if (std::abs(x) < 1e-4) {
        return 1.0 + x * x / 6.0;
    }
    return std::sinh(x) / x;
}

} // namespace

double QTriple::operator[](Channel c) const noexcept {
    switch (c) {
    case Channel::Minus: return q_minus;
    case Channel::Zero: return q_zero;
    case Channel::Plus: return q_plus;
    }
    return q_zero;
}

RatePair lorentzian_rate(double T, double q, double alpha) {
    require_nonnegative_time(T);
    const double a2 = alpha * alpha;
    const double norm = 1.0 + q * q;
    const double e = std::exp(-T);
    const double c = std::cos(q * T);
    const double s = std::sin(q * T);
    return RatePair{a2 / (2.0 * norm) * (1.0 - e * c + e * q * s),
                    a2 / norm * (-q + e * q * c + e * s)};
}

RateSample rate_sample(double T, double s, double p, double alpha) {
    const QTriple q = QTriple::make(s, p);
    RateSample out;
    out.T = T;
    for (Channel c : kChannels) {
        const RatePair r = lorentzian_rate(T, q[c], alpha);
        out.gamma[static_cast<int>(c)] = r.gamma;
        out.lamb[static_cast<int>(c)] = r.lamb;
    }
    return out;
}

double lorentzian_gamma_floor(double T, double q, double alpha) {
    const double norm = 1.0 + q * q;
    return alpha * alpha / (2.0 * norm) * (1.0 - std::exp(-T) * std::sqrt(norm));
}

double lorentzian_positive_after(double q) { return 0.5 * std::log1p(q * q); }

double min_lorentzian_gamma(double q, double t_max, double dT) {
    const auto n = static_cast<long>(std::ceil(t_max / dT));
    double lo = 0.0;
    for (long k = 0; k <= n; ++k) {
        const double T = std::min(t_max, static_cast<double>(k) * dT);
        lo = std::min(lo, lorentzian_rate(T, q, 1.0).gamma);
    }
    return lo;
}

double negativity_threshold_s(const ThresholdSearch& search) {
    auto negative = [&](double s) { return min_lorentzian_gamma(s, search.t_max, search.dT) < 0.0; };
    double lo = 0.0;
    double hi = search.s_hi;
    if (negative(lo)) {
        return 0.0;
    }
    if (!negative(hi)) {
        throw NumericError("negativity threshold not bracketed below s_hi");
    }
    while (hi - lo > search.tolerance) {
        const double mid = 0.5 * (lo + hi);
        (negative(mid) ? hi : lo) = mid;
    }
    return hi;
}

double nondriven_rate(double t, double alpha, double lambda_width) {
    require_nonnegative_time(t);
    const UndrivenBranch b = branch_of(alpha, lambda_width);
    const double al2 = 2.0 * alpha * lambda_width;
    switch (b.kind) {
    case UndrivenBranch::Critical:
        return al2 * t / (2.0 + lambda_width * t);
    case UndrivenBranch::Hyperbolic: {
        // divide through by cosh to stay finite at large t
        const double th = std::tanh(0.5 * b.d * t);
        return al2 * th / (b.d + lambda_width * th);
    }
    case UndrivenBranch::Oscillatory: {
        const double x = 0.5 * b.d * t;
        const double num = std::sin(x);
        const double den_a = b.d * std::cos(x);
        const double den_b = lambda_width * num;
        const double den = den_a + den_b;
        if (std::abs(den) <= 1e-9 * (std::abs(den_a) + std::abs(den_b))) {
            std::ostringstream os;
            os << "undriven rate has a pole at t = " << t;
            throw PoleError(os.str(), t);
        }
        return al2 * num / den;
    }
    }
    return 0.0;
}

double nondriven_amplitude(double t, double alpha, double lambda_width) {
    require_nonnegative_time(t);
    const UndrivenBranch b = branch_of(alpha, lambda_width);
    const double half_decay = 0.5 * lambda_width * t;
    const double x = 0.5 * b.d * t;
    switch (b.kind) {
    case UndrivenBranch::Critical:
        return std::exp(-half_decay) * (1.0 + half_decay);
    case UndrivenBranch::Hyperbolic: {
        // e^{-lt/2} [cosh x + (lt/2) sinh(x)/x], exponents combined to avoid overflow
        const double cosh_part = 0.5 * (std::exp(x - half_decay) + std::exp(-x - half_decay));
        double sinhc_part = 0.0;
        if (x < 1e-4) {
            sinhc_part = sinhc(x) * std::exp(-half_decay);
        } else {
            sinhc_part = (std::exp(x - half_decay) - std::exp(-x - half_decay)) / (2.0 * x);
        }
        return cosh_part + half_decay * sinhc_part;
    }
    case UndrivenBranch::Oscillatory:
        return std::exp(-half_decay) * (std::cos(x) + lambda_width / b.d * std::sin(x));
    }
    return 0.0;
}

double nondriven_amplitude_rate(double t, double alpha, double lambda_width) {
    require_nonnegative_time(t);
    const UndrivenBranch b = branch_of(alpha, lambda_width);
    const double half_decay = 0.5 * lambda_width * t;
    const double x = 0.5 * b.d * t;
    const double pre = -alpha * lambda_width * 0.5 * t;
    switch (b.kind) {
    case UndrivenBranch::Critical:
        return pre * std::exp(-half_decay);
    case UndrivenBranch::Hyperbolic:
        if (x < 1e-4) {
            return pre * sinhc(x) * std::exp(-half_decay);
        }
        return pre * (std::exp(x - half_decay) - std::exp(-x - half_decay)) / (2.0 * x);
    case UndrivenBranch::Oscillatory:
        return -alpha * lambda_width / b.d * std::exp(-half_decay) * std::sin(x);
    }
    return 0.0;
}

double nondriven_decay_integral(double t, double alpha, double lambda_width) {
    const double g = nondriven_amplitude(t, alpha, lambda_width);
    if (g == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return -2.0 * std::log(std::abs(g));
}

std::vector<double> nondriven_poles(double alpha, double lambda_width, double t_max) {
    std::vector<double> out;
    const UndrivenBranch b = branch_of(alpha, lambda_width);
    if (b.kind != UndrivenBranch::Oscillatory) {
        return out;
    }
    // d cos x + l sin x = 0  <=>  x = pi - atan(d / l) + k pi
    const double first = std::numbers::pi - std::atan(b.d / lambda_width);
    for (int k = 0;; ++k) {
        const double t = 2.0 * (first + k * std::numbers::pi) / b.d;
        if (t > t_max) {
            break;
        }
        out.push_back(t);
    }
    return out;
}

} // namespace nonmark
