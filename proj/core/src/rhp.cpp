#include "nonmark/rhp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nonmark/error.hpp"
#include "nonmark/rates.hpp"

namespace nonmark {

namespace {

using Mat3 = Eigen::Matrix3cd;

double trapezoid(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
        sum += 0.5 * (x[k] - x[k - 1]) * (y[k] + y[k - 1]);
    }
    return sum;
}

// integral over [t_max, inf) of the largest possible negative part of a Lorentzian rate
double lorentzian_tail(double t_max, double q, double alpha) {
    const double settle = lorentzian_positive_after(q);
    if (t_max >= settle) {
        return 0.0;
    }
    const double norm = 1.0 + q * q;
    return alpha * alpha / (2.0 * norm) *
           (std::sqrt(norm) * (std::exp(-t_max) - std::exp(-settle)) - (settle - t_max));
}

double tail_bound_for(const GeneratorSpec& spec, double t_max) {
    const ModelParams& m = spec.params;
    const QTriple q = QTriple::make(m.s(), m.p());
    const Coefficients& c = m.coeffs;
    switch (spec.kind) {
    case GeneratorKind::Secular:
        return c.c_minus * c.c_minus * lorentzian_tail(t_max, q.q_minus, m.alpha()) +
               2.0 * c.c_zero * c.c_zero * lorentzian_tail(t_max, q.q_zero, m.alpha()) +
               c.c_plus * c.c_plus * lorentzian_tail(t_max, q.q_plus, m.alpha());
    case GeneratorKind::FullNonsecular:
        return lorentzian_tail(t_max, q.q_minus, m.alpha()) +
               lorentzian_tail(t_max, q.q_zero, m.alpha()) +
               lorentzian_tail(t_max, q.q_plus, m.alpha());
    case GeneratorKind::SimplifiedNonsecular:
        return lorentzian_tail(t_max, q.q_zero, m.alpha());
    case GeneratorKind::Undriven:
        return 0.0;
    }
    return 0.0;
}

} // namespace

ChoiProbe ChoiProbe::bell(double relative_phase, double global_phase) {
    ChoiProbe probe;
    const Complex g = std::polar(1.0, global_phase);
    probe.state = Vec4::Zero();
    probe.state(0) = g / std::numbers::sqrt2;
    probe.state(3) = g * std::polar(1.0, relative_phase) / std::numbers::sqrt2;
    return probe;
}

Mat4 choi_action(const Superop& generator, const Vec4& phi) {
    // |phi><phi| = sum_{j,l} B_jl (x) |j><l| with B_jl = sum_{i,k} phi_{2i+j} conj(phi_{2k+l}) |i><k|
    Mat4 out = Mat4::Zero();
    for (int j = 0; j < 2; ++j) {
        for (int l = 0; l < 2; ++l) {
            Mat2 block;
            for (int i = 0; i < 2; ++i) {
                for (int k = 0; k < 2; ++k) {
                    block(i, k) = phi(2 * i + j) * std::conj(phi(2 * k + l));
                }
            }
            const Mat2 image = nonmark::apply(generator, block);
            for (int i = 0; i < 2; ++i) {
                for (int k = 0; k < 2; ++k) {
                    out(2 * i + j, 2 * k + l) += image(i, k);
                }
            }
        }
    }
    return out;
}

double trace_norm(const Mat4& hermitian) {
    const Mat4 h = 0.5 * (hermitian + hermitian.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat4> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
}

double trace_norm_excess(const Vec4& phi, const Mat4& perturbation, double eps) {
    // Unitary whose first column is |phi> up to phase.
    const Eigen::HouseholderQR<Vec4> qr(phi);
    const Mat4 q = qr.householderQ();
    const Mat4 x = 0.5 * (perturbation + perturbation.adjoint());
    const Mat4 rotated = q.adjoint() * x * q;

    const double a = rotated(0, 0).real();
    const Eigen::Vector3cd b = rotated.block<3, 1>(1, 0);
    const Mat3 c = rotated.block<3, 3>(1, 1);
    const Mat3 coupling = b * b.adjoint();

    // The eigenvalues mu of order eps solve  mu in spec(eps C - eps^2 b b^dag / (1 + eps a - mu)).
    std::array<double, 3> mu{};
    Eigen::SelfAdjointEigenSolver<Mat3> solver;
    solver.compute(eps * c - eps * eps / (1.0 + eps * a) * coupling, Eigen::EigenvaluesOnly);
    for (int k = 0; k < 3; ++k) {
        mu[k] = solver.eigenvalues()(k);
    }
    for (int iter = 0; iter < 2; ++iter) {
        for (int k = 0; k < 3; ++k) {
            solver.compute(eps * c - eps * eps / (1.0 + eps * a - mu[k]) * coupling,
                           Eigen::EigenvaluesOnly);
            mu[k] = solver.eigenvalues()(k);
        }
    }
    double negative = 0.0;
    for (double m : mu) {
        negative += negative_part(m);
    }
    // ||M||_1 = Tr M + 2 sum |negative eigenvalues|, Tr M = 1 + eps Tr X.
    return eps * x.trace().real() + 2.0 * negative;
}

double g_numeric(const Superop& generator, const ChoiProbe& probe) {
    const Mat4 x = choi_action(generator, probe.state);
    const double scale = std::max(1.0, generator.norm());
    std::array<double, 3> quotient{};
    std::array<double, 3> eps{};
    for (std::size_t k = 0; k < 3; ++k) {
        eps[k] = probe.scale_ladder ? probe.ladder[k] / scale : probe.ladder[k];
        quotient[k] = trace_norm_excess(probe.state, x, eps[k]) / eps[k];
    }
    auto richardson = [&](std::size_t i) {
        const double r = eps[i] / eps[i + 1];
        return (r * quotient[i + 1] - quotient[i]) / (r - 1.0);
    };
    const double coarse = richardson(0);
    const double fine = richardson(1);
    if (!std::isfinite(fine) || std::abs(fine - coarse) > 1e-6 * std::max(std::abs(fine), scale)) {
        std::ostringstream os;
        os << "g extrapolation did not converge (" << coarse << " vs " << fine << ")";
        throw InstabilityError(os.str());
    }
    // Tr X is zero up to rounding for trace-preserving generators
    if (std::abs(fine) <= 64.0 * std::numeric_limits<double>::epsilon() * scale) {
        return 0.0;
    }
    if (fine < -1e-7) {
        std::ostringstream os;
        os << "g extrapolated to a negative value " << fine;
        throw InstabilityError(os.str());
    }
    return std::max(fine, 0.0);
}

double g_numeric(const GeneratorSpec& spec, double t, const ChoiProbe& probe) {
    return g_numeric(spec(t), probe);
}

double g_secular_analytic(const RateSample& rates, const Coefficients& c, ClosedForm form) {
    const double g = c.c_plus * c.c_plus * negative_part(rates.gamma_of(Channel::Plus)) +
                     c.c_minus * c.c_minus * negative_part(rates.gamma_of(Channel::Minus)) +
                     2.0 * c.c_zero * c.c_zero * negative_part(rates.gamma_of(Channel::Zero));
    return form == ClosedForm::Consistent ? g : 0.5 * g;
}

double g_nonsecular_analytic(double gamma, const Coefficients& c, ClosedForm form) {
    const double cc = c.c_plus * c.c_plus + c.c_minus * c.c_minus;
    if (form == ClosedForm::Consistent) {
        return (cc + 2.0 * c.c_zero * c.c_zero) * negative_part(gamma);
    }
    return (cc + 2.0 * c.c_zero) * negative_part(gamma) / 2.0;
}

double g_undriven_analytic(double gamma, ClosedForm form) {
    return form == ClosedForm::Consistent ? negative_part(gamma) : 0.5 * negative_part(gamma);
}

bool has_closed_form(GeneratorKind kind) noexcept { return kind != GeneratorKind::FullNonsecular; }

double g_analytic(const GeneratorSpec& spec, double t, ClosedForm form) {
    const ModelParams& m = spec.params;
    switch (spec.kind) {
    case GeneratorKind::Secular:
        return g_secular_analytic(rate_sample(t, m.s(), m.p(), m.alpha()), m.coeffs, form);
    case GeneratorKind::SimplifiedNonsecular:
        return g_nonsecular_analytic(lorentzian_rate(t, m.s(), m.alpha()).gamma, m.coeffs, form);
    case GeneratorKind::Undriven:
        return g_undriven_analytic(
            nondriven_rate(t, m.reservoir.alpha, m.reservoir.lambda_width), form);
    case GeneratorKind::FullNonsecular:
        break;
    }
    throw InputError("no closed form for g in the full nonsecular regime");
}

std::string_view to_string(RhpMethod method) {
    switch (method) {
    case RhpMethod::Numeric: return "numeric";
    case RhpMethod::Analytic: return "analytic";
    case RhpMethod::Both: return "both";
    }
    return "numeric";
}

RhpMethod parse_rhp_method(std::string_view name) {
    if (name == "numeric") return RhpMethod::Numeric;
    if (name == "analytic") return RhpMethod::Analytic;
    if (name == "both") return RhpMethod::Both;
    throw InputError("unknown rhp method '" + std::string(name) + "'");
}

RhpReport rhp_measure(const GeneratorSpec& spec, std::span<const double> grid,
                      const RhpOptions& options) {
    if (grid.size() < 2 || !(grid.back() > grid.front())) {
        throw InputError("rhp_measure needs a grid with T_max > 0");
    }
    const bool numeric = options.method != RhpMethod::Analytic;
    const bool analytic = options.method != RhpMethod::Numeric;
    if (analytic && !has_closed_form(spec.kind)) {
        throw InputError("no closed form for g in the full nonsecular regime; use method numeric");
    }

    RhpReport report;
    report.grid.assign(grid.begin(), grid.end());
    if (spec.is_undriven()) {
        const auto& r = spec.params.reservoir;
        report.poles = nondriven_poles(r.alpha, r.lambda_width, grid.back());
        report.divergent = !report.poles.empty();
    }

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    if (numeric) {
        report.g_numeric.resize(grid.size());
    }
    if (analytic) {
        report.g_analytic.resize(grid.size());
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        try {
            if (numeric) {
                report.g_numeric[k] = g_numeric(spec, grid[k], options.probe);
            }
            if (analytic) {
                report.g_analytic[k] = g_analytic(spec, grid[k], options.form);
            }
        } catch (const PoleError&) {
            if (numeric) report.g_numeric[k] = nan;
            if (analytic) report.g_analytic[k] = nan;
        }
        if (numeric && analytic && std::isfinite(report.g_numeric[k])) {
            report.max_cross_error = std::max(
                report.max_cross_error, std::abs(report.g_numeric[k] - report.g_analytic[k]));
        }
    }

    if (numeric) {
        report.method = "numeric";
    } else {
        switch (spec.kind) {
        case GeneratorKind::Secular: report.method = "secular-analytic"; break;
        case GeneratorKind::SimplifiedNonsecular: report.method = "nonsecular-analytic"; break;
        default: report.method = "undriven-analytic"; break;
        }
    }

    if (report.divergent) {
        report.integral = std::numeric_limits<double>::infinity();
        report.measure = 1.0;
        return report;
    }
    const std::vector<double>& g = numeric ? report.g_numeric : report.g_analytic;
    report.integral = trapezoid(grid, g);
    report.measure = report.integral / (report.integral + 1.0);
    report.tail_bound = tail_bound_for(spec, grid.back());
    return report;
}

} // namespace nonmark
