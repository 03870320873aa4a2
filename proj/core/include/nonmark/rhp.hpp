// Divisibility-based non-Markovianity. g(t) comes from the Choi state of the local
// generator; the measure is N = I / (I + 1).

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "nonmark/generator.hpp"
#include "nonmark/types.hpp"

namespace nonmark {

/// Bipartite probe state |phi> (system (x) ancilla, index 2 i + j) and the step ladder
/// for the derivative limit.
struct ChoiProbe {
    Vec4 state;
    std::array<double, 3> ladder{1e-7, 5e-8, 2.5e-8};
    /// Divide the ladder by max(1, ||L||_F) so eps * L stays a small perturbation.
    bool scale_ladder{true};

    /// (|00> + e^{i relative_phase} |11>) / sqrt 2, times a global phase.
    static ChoiProbe bell(double relative_phase = 0.0, double global_phase = 0.0);

    Mat4 projector() const { return state * state.adjoint(); }
};

/// (L (x) id)(|phi><phi|): L applied to the system factor of every ancilla block.
Mat4 choi_action(const Superop& generator, const Vec4& phi);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const Mat4& hermitian);

/// || |phi><phi| + eps X ||_1 - 1 for Hermitian X with the three eigenvalues of order
/// eps resolved through the Schur complement against |phi>, so they keep relative
/// precision even when eps is tiny.
double trace_norm_excess(const Vec4& phi, const Mat4& perturbation, double eps);

/// P(x) = -x for x < 0, else 0.
constexpr double negative_part(double x) noexcept { return x < 0.0 ? -x : 0.0; }

/// lim (|| {I + eps (L (x) I)} |phi><phi| ||_1 - 1) / eps by a difference quotient on
/// the probe ladder and one Richardson step. Clamped at 0; throws InstabilityError
/// when the extrapolation does not settle or the pre-clamp value is below -1e-7.
double g_numeric(const Superop& generator, const ChoiProbe& probe = ChoiProbe::bell());
double g_numeric(const GeneratorSpec& spec, double t, const ChoiProbe& probe = ChoiProbe::bell());

/// Consistent:  C+^2 P[g+] + C-^2 P[g-] + 2 C0^2 P[g0]
/// AsPublished: the same divided by 2.
double g_secular_analytic(const RateSample& rates, const Coefficients& coeffs,
                          ClosedForm form = ClosedForm::Consistent);

/// Consistent:  (C+^2 + C-^2 + 2 C0^2) P[gamma] = P[gamma]
/// AsPublished: (C+^2 + C-^2 + 2 C0) P[gamma] / 2, literally.
double g_nonsecular_analytic(double gamma, const Coefficients& coeffs,
                             ClosedForm form = ClosedForm::Consistent);

/// Consistent: P[gamma]; AsPublished: P[gamma] / 2.
double g_undriven_analytic(double gamma, ClosedForm form = ClosedForm::Consistent);

bool has_closed_form(GeneratorKind kind) noexcept;

/// Closed-form g for the generator's regime. Throws InputError for FullNonsecular.
double g_analytic(const GeneratorSpec& spec, double t, ClosedForm form = ClosedForm::Consistent);

enum class RhpMethod { Numeric, Analytic, Both };

std::string_view to_string(RhpMethod method);
RhpMethod parse_rhp_method(std::string_view name);

struct RhpOptions {
    RhpMethod method{RhpMethod::Numeric};
    ClosedForm form{ClosedForm::Consistent};
    ChoiProbe probe{ChoiProbe::bell()};
};

struct RhpReport {
    std::vector<double> grid;
    std::vector<double> g_numeric; // empty unless computed; NaN at pole points
    std::vector<double> g_analytic;
    double integral{0.0};
    double measure{0.0};
    std::string method; // numeric | secular-analytic | nonsecular-analytic | undriven-analytic
    /// max |g_numeric - g_analytic| over the grid when both were computed.
    double max_cross_error{0.0};
    /// Upper bound on the contribution beyond the grid end (driven Lorentzian rates).
    double tail_bound{0.0};
    /// A rate pole inside the grid makes the integral diverge (integral = inf, measure = 1).
    bool divergent{false};
    std::vector<double> poles;
};

/// g on the grid, trapezoid integral I, N = I / (I + 1).
RhpReport rhp_measure(const GeneratorSpec& spec, std::span<const double> grid,
                      const RhpOptions& options = {});

} // namespace nonmark
