// Superoperators L(t) of the driven and undriven qubit.
//
// Driven regimes live in the dressed basis {|psi+>, |psi->} and use the
// dimensionless time T = lambda t; the Hamiltonian is (p/2) sigma_z in those units.
// The undriven regime lives in the bare basis {|e>, |g>} and uses physical time.

#pragma once

#include <array>
#include <span>
#include <string_view>

#include "nonmark/params.hpp"
#include "nonmark/rates.hpp"
#include "nonmark/types.hpp"

namespace nonmark {

/// gamma (A rho A^dagger - 1/2 {A^dagger A, rho}); linear in gamma, negative allowed.
Superop dissipator(const Mat2& jump, double gamma);

/// -i [H, rho]. Throws InputError if H is not Hermitian to 1e-12.
Superop hamiltonian_part(const Mat2& hamiltonian);

/// (p/2) sigma_z in units of lambda.
Mat2 dressed_hamiltonian(const ModelParams& params);

/// C+^2 L[sigma-, gamma+] + C-^2 L[sigma+, gamma-] + C0^2 L[sigma_z, gamma0].
/// Note the pairing: gamma+ drives sigma-, gamma- drives sigma+.
Superop secular_dissipator(const RateSample& rates, const Coefficients& coeffs);

/// Hamiltonian part plus secular dissipator.
Superop secular_generator(double T, const ModelParams& params);

/// One bracket of the nonsecular dissipator:
///     Gamma_channel * weight * [X rho Y - Y X rho]  +  its Hermitian conjugate
///     conj(Gamma_channel) * weight * [Y^dag rho X^dag - rho X^dag Y^dag].
struct NonsecularTerm {
    Channel channel;
    double weight;
    Mat2 left;  // X
    Mat2 right; // Y
};

/// The six brackets, in the order they are usually written.
std::array<NonsecularTerm, 6> nonsecular_term_list(const Coefficients& coeffs);

/// Sum of the given brackets (each with its Hermitian conjugate).
Superop assemble_nonsecular(std::span<const NonsecularTerm> terms, const RateSample& rates);

Superop nonsecular_terms(double T, const ModelParams& params);

/// Hamiltonian part + secular dissipator + nonsecular terms.
Superop full_generator(double T, const ModelParams& params);

/// A = C- sigma+ + C+ sigma- + C0 sigma_z.
Mat2 simplified_jump_operator(const Coefficients& coeffs);

/// H' = lamb C0 (C+ - C-) (sigma- + sigma+).
Mat2 lamb_shift_hamiltonian(double lamb, const Coefficients& coeffs);

/// p << 1 form: -i[H + H'(T), .] + L[A, gamma(T)] with the common rate at q = s.
Superop simplified_nonsecular_generator(double T, const ModelParams& params);

/// gamma(t) (sigma- rho sigma+ - 1/2 {sigma+ sigma-, rho}) in the bare basis.
Superop undriven_generator(double t, const ReservoirParams& reservoir);

enum class GeneratorKind { Secular, FullNonsecular, SimplifiedNonsecular, Undriven };

std::string_view to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(std::string_view name);

/// Secular -> Secular, Intermediate -> FullNonsecular, Nonsecular -> SimplifiedNonsecular.
GeneratorKind generator_for(Regime regime);

/// A generator choice plus the parameters it reads. Pure value type; evaluation
/// is a pure function of time.
struct GeneratorSpec {
    GeneratorKind kind{GeneratorKind::Secular};
    ModelParams params;

    static GeneratorSpec driven(GeneratorKind kind, const ModelParams& params);
    static GeneratorSpec undriven(const ReservoirParams& reservoir);

    Superop operator()(double t) const;

    bool is_undriven() const noexcept { return kind == GeneratorKind::Undriven; }

    /// 1 for the dimensionless driven models; lambda for the undriven model
    /// (default horizons and steps are divided by it).
    double time_scale() const noexcept;
};

} // namespace nonmark
