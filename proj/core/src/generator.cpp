#include "nonmark/generator.hpp"

#include "nonmark/error.hpp"

namespace nonmark {

Superop dissipator(const Mat2& jump, double gamma) {
    if (gamma == 0.0) {
        return Superop::Zero();
    }
    const Mat2 jump_dag = jump.adjoint();
    const Mat2 number = jump_dag * jump;
    return gamma * (sandwich(jump, jump_dag) - 0.5 * left_multiply(number) -
                    0.5 * right_multiply(number));
}

Superop hamiltonian_part(const Mat2& hamiltonian) {
    if (hermiticity_defect(hamiltonian) > 1e-12) {
        throw InputError("hamiltonian_part: H is not Hermitian");
    }
    return -kI * (left_multiply(hamiltonian) - right_multiply(hamiltonian));
}

Mat2 dressed_hamiltonian(const ModelParams& params) { return 0.5 * params.p() * ops::sigma_z(); }

Superop secular_dissipator(const RateSample& rates, const Coefficients& c) {
    return dissipator(ops::sigma_minus(), c.c_plus * c.c_plus * rates.gamma_of(Channel::Plus)) +
           dissipator(ops::sigma_plus(), c.c_minus * c.c_minus * rates.gamma_of(Channel::Minus)) +
           dissipator(ops::sigma_z(), c.c_zero * c.c_zero * rates.gamma_of(Channel::Zero));
}

Superop secular_generator(double T, const ModelParams& params) {
    const RateSample rates = rate_sample(T, params.s(), params.p(), params.alpha());
    return hamiltonian_part(dressed_hamiltonian(params)) + secular_dissipator(rates, params.coeffs);
}

std::array<NonsecularTerm, 6> nonsecular_term_list(const Coefficients& c) {
    const Mat2 sp = ops::sigma_plus();
    const Mat2 sm = ops::sigma_minus();
    const Mat2 sz = ops::sigma_z();
    return {{
        {Channel::Minus, c.c_minus * c.c_zero, sp, sz},
        {Channel::Minus, c.c_plus * c.c_minus, sp, sp},
        {Channel::Plus, c.c_plus * c.c_zero, sm, sz},
        {Channel::Plus, c.c_plus * c.c_minus, sm, sm},
        {Channel::Zero, c.c_minus * c.c_zero, sz, sm},
        {Channel::Zero, c.c_plus * c.c_zero, sz, sp},
    }};
}

Superop assemble_nonsecular(std::span<const NonsecularTerm> terms, const RateSample& rates) {
    Superop out = Superop::Zero();
    for (const NonsecularTerm& term : terms) {
        if (term.weight == 0.0) {
            continue;
        }
        const Complex rate = rates.complex_rate(term.channel);
        const Mat2& x = term.left;
        const Mat2& y = term.right;
        const Superop bracket = sandwich(x, y) - left_multiply(y * x);
        const Superop conjugate = sandwich(y.adjoint(), x.adjoint()) -
                                  right_multiply(x.adjoint() * y.adjoint());
        out += term.weight * (rate * bracket + std::conj(rate) * conjugate);
    }
    return out;
}

Superop nonsecular_terms(double T, const ModelParams& params) {
    const RateSample rates = rate_sample(T, params.s(), params.p(), params.alpha());
    const auto terms = nonsecular_term_list(params.coeffs);
    return assemble_nonsecular(terms, rates);
}

Superop full_generator(double T, const ModelParams& params) {
    const RateSample rates = rate_sample(T, params.s(), params.p(), params.alpha());
    const auto terms = nonsecular_term_list(params.coeffs);
    return hamiltonian_part(dressed_hamiltonian(params)) + secular_dissipator(rates, params.coeffs) +
           assemble_nonsecular(terms, rates);
}

Mat2 simplified_jump_operator(const Coefficients& c) {
    return c.c_minus * ops::sigma_plus() + c.c_plus * ops::sigma_minus() +
           c.c_zero * ops::sigma_z();
}

Mat2 lamb_shift_hamiltonian(double lamb, const Coefficients& c) {
    return lamb * c.c_zero * (c.c_plus - c.c_minus) * (ops::sigma_minus() + ops::sigma_plus());
}

Superop simplified_nonsecular_generator(double T, const ModelParams& params) {
    const RatePair rate = lorentzian_rate(T, params.s(), params.alpha());
    const Mat2 h = dressed_hamiltonian(params) + lamb_shift_hamiltonian(rate.lamb, params.coeffs);
    return hamiltonian_part(h) + dissipator(simplified_jump_operator(params.coeffs), rate.gamma);
}

Superop undriven_generator(double t, const ReservoirParams& reservoir) {
    return dissipator(ops::sigma_minus(),
                      nondriven_rate(t, reservoir.alpha, reservoir.lambda_width));
}

std::string_view to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::Secular: return "secular";
    case GeneratorKind::FullNonsecular: return "full";
    case GeneratorKind::SimplifiedNonsecular: return "simplified";
    case GeneratorKind::Undriven: return "undriven";
    }
    return "unknown";
}

GeneratorKind parse_generator_kind(std::string_view name) {
    if (name == "secular") return GeneratorKind::Secular;
    if (name == "full" || name == "intermediate") return GeneratorKind::FullNonsecular;
    if (name == "simplified" || name == "nonsecular") return GeneratorKind::SimplifiedNonsecular;
    if (name == "undriven") return GeneratorKind::Undriven;
    throw InputError("unknown regime '" + std::string(name) + "'");
}

GeneratorKind generator_for(Regime regime) {
    switch (regime) {
    case Regime::Secular: return GeneratorKind::Secular;
    case Regime::Intermediate: return GeneratorKind::FullNonsecular;
    case Regime::Nonsecular: return GeneratorKind::SimplifiedNonsecular;
    }
    return GeneratorKind::FullNonsecular;
}

GeneratorSpec GeneratorSpec::driven(GeneratorKind kind, const ModelParams& params) {
    if (kind == GeneratorKind::Undriven) {
        throw InputError("GeneratorSpec::driven called with the undriven kind");
    }
    return GeneratorSpec{kind, params};
}

GeneratorSpec GeneratorSpec::undriven(const ReservoirParams& reservoir) {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::Undriven;
    spec.params.reservoir = reservoir;
    return spec;
}

Superop GeneratorSpec::operator()(double t) const {
    switch (kind) {
    case GeneratorKind::Secular: return secular_generator(t, params);
    case GeneratorKind::FullNonsecular: return full_generator(t, params);
    case GeneratorKind::SimplifiedNonsecular: return simplified_nonsecular_generator(t, params);
    case GeneratorKind::Undriven: return undriven_generator(t, params.reservoir);
    }
    return Superop::Zero();
}

double GeneratorSpec::time_scale() const noexcept {
    return is_undriven() ? params.reservoir.lambda_width : 1.0;
}

} // namespace nonmark
