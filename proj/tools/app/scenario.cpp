#include "scenario.hpp"

#include <cmath>

#include "nonmark/dynamics.hpp"
#include "nonmark/error.hpp"
#include "output.hpp"

namespace nonmark::app {

namespace {

std::string number(double v) { return format_number(v); }

} // namespace

RegimeChoice parse_regime_choice(std::string_view name) {
    if (name == "auto") return RegimeChoice::Auto;
    if (name == "secular") return RegimeChoice::Secular;
    if (name == "intermediate" || name == "full") return RegimeChoice::Intermediate;
    if (name == "nonsecular" || name == "simplified") return RegimeChoice::Nonsecular;
    if (name == "undriven") return RegimeChoice::Undriven;
    throw InputError("unknown regime '" + std::string(name) +
                     "' (auto, secular, intermediate, nonsecular, undriven)");
}

std::string_view to_string(RegimeChoice choice) {
    switch (choice) {
    case RegimeChoice::Auto: return "auto";
    case RegimeChoice::Secular: return "secular";
    case RegimeChoice::Intermediate: return "intermediate";
    case RegimeChoice::Nonsecular: return "nonsecular";
    case RegimeChoice::Undriven: return "undriven";
    }
    return "auto";
}

GeneratorSpec Scenario::spec() const {
    const ReservoirParams r = ReservoirParams::make(reservoir.alpha, reservoir.lambda_width, reservoir.omega_0);
    if (regime == RegimeChoice::Undriven) {
        return GeneratorSpec::undriven(r);
    }
    const DriveParams d = DriveParams::make(drive.omega_A, drive.omega_L, drive.Omega);
    ModelParams m = ModelParams::make(d, r);
    if (s) {
        m.regime.s = *s;
    }
    if (p) {
        if (*p < 0.0) {
            throw InputError("p must be >= 0");
        }
        m.regime.p = *p;
    }
    GeneratorKind kind = GeneratorKind::Secular;
    switch (regime) {
    case RegimeChoice::Auto: kind = generator_for(classify_regime(m.p())); break;
    case RegimeChoice::Secular: kind = GeneratorKind::Secular; break;
    case RegimeChoice::Intermediate: kind = GeneratorKind::FullNonsecular; break;
    case RegimeChoice::Nonsecular: kind = GeneratorKind::SimplifiedNonsecular; break;
    case RegimeChoice::Undriven: break;
    }
    return GeneratorSpec::driven(kind, m);
}

std::vector<double> Scenario::integration_grid() const {
    const double scale = reservoir.lambda_width;
    const double unit = regime == RegimeChoice::Undriven ? 1.0 / scale : 1.0;
    return uniform_grid(tmax * unit, step * unit);
}

std::vector<double> Scenario::rhp_grid() const {
    const double unit = regime == RegimeChoice::Undriven ? 1.0 / reservoir.lambda_width : 1.0;
    return uniform_grid(tmax * unit, rhp_step * unit);
}

void Scenario::set(std::string_view name, double value) {
    if (name == "s") s = value;
    else if (name == "p") p = value;
    else if (name == "alpha") reservoir.alpha = value;
    else if (name == "lambda") reservoir.lambda_width = value;
    else if (name == "omega0") reservoir.omega_0 = value;
    else if (name == "omegaA") drive.omega_A = value;
    else if (name == "omegaL") drive.omega_L = value;
    else if (name == "Omega") drive.Omega = value;
    else throw InputError("unknown parameter '" + std::string(name) +
                          "' (s, p, alpha, lambda, omega0, omegaA, omegaL, Omega)");
}

Provenance Scenario::provenance() const {
    Provenance out{
        {"regime", std::string(to_string(regime))},
        {"alpha", number(reservoir.alpha)},
        {"lambda", number(reservoir.lambda_width)},
        {"omega0", number(reservoir.omega_0)},
        {"omegaA", number(drive.omega_A)},
        {"omegaL", number(drive.omega_L)},
        {"Omega", number(drive.Omega)},
        {"s", s ? number(*s) : "derived"},
        {"p", p ? number(*p) : "derived"},
        {"tmax", number(tmax)},
        {"step", number(step)},
        {"rhp_step", number(rhp_step)},
        {"seed", std::to_string(seed)},
    };
    try {
        const GeneratorSpec g = spec();
        out.emplace_back("generator", std::string(nonmark::to_string(g.kind)));
        if (!g.is_undriven()) {
            out.emplace_back("s_resolved", number(g.params.s()));
            out.emplace_back("p_resolved", number(g.params.p()));
            out.emplace_back("c_plus", number(g.params.coeffs.c_plus));
            out.emplace_back("c_minus", number(g.params.coeffs.c_minus));
            out.emplace_back("c_zero", number(g.params.coeffs.c_zero));
        }
    } catch (const Error&) {
        out.emplace_back("generator", "invalid");
    }
    return out;
}

std::vector<std::string> Scenario::warnings() const {
    if (regime == RegimeChoice::Undriven || (s && p)) {
        return {};
    }
    return validity_warnings(drive);
}

void apply_param_map(Scenario& scenario, const ParamMap& map) {
    for (const auto& [key, value] : map) {
        if (key == "omega_A") scenario.drive.omega_A = value;
        else if (key == "omega_L") scenario.drive.omega_L = value;
        else if (key == "Omega") scenario.drive.Omega = value;
        else if (key == "alpha") scenario.reservoir.alpha = value;
        else if (key == "lambda") scenario.reservoir.lambda_width = value;
        else if (key == "omega_0") scenario.reservoir.omega_0 = value;
    }
}

} // namespace nonmark::app
