// Run configuration shared by every subcommand.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonmark/generator.hpp"
#include "nonmark/params.hpp"

namespace nonmark::app {

/// Ordered key=value pairs written at the top of every output file.
using Provenance = std::vector<std::pair<std::string, std::string>>;

/// "auto" picks the generator from the regime of p.
enum class RegimeChoice { Auto, Secular, Intermediate, Nonsecular, Undriven };

RegimeChoice parse_regime_choice(std::string_view name);
std::string_view to_string(RegimeChoice choice);

struct Scenario {
    RegimeChoice regime{RegimeChoice::Auto};
    DriveParams drive{1000.0, 1000.0, 10.0};
    ReservoirParams reservoir{0.5, 1.0, 1000.0};
    // Dimensionless overrides of the derived s and p. The drive still fixes the
    // coefficients through detuning : Omega.
    std::optional<double> s;
    std::optional<double> p;
    double tmax{30.0};     // in units of 1 / lambda
    double step{1e-3};     // integration and BLP grid step, units of 1 / lambda
    double rhp_step{1e-2}; // RHP grid step, units of 1 / lambda
    std::uint64_t seed{0};

    /// Validates and assembles the generator.
    GeneratorSpec spec() const;

    /// Grids in the generator's own time variable.
    std::vector<double> integration_grid() const;
    std::vector<double> rhp_grid() const;

    /// Sets one named parameter: s, p, alpha, lambda, omega0, omegaA, omegaL, Omega.
    void set(std::string_view name, double value);

    Provenance provenance() const;
    std::vector<std::string> warnings() const;
};

/// Applies a parsed config file (keys omega_A, omega_L, Omega, alpha, lambda, omega_0).
void apply_param_map(Scenario& scenario, const ParamMap& map);

} // namespace nonmark::app
