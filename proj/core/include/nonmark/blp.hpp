// Trace-distance dynamics and the BLP measure.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "nonmark/dynamics.hpp"
#include "nonmark/generator.hpp"
#include "nonmark/types.hpp"

namespace nonmark {

/// Half the trace norm of rho1 - rho2, from the eigenvalues of the difference.
double trace_distance(const QubitState& rho1, const QubitState& rho2);
/// Half the Euclidean distance of the Bloch vectors.
double trace_distance(const BlochVector& r1, const BlochVector& r2);

struct StatePair {
    QubitState rho1;
    QubitState rho2;
    BlochVector deltas{BlochVector::Zero()}; // r1(0) - r2(0)

    static StatePair from_bloch(const BlochVector& r1, const BlochVector& r2);
    /// Pure states at polar/azimuthal angles (theta1, phi1), (theta2, phi2).
    static StatePair from_angles(const std::array<double, 4>& angles);
};

BlochVector unit_bloch(double theta, double phi);

/// d/dt of a sampled series: three-point Lagrange differences, centred in the interior
/// and one-sided (second order) at both ends. Needs at least three points.
std::vector<double> sigma_numeric(std::span<const double> grid, std::span<const double> distances);
/// sigma along two trajectories on a shared grid; throws InputError otherwise.
std::vector<double> sigma_numeric(const Trajectory& first, const Trajectory& second);
std::vector<double> trace_distance_series(const Trajectory& first, const Trajectory& second);

double trapezoid(std::span<const double> grid, std::span<const double> values);
/// Running trapezoid integral, starting at 0.
std::vector<double> cumulative_trapezoid(std::span<const double> grid,
                                         std::span<const double> values);
/// Trapezoid integral of max(sigma, 0).
double positive_integral(std::span<const double> grid, std::span<const double> sigma);

/// Secular regime. With Gamma' = (C+^2 g+ + C-^2 g- + 4 C0^2 g0) / 2 and
/// Lambda' = C+^2 g+ + C-^2 g-, both integrated by cumulative trapezoid on `grid`:
/// Consistent:  coherences decay with Gamma, populations with Lambda.
/// AsPublished: the printed assignment, with Gamma and Lambda exchanged.
std::vector<double> sigma_secular_analytic(const BlochVector& deltas, std::span<const double> grid,
                                           const ModelParams& params,
                                           ClosedForm form = ClosedForm::Consistent);

/// Resonant (Delta = 0) simplified nonsecular regime, rate gamma at q = s.
/// Consistent:  -g [2 e^{-2G} dx^2 + e^{-G}(dy^2 + dz^2)] / (4 sqrt(e^{-2G} dx^2 + e^{-G}(dy^2 + dz^2)))
/// AsPublished: the printed expression.
/// Throws InputError when the coefficients are not resonant.
std::vector<double> sigma_resonant_nonsecular_analytic(const BlochVector& deltas,
                                                       std::span<const double> grid,
                                                       const ModelParams& params,
                                                       ClosedForm form = ClosedForm::Consistent);

/// Undriven model on a grid in physical time. Gamma(t) = -2 ln|G(t)| from the exact
/// amplitude; at rate poles the expression is evaluated through G and dG/dt directly.
std::vector<double> sigma_undriven_analytic(const BlochVector& deltas, std::span<const double> grid,
                                            const ReservoirParams& reservoir);

struct BlpSearchConfig {
    int directions{128};
    int random_pairs{64};
    int refine_seeds{3};
    int max_iterations{400};
    double simplex_step{0.25};
    double tolerance{1e-10};
    std::uint64_t seed{0};
    IntegratorOptions integrator{};
};

struct PairCandidate {
    std::array<double, 4> angles{};
    BlochVector r1{BlochVector::Zero()};
    BlochVector r2{BlochVector::Zero()};
    double value{0.0};
};

struct BlpReport {
    PairCandidate best;
    double measure{0.0};
    std::vector<double> grid;
    std::vector<double> distance; // best pair
    std::vector<double> sigma;    // best pair
    double stage1_best{0.0};
    std::vector<PairCandidate> seeds;   // stage-1 candidates handed to refinement
    std::vector<PairCandidate> refined; // one per seed
    int evaluations{0};
    int refinement_steps{0};
};

/// Objective evaluator over precomputed Bloch maps Phi(t_k, 0).
class PairObjective {
public:
    PairObjective(const GeneratorSpec& spec, std::span<const double> grid,
                  const IntegratorOptions& options = {});

    std::vector<double> distances(const BlochVector& r1, const BlochVector& r2) const;
    std::vector<double> sigma(const BlochVector& r1, const BlochVector& r2) const;
    double operator()(const BlochVector& r1, const BlochVector& r2) const;

    std::span<const double> grid() const noexcept { return grid_; }

private:
    std::vector<double> grid_;
    std::vector<Eigen::Matrix3d> linear_;
};

/// Two-stage maximization of the positive sigma integral over pure initial pairs.
BlpReport blp_measure(const GeneratorSpec& spec, std::span<const double> grid,
                      const BlpSearchConfig& config = {});

/// The objective for one user-supplied pair, reported in the same shape.
BlpReport blp_fixed_pair(const GeneratorSpec& spec, std::span<const double> grid,
                         const BlochVector& r1, const BlochVector& r2,
                         const IntegratorOptions& options = {});

} // namespace nonmark
