// Integration of d rho/dt = L(t) rho and finite-time propagators.

#pragma once

#include <span>
#include <vector>

#include "nonmark/generator.hpp"
#include "nonmark/types.hpp"

namespace nonmark {

/// 2x2 density matrix. Construction validates the invariants: Hermitian and unit
/// trace to 1e-10, eigenvalues >= -1e-8.
class QubitState {
public:
    QubitState() : rho_(0.5 * Mat2::Identity()) {}

    static QubitState from_bloch(const BlochVector& r);
    static QubitState from_matrix(const Mat2& rho);
    static QubitState excited() { return from_bloch({0.0, 0.0, 1.0}); }
    static QubitState ground() { return from_bloch({0.0, 0.0, -1.0}); }

    const Mat2& matrix() const noexcept { return rho_; }
    /// (x, y, z) with rho = (I + x sx + y sy + z sz) / 2.
    BlochVector bloch() const noexcept;
    double purity() const noexcept;
    double min_eigenvalue() const noexcept;

private:
    explicit QubitState(const Mat2& rho) : rho_(rho) {}
    friend QubitState make_state_unchecked(const Mat2& rho);

    Mat2 rho_;
};

/// Wraps a matrix without validation (integrator output after its own checks).
QubitState make_state_unchecked(const Mat2& rho);

struct IntegratorOptions {
    /// RK4 substep; 0 selects 1e-3 / spec.time_scale().
    double step{0.0};
    /// Most negative eigenvalue tolerated in an emitted state.
    double positivity_tolerance{1e-6};
    /// Half-width, in substeps, of the window around each pole of the undriven rate
    /// that is crossed with the exact amplitude map instead of RK4.
    double pole_window_steps{200.0};

    double step_for(const GeneratorSpec& spec) const noexcept;
};

struct Trajectory {
    std::vector<double> grid;
    std::vector<QubitState> states;
    GeneratorKind kind{GeneratorKind::Secular};
    ModelParams params;

    // Raw integrator output before symmetrization/renormalization.
    double max_trace_drift{0.0};
    double max_hermiticity_defect{0.0};
    double min_eigenvalue{1.0};
};

/// Fixed-step RK4 from rho0 over `grid` (strictly increasing, starting at 0).
/// Emitted states are symmetrized and trace-renormalized; integration continues from
/// the raw state. Throws IntegrationError when positivity fails beyond tolerance.
Trajectory evolve(const QubitState& rho0, const GeneratorSpec& spec, std::span<const double> grid,
                  const IntegratorOptions& options = {});

/// Linear map vec(rho(t0)) -> vec(rho(t1)).
struct Propagator {
    Superop matrix{Superop::Identity()};

    Vec4 apply(const Vec4& v) const { return matrix * v; }
    Mat2 apply(const Mat2& rho) const { return unvectorize(matrix * vectorize(rho)); }
    /// max |Tr(Phi(X)) - Tr(X)| over the matrix units.
    double trace_defect() const;
    /// max Hermiticity defect of Phi applied to the Pauli basis.
    double hermiticity_defect() const;
};

/// Solves dM/dt = L(t) M, M(t0) = I with the same RK4 scheme as evolve.
Propagator propagator(const GeneratorSpec& spec, double t0, double t1,
                      const IntegratorOptions& options = {});

/// Phi(grid[k], grid[0]) for every grid point, in one sweep.
std::vector<Propagator> propagator_table(const GeneratorSpec& spec, std::span<const double> grid,
                                         const IntegratorOptions& options = {});

/// Affine action on Bloch vectors: r -> linear r + offset.
struct BlochMap {
    Eigen::Matrix3d linear{Eigen::Matrix3d::Identity()};
    Eigen::Vector3d offset{Eigen::Vector3d::Zero()};

    static BlochMap from(const Propagator& phi);
    BlochVector apply(const BlochVector& r) const { return linear * r + offset; }
};

/// 0, step, 2 step, ..., t_max (last point lands exactly on t_max).
std::vector<double> uniform_grid(double t_max, double step);

/// Exact transfer map of the undriven model between two times, from the amplitude
/// ratio G(t1)/G(t0). Throws PoleError when G(t0) vanishes.
Superop undriven_transfer(const ReservoirParams& reservoir, double t0, double t1);

} // namespace nonmark
