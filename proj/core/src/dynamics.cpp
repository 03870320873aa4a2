#include "nonmark/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nonmark/error.hpp"
#include "nonmark/rates.hpp"

namespace nonmark {

namespace {

Mat2 symmetrized(const Mat2& m) { return 0.5 * (m + m.adjoint()); }

double min_eigenvalue_of(const Mat2& m) {
    // closed form for a Hermitian 2x2
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double b = std::abs(m(0, 1));
    return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + b * b);
}

struct Window {
    double begin;
    double end;
};

// Advances a state (Vec4) or a propagator (Superop) through time. Keeps the last
// generator evaluation so consecutive RK4 steps share the endpoint.
template <class State>
class Stepper {
public:
    Stepper(const GeneratorSpec& spec, double t0, State y0, const IntegratorOptions& options,
            double horizon)
        : spec_(spec), h_(options.step_for(spec)), t_(t0), y_(std::move(y0)) {
        if (!(h_ > 0.0)) {
            throw InputError("integration step must be > 0");
        }
        if (spec_.is_undriven()) {
            const auto& r = spec_.params.reservoir;
            const double w = options.pole_window_steps * h_;
            for (double pole : nondriven_poles(r.alpha, r.lambda_width, horizon + w)) {
                windows_.push_back({std::max(0.0, pole - w), pole + w});
            }
        }
        if (const Window* w = window_at(t_)) {
            enter_window(*w);
        }
    }

    double time() const noexcept { return t_; }
    const State& state() const noexcept { return y_; }

    void advance_to(double t_end) {
        while (t_ < t_end) {
            if (anchor_) {
                const double stop = std::min(t_end, anchor_window_.end);
                y_ = undriven_transfer(spec_.params.reservoir, anchor_time_, stop) * anchor_state_;
                t_ = stop;
                if (t_ >= anchor_window_.end) {
                    anchor_ = false;
                }
                continue;
            }
            double stop = t_end;
            const Window* next = next_window(t_);
            if (next != nullptr && next->begin < stop) {
                stop = next->begin;
            }
            rk4_to(stop);
            if (next != nullptr && t_ >= next->begin) {
                enter_window(*next);
            }
        }
    }

private:
    const Window* window_at(double t) const {
        for (const Window& w : windows_) {
            if (t >= w.begin && t < w.end) {
                return &w;
            }
        }
        return nullptr;
    }

    const Window* next_window(double t) const {
        for (const Window& w : windows_) {
            if (w.begin >= t) {
                return &w;
            }
        }
        return nullptr;
    }

    void enter_window(const Window& w) {
        const auto& r = spec_.params.reservoir;
        const double g = nondriven_amplitude(t_, r.alpha, r.lambda_width);
        if (std::abs(g) < 1e-12) {
            std::ostringstream os;
            os << "cannot start a transfer at t = " << t_ << ": excited amplitude vanishes";
            throw PoleError(os.str(), t_);
        }
        anchor_ = true;
        anchor_window_ = w;
        anchor_time_ = t_;
        anchor_state_ = y_;
    }

    const Superop& generator_at(double t) {
        if (!cache_valid_ || cache_time_ != t) {
            cache_ = spec_(t);
            cache_time_ = t;
            cache_valid_ = true;
        }
        return cache_;
    }

    void rk4_to(double stop) {
        while (t_ < stop) {
            const double remaining = stop - t_;
            const bool last = remaining <= h_ * (1.0 + 1e-9);
            const double dt = last ? remaining : h_;
            const double t_next = last ? stop : t_ + dt;

            const Superop l0 = generator_at(t_);
            const Superop lm = spec_(t_ + 0.5 * dt);
            const State k1 = l0 * y_;
            const State k2 = lm * (y_ + 0.5 * dt * k1);
            const State k3 = lm * (y_ + 0.5 * dt * k2);
            const Superop& l1 = generator_at(t_next);
            const State k4 = l1 * (y_ + dt * k3);
            y_ += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t_ = t_next;
        }
    }

    const GeneratorSpec& spec_;
    double h_;
    double t_;
    State y_;
    std::vector<Window> windows_;

    bool anchor_{false};
    Window anchor_window_{};
    double anchor_time_{0.0};
    State anchor_state_{};

    bool cache_valid_{false};
    double cache_time_{0.0};
    Superop cache_{};
};

void check_grid(std::span<const double> grid, bool from_zero) {
    if (grid.empty()) {
        throw InputError("time grid is empty");
    }
    if (from_zero && grid.front() != 0.0) {
        throw InputError("time grid must start at 0");
    }
    if (grid.front() < 0.0) {
        throw DomainError("time grid must be nonnegative");
    }
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) {
            throw InputError("time grid must be strictly increasing");
        }
    }
}

void check_propagator(const Propagator& phi, double t) {
    const double defect = std::max(phi.trace_defect(), phi.hermiticity_defect());
    if (!(defect <= 1e-8)) {
        std::ostringstream os;
        os << "propagator lost trace/Hermiticity preservation at t = " << t << " (defect "
           << defect << ")";
        throw IntegrationError(os.str(), t);
    }
}

} // namespace

BlochVector QubitState::bloch() const noexcept {
    return BlochVector(2.0 * rho_(1, 0).real(), 2.0 * rho_(1, 0).imag(),
                       (rho_(0, 0) - rho_(1, 1)).real());
}

double QubitState::purity() const noexcept { return (rho_ * rho_).trace().real(); }

double QubitState::min_eigenvalue() const noexcept { return min_eigenvalue_of(rho_); }

QubitState QubitState::from_bloch(const BlochVector& r) {
    if (!r.allFinite()) {
        throw InputError("Bloch vector must be finite");
    }
    if (r.squaredNorm() > 1.0 + 1e-8) {
        throw InputError("Bloch vector lies outside the unit ball");
    }
    const Mat2 rho = 0.5 * (ops::identity() + r.x() * ops::sigma_x() + r.y() * ops::sigma_y() +
                            r.z() * ops::sigma_z());
    return QubitState(rho);
}

QubitState QubitState::from_matrix(const Mat2& rho) {
    if (hermiticity_defect(rho) > 1e-10) {
        throw InputError("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - 1.0) > 1e-10) {
        throw InputError("density matrix does not have unit trace");
    }
    if (min_eigenvalue_of(rho) < -1e-8) {
        throw InputError("density matrix is not positive semidefinite");
    }
    return QubitState(rho);
}

QubitState make_state_unchecked(const Mat2& rho) { return QubitState(rho); }

double IntegratorOptions::step_for(const GeneratorSpec& spec) const noexcept {
    return step > 0.0 ? step : 1e-3 / spec.time_scale();
}

Trajectory evolve(const QubitState& rho0, const GeneratorSpec& spec, std::span<const double> grid,
                  const IntegratorOptions& options) {
    check_grid(grid, true);
    Trajectory traj;
    traj.grid.assign(grid.begin(), grid.end());
    traj.kind = spec.kind;
    traj.params = spec.params;
    traj.states.reserve(grid.size());
    traj.states.push_back(rho0);
    traj.min_eigenvalue = rho0.min_eigenvalue();

    Stepper<Vec4> stepper(spec, 0.0, vectorize(rho0.matrix()), options, grid.back());
    for (std::size_t k = 1; k < grid.size(); ++k) {
        stepper.advance_to(grid[k]);
        const Mat2 raw = unvectorize(stepper.state());
        if (!raw.allFinite()) {
            throw IntegrationError("integrator produced non-finite values", grid[k]);
        }
        traj.max_trace_drift = std::max(traj.max_trace_drift, std::abs(raw.trace() - 1.0));
        traj.max_hermiticity_defect =
            std::max(traj.max_hermiticity_defect, hermiticity_defect(raw));

        Mat2 clean = symmetrized(raw);
        clean /= clean.trace();
        const double lowest = min_eigenvalue_of(clean);
        traj.min_eigenvalue = std::min(traj.min_eigenvalue, lowest);
        if (lowest < -options.positivity_tolerance) {
            std::ostringstream os;
            os << "positivity violated at t = " << grid[k] << " (eigenvalue " << lowest << ")";
            throw IntegrationError(os.str(), grid[k]);
        }
        traj.states.push_back(make_state_unchecked(clean));
    }
    return traj;
}

double Propagator::trace_defect() const {
    // Tr(unvec(v)) = v0 + v3, so trace preservation means row0 + row3 = (1, 0, 0, 1).
    Eigen::RowVector4cd functional = matrix.row(0) + matrix.row(3);
    functional(0) -= 1.0;
    functional(3) -= 1.0;
    return functional.cwiseAbs().maxCoeff();
}

double Propagator::hermiticity_defect() const {
    double worst = 0.0;
    for (const Mat2& p : {ops::identity(), ops::sigma_x(), ops::sigma_y(), ops::sigma_z()}) {
        worst = std::max(worst, nonmark::hermiticity_defect(apply(p)));
    }
    return worst;
}

Propagator propagator(const GeneratorSpec& spec, double t0, double t1,
                      const IntegratorOptions& options) {
    if (!(t0 >= 0.0) || !(t1 >= t0)) {
        throw InputError("propagator requires 0 <= t0 <= t1");
    }
    Stepper<Superop> stepper(spec, t0, Superop::Identity(), options, t1);
    stepper.advance_to(t1);
    Propagator phi{stepper.state()};
    if (!phi.matrix.allFinite()) {
        throw IntegrationError("propagator has non-finite entries", t1);
    }
    check_propagator(phi, t1);
    return phi;
}

std::vector<Propagator> propagator_table(const GeneratorSpec& spec, std::span<const double> grid,
                                         const IntegratorOptions& options) {
    check_grid(grid, false);
    std::vector<Propagator> out;
    out.reserve(grid.size());
    Stepper<Superop> stepper(spec, grid.front(), Superop::Identity(), options, grid.back());
    out.push_back(Propagator{});
    for (std::size_t k = 1; k < grid.size(); ++k) {
        stepper.advance_to(grid[k]);
        Propagator phi{stepper.state()};
        if (!phi.matrix.allFinite()) {
            throw IntegrationError("propagator has non-finite entries", grid[k]);
        }
        check_propagator(phi, grid[k]);
        out.push_back(phi);
    }
    return out;
}

BlochMap BlochMap::from(const Propagator& phi) {
    const std::array<Mat2, 3> pauli{ops::sigma_x(), ops::sigma_y(), ops::sigma_z()};
    BlochMap m;
    const Mat2 image_of_identity = phi.apply(Mat2(ops::identity()));
    for (int i = 0; i < 3; ++i) {
        m.offset(i) = 0.5 * (pauli[i] * image_of_identity).trace().real();
        for (int j = 0; j < 3; ++j) {
            m.linear(i, j) = 0.5 * (pauli[i] * phi.apply(pauli[j])).trace().real();
        }
    }
    return m;
}

std::vector<double> uniform_grid(double t_max, double step) {
    if (!(t_max > 0.0) || !(step > 0.0)) {
        throw InputError("uniform_grid requires t_max > 0 and step > 0");
    }
    const double ratio = t_max / step;
    auto n = static_cast<std::size_t>(std::llround(ratio));
    if (std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, ratio)) {
        n = static_cast<std::size_t>(std::ceil(ratio));
    }
    n = std::max<std::size_t>(n, 1);
    std::vector<double> grid(n + 1);
    for (std::size_t k = 0; k < n; ++k) {
        grid[k] = static_cast<double>(k) * step;
    }
    grid[n] = t_max;
    return grid;
}

Superop undriven_transfer(const ReservoirParams& reservoir, double t0, double t1) {
    const double g0 = nondriven_amplitude(t0, reservoir.alpha, reservoir.lambda_width);
    if (std::abs(g0) < 1e-12) {
        throw PoleError("undriven transfer from a zero of the excited amplitude", t0);
    }
    const double r = nondriven_amplitude(t1, reservoir.alpha, reservoir.lambda_width) / g0;
    // bare basis {|e>, |g>}; vec order (ee, ge, eg, gg)
    Superop m = Superop::Zero();
    m(0, 0) = r * r;
    m(1, 1) = r;
    m(2, 2) = r;
    m(3, 0) = 1.0 - r * r;
    m(3, 3) = 1.0;
    return m;
}

} // namespace nonmark
