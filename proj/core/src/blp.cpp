#include "nonmark/blp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "nonmark/error.hpp"
#include "nonmark/rates.hpp"

namespace nonmark {

namespace {

// derivative at xs[at] of the parabola through three samples
double lagrange3_derivative(const double* xs, const double* fs, int at) {
    const double x = xs[at];
    const double x0 = xs[0], x1 = xs[1], x2 = xs[2];
    const double d0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
    const double d1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
    const double d2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
    return fs[0] * d0 + fs[1] * d1 + fs[2] * d2;
}

void require_grid(std::span<const double> grid) {
    if (grid.size() < 3) {
        throw InputError("sigma needs at least three grid points");
    }
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) {
            throw InputError("grid must be strictly increasing");
        }
    }
}

// -(a' e^{-2a} u + b' e^{-2b} v) / (2 sqrt(e^{-2a} u + e^{-2b} v))
double decay_sigma(double a, double da, double u, double b, double db, double v) {
    const double ea = std::exp(-2.0 * a);
    const double eb = std::exp(-2.0 * b);
    const double radicand = ea * u + eb * v;
    if (!(radicand > 0.0)) {
        return 0.0;
    }
    return -(da * ea * u + db * eb * v) / (2.0 * std::sqrt(radicand));
}

double fibonacci_angle_theta(int k, int n) {
    const double z = 1.0 - (2.0 * k + 1.0) / n;
    return std::acos(std::clamp(z, -1.0, 1.0));
}

double fibonacci_angle_phi(int k) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    return std::fmod(golden * k, 2.0 * std::numbers::pi);
}

PairCandidate candidate_from(const std::array<double, 4>& angles, double value) {
    PairCandidate c;
    c.angles = angles;
    c.r1 = unit_bloch(angles[0], angles[1]);
    c.r2 = unit_bloch(angles[2], angles[3]);
    c.value = value;
    return c;
}

struct NelderMeadResult {
    std::array<double, 4> x{};
    double value{0.0};
    int iterations{0};
};

// maximizes f
template <class F>
NelderMeadResult nelder_mead(F&& f, const std::array<double, 4>& start, double step, double tol,
                             int max_iterations, int& evaluations) {
    using Point = std::array<double, 4>;
    constexpr int n = 4;
    std::array<Point, n + 1> simplex{};
    std::array<double, n + 1> value{};
    simplex[0] = start;
    for (int i = 0; i < n; ++i) {
        simplex[i + 1] = start;
        simplex[i + 1][i] += step;
    }
    for (int i = 0; i <= n; ++i) {
        value[i] = f(simplex[i]);
        ++evaluations;
    }
    auto eval = [&](const Point& p) {
        ++evaluations;
        return f(p);
    };
    auto combine = [](const Point& a, const Point& b, double t) {
        Point out;
        for (int i = 0; i < n; ++i) {
            out[i] = a[i] + t * (b[i] - a[i]);
        }
        return out;
    };

    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        std::array<int, n + 1> order{};
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return value[a] > value[b]; });
        const int best = order[0];
        const int worst = order[n];
        const int second_worst = order[n - 1];
        if (std::abs(value[best] - value[worst]) <= tol * (1.0 + std::abs(value[best]))) {
            break;
        }
        Point centroid{};
        for (int i = 0; i < n; ++i) {
            const int idx = order[i];
            for (int j = 0; j < n; ++j) {
                centroid[j] += simplex[idx][j] / n;
            }
        }
        const Point reflected = combine(centroid, simplex[worst], -1.0);
        const double fr = eval(reflected);
        if (fr > value[best]) {
            const Point expanded = combine(centroid, simplex[worst], -2.0);
            const double fe = eval(expanded);
            if (fe > fr) {
                simplex[worst] = expanded;
                value[worst] = fe;
            } else {
                simplex[worst] = reflected;
                value[worst] = fr;
            }
            continue;
        }
        if (fr > value[second_worst]) {
            simplex[worst] = reflected;
            value[worst] = fr;
            continue;
        }
        const bool outside = fr > value[worst];
        const Point contracted = combine(centroid, outside ? reflected : simplex[worst], 0.5);
        const double fc = eval(contracted);
        if (fc > std::max(fr, value[worst])) {
            simplex[worst] = contracted;
            value[worst] = fc;
            continue;
        }
        for (int i = 1; i <= n; ++i) {
            const int idx = order[i];
            simplex[idx] = combine(simplex[best], simplex[idx], 0.5);
            value[idx] = eval(simplex[idx]);
        }
    }
    const auto top = std::max_element(value.begin(), value.end()) - value.begin();
    return {simplex[top], value[top], iter};
}

} // namespace

double trace_distance(const QubitState& rho1, const QubitState& rho2) {
    const Mat2 diff = rho1.matrix() - rho2.matrix();
    Eigen::SelfAdjointEigenSolver<Mat2> solver(0.5 * (diff + diff.adjoint()),
                                               Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const BlochVector& r1, const BlochVector& r2) { return 0.5 * (r1 - r2).norm(); }

StatePair StatePair::from_bloch(const BlochVector& r1, const BlochVector& r2) {
    return {QubitState::from_bloch(r1), QubitState::from_bloch(r2), r1 - r2};
}

StatePair StatePair::from_angles(const std::array<double, 4>& angles) {
    return from_bloch(unit_bloch(angles[0], angles[1]), unit_bloch(angles[2], angles[3]));
}

BlochVector unit_bloch(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::vector<double> sigma_numeric(std::span<const double> grid, std::span<const double> distances) {
    require_grid(grid);
    if (distances.size() != grid.size()) {
        throw InputError("distance series and grid differ in length");
    }
    const std::size_t n = grid.size();
    std::vector<double> sigma(n);
    sigma[0] = lagrange3_derivative(grid.data(), distances.data(), 0);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        sigma[k] = lagrange3_derivative(grid.data() + k - 1, distances.data() + k - 1, 1);
    }
    sigma[n - 1] = lagrange3_derivative(grid.data() + n - 3, distances.data() + n - 3, 2);
    return sigma;
}

std::vector<double> trace_distance_series(const Trajectory& first, const Trajectory& second) {
    if (first.grid != second.grid) {
        throw InputError("trajectories do not share a grid");
    }
    std::vector<double> d(first.grid.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
        d[k] = trace_distance(first.states[k], second.states[k]);
    }
    return d;
}

std::vector<double> sigma_numeric(const Trajectory& first, const Trajectory& second) {
    const std::vector<double> d = trace_distance_series(first, second);
    return sigma_numeric(first.grid, d);
}

double trapezoid(std::span<const double> grid, std::span<const double> values) {
    double sum = 0.0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        sum += 0.5 * (grid[k] - grid[k - 1]) * (values[k] + values[k - 1]);
    }
    return sum;
}

std::vector<double> cumulative_trapezoid(std::span<const double> grid,
                                         std::span<const double> values) {
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        out[k] = out[k - 1] + 0.5 * (grid[k] - grid[k - 1]) * (values[k] + values[k - 1]);
    }
    return out;
}

double positive_integral(std::span<const double> grid, std::span<const double> sigma) {
    double sum = 0.0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        sum += 0.5 * (grid[k] - grid[k - 1]) * (std::max(sigma[k], 0.0) + std::max(sigma[k - 1], 0.0));
    }
    return sum;
}

std::vector<double> sigma_secular_analytic(const BlochVector& deltas, std::span<const double> grid,
                                           const ModelParams& params, ClosedForm form) {
    const Coefficients& c = params.coeffs;
    const double cp = c.c_plus * c.c_plus;
    const double cm = c.c_minus * c.c_minus;
    const double c0 = c.c_zero * c.c_zero;
    std::vector<double> gamma_rate(grid.size());
    std::vector<double> lambda_rate(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const RateSample r = rate_sample(grid[k], params.s(), params.p(), params.alpha());
        const double gp = r.gamma_of(Channel::Plus);
        const double gm = r.gamma_of(Channel::Minus);
        const double g0 = r.gamma_of(Channel::Zero);
        gamma_rate[k] = 0.5 * (cp * gp + cm * gm + 4.0 * c0 * g0);
        lambda_rate[k] = cp * gp + cm * gm;
    }
    const std::vector<double> big_gamma = cumulative_trapezoid(grid, gamma_rate);
    const std::vector<double> big_lambda = cumulative_trapezoid(grid, lambda_rate);
    const double perp = deltas.x() * deltas.x() + deltas.y() * deltas.y();
    const double axial = deltas.z() * deltas.z();

    std::vector<double> sigma(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (form == ClosedForm::Consistent) {
            sigma[k] = decay_sigma(big_gamma[k], gamma_rate[k], perp, big_lambda[k], lambda_rate[k], axial);
        } else {
            sigma[k] = decay_sigma(big_lambda[k], lambda_rate[k], perp, big_gamma[k], gamma_rate[k], axial);
        }
    }
    return sigma;
}

std::vector<double> sigma_resonant_nonsecular_analytic(const BlochVector& deltas,
                                                       std::span<const double> grid,
                                                       const ModelParams& params,
                                                       ClosedForm form) {
    // C+ + C- = Delta / omega
    if (std::abs(params.coeffs.c_plus + params.coeffs.c_minus) > 1e-12) {
        throw InputError("resonant sigma requires zero detuning");
    }
    std::vector<double> gamma(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        gamma[k] = lorentzian_rate(grid[k], params.s(), params.alpha()).gamma;
    }
    const std::vector<double> big_gamma = cumulative_trapezoid(grid, gamma);
    const double dx2 = deltas.x() * deltas.x();
    const double dy2 = deltas.y() * deltas.y();
    const double dz2 = deltas.z() * deltas.z();

    std::vector<double> sigma(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double e1 = std::exp(-big_gamma[k]);
        const double e2 = e1 * e1;
        if (form == ClosedForm::Consistent) {
            const double radicand = e2 * dx2 + e1 * (dy2 + dz2);
            sigma[k] = radicand > 0.0
                           ? -gamma[k] * (2.0 * e2 * dx2 + e1 * (dy2 + dz2)) / (4.0 * std::sqrt(radicand))
                           : 0.0;
        } else {
            const double bracket = (dx2 - dz2) + 2.0 * dy2;
            const double radicand = (dz2 + dx2) + e2 * bracket;
            sigma[k] = radicand > 0.0
                           ? -gamma[k] * e2 * bracket / (std::numbers::sqrt2 * std::sqrt(radicand))
                           : 0.0;
        }
    }
    return sigma;
}

std::vector<double> sigma_undriven_analytic(const BlochVector& deltas, std::span<const double> grid,
                                            const ReservoirParams& reservoir) {
    const double alpha = reservoir.alpha;
    const double lambda = reservoir.lambda_width;
    const double perp = deltas.x() * deltas.x() + deltas.y() * deltas.y();
    const double axial = deltas.z() * deltas.z();

    std::vector<double> sigma(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid[k];
        if (perp + axial == 0.0) {
            sigma[k] = 0.0;
            continue;
        }
        try {
            const double gamma = nondriven_rate(t, alpha, lambda);
            const double big_gamma = nondriven_decay_integral(t, alpha, lambda);
            const double e1 = std::exp(-big_gamma);
            const double e2 = e1 * e1;
            sigma[k] = -gamma * (2.0 * e2 * axial + e1 * perp) / (4.0 * std::sqrt(e2 * axial + e1 * perp));
        } catch (const PoleError&) {
            // D = |G| sqrt(G^2 dz^2 + dperp^2) / 2
            const double g = nondriven_amplitude(t, alpha, lambda);
            const double dg = nondriven_amplitude_rate(t, alpha, lambda);
            const double sign = g != 0.0 ? std::copysign(1.0, g) : std::copysign(1.0, dg);
            const double root = std::sqrt(g * g * axial + perp);
            sigma[k] = root > 0.0 ? sign * dg * (2.0 * g * g * axial + perp) / (2.0 * root) : 0.0;
        }
    }
    return sigma;
}

PairObjective::PairObjective(const GeneratorSpec& spec, std::span<const double> grid,
                             const IntegratorOptions& options)
    : grid_(grid.begin(), grid.end()) {
    require_grid(grid);
    const std::vector<Propagator> table = propagator_table(spec, grid, options);
    linear_.reserve(table.size());
    for (const Propagator& phi : table) {
        linear_.push_back(BlochMap::from(phi).linear);
    }
}

std::vector<double> PairObjective::distances(const BlochVector& r1, const BlochVector& r2) const {
    const Eigen::Vector3d delta = r1 - r2;
    std::vector<double> d(linear_.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
        d[k] = 0.5 * (linear_[k] * delta).norm();
    }
    return d;
}

std::vector<double> PairObjective::sigma(const BlochVector& r1, const BlochVector& r2) const {
    return sigma_numeric(grid_, distances(r1, r2));
}

double PairObjective::operator()(const BlochVector& r1, const BlochVector& r2) const {
    return positive_integral(grid_, sigma(r1, r2));
}

BlpReport blp_measure(const GeneratorSpec& spec, std::span<const double> grid,
                      const BlpSearchConfig& config) {
    if (grid.size() < 3 || !(grid.back() > grid.front())) {
        throw InputError("blp_measure needs a grid with T_max > 0");
    }
    if (config.directions < 1 || config.random_pairs < 0 || config.refine_seeds < 0) {
        throw InputError("invalid BLP search sizes");
    }
    const PairObjective objective(spec, grid, config.integrator);
    BlpReport report;
    report.grid.assign(grid.begin(), grid.end());

    auto score = [&](const std::array<double, 4>& a) {
        return objective(unit_bloch(a[0], a[1]), unit_bloch(a[2], a[3]));
    };

    // Stage 1: antipodal pairs on a Fibonacci sphere, then random pure pairs.
    std::vector<PairCandidate> stage1;
    stage1.reserve(static_cast<std::size_t>(config.directions + config.random_pairs));
    for (int k = 0; k < config.directions; ++k) {
        const double theta = fibonacci_angle_theta(k, config.directions);
        const double phi = fibonacci_angle_phi(k);
        const std::array<double, 4> a{theta, phi, std::numbers::pi - theta, phi + std::numbers::pi};
        stage1.push_back(candidate_from(a, score(a)));
    }
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < config.random_pairs; ++k) {
        std::array<double, 4> a{};
        a[0] = std::acos(1.0 - 2.0 * unit(rng));
        a[1] = 2.0 * std::numbers::pi * unit(rng);
        a[2] = std::acos(1.0 - 2.0 * unit(rng));
        a[3] = 2.0 * std::numbers::pi * unit(rng);
        stage1.push_back(candidate_from(a, score(a)));
    }
    report.evaluations = static_cast<int>(stage1.size());

    // stable sort keeps grid order among ties
    std::vector<std::size_t> order(stage1.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return stage1[a].value > stage1[b].value; });
    report.best = stage1[order.front()];
    report.stage1_best = report.best.value;

    // Stage 2: Nelder-Mead from the best few.
    const std::size_t seeds = std::min<std::size_t>(static_cast<std::size_t>(config.refine_seeds), order.size());
    for (std::size_t i = 0; i < seeds; ++i) {
        const PairCandidate& seed = stage1[order[i]];
        report.seeds.push_back(seed);
        const NelderMeadResult nm = nelder_mead(score, seed.angles, config.simplex_step,
                                                config.tolerance, config.max_iterations,
                                                report.evaluations);
        report.refinement_steps += nm.iterations;
        PairCandidate refined = candidate_from(nm.x, nm.value);
        if (refined.value < seed.value) {
            refined = seed;
        }
        report.refined.push_back(refined);
        if (refined.value > report.best.value) {
            report.best = refined;
        }
    }

    report.measure = std::max(report.best.value, 0.0);
    report.distance = objective.distances(report.best.r1, report.best.r2);
    report.sigma = sigma_numeric(grid, report.distance);
    return report;
}

BlpReport blp_fixed_pair(const GeneratorSpec& spec, std::span<const double> grid,
                         const BlochVector& r1, const BlochVector& r2,
                         const IntegratorOptions& options) {
    // validates both vectors
    (void)StatePair::from_bloch(r1, r2);
    const PairObjective objective(spec, grid, options);
    BlpReport report;
    report.grid.assign(grid.begin(), grid.end());
    report.best.r1 = r1;
    report.best.r2 = r2;
    report.distance = objective.distances(r1, r2);
    report.sigma = sigma_numeric(grid, report.distance);
    report.best.value = positive_integral(grid, report.sigma);
    report.measure = report.best.value;
    report.stage1_best = report.best.value;
    report.evaluations = 1;
    return report;
}

} // namespace nonmark
