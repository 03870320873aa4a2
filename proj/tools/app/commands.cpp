#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "nonmark/dynamics.hpp"
#include "nonmark/error.hpp"
#include "nonmark/rates.hpp"

namespace nonmark::app {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json bloch_json(const BlochVector& r) { return Json::array({r.x(), r.y(), r.z()}); }

Json candidate_json(const PairCandidate& c) {
    return Json{{"angles", Json::array({c.angles[0], c.angles[1], c.angles[2], c.angles[3]})},
                {"r1", bloch_json(c.r1)},
                {"r2", bloch_json(c.r2)},
                {"value", c.value}};
}

double parse_double(std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw InputError("bad number '" + std::string(text) + "'");
    }
    return v;
}

int parse_int(std::string_view text) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw InputError("bad integer '" + std::string(text) + "'");
    }
    return v;
}

} // namespace

SeriesRun run_rates(const Scenario& scenario) {
    const GeneratorSpec spec = scenario.spec();
    const std::vector<double> grid = scenario.rhp_grid();
    SeriesRun run;
    if (spec.is_undriven()) {
        const auto& r = spec.params.reservoir;
        run.table.columns = {"t", "gamma"};
        PlotSeries gamma{"gamma", {}, {}};
        for (double t : grid) {
            double g = kNan;
            try {
                g = nondriven_rate(t, r.alpha, r.lambda_width);
            } catch (const PoleError&) {
            }
            run.table.add_row({t, g});
            gamma.x.push_back(t);
            gamma.y.push_back(g);
        }
        run.plot = {"undriven decay rate", "t", "gamma(t)", {gamma}};
        return run;
    }
    const ModelParams& m = spec.params;
    run.table.columns = {"T", "gamma_minus", "gamma_zero", "gamma_plus", "lamb_minus", "lamb_zero", "lamb_plus"};
    std::array<PlotSeries, 3> series{PlotSeries{"gamma_minus", {}, {}}, PlotSeries{"gamma_zero", {}, {}},
                                     PlotSeries{"gamma_plus", {}, {}}};
    for (double T : grid) {
        const RateSample r = rate_sample(T, m.s(), m.p(), m.alpha());
        run.table.add_row({T, r.gamma[0], r.gamma[1], r.gamma[2], r.lamb[0], r.lamb[1], r.lamb[2]});
        for (int c = 0; c < 3; ++c) {
            series[c].x.push_back(T);
            series[c].y.push_back(r.gamma[c]);
        }
    }
    run.plot = {"Lorentzian decay rates", "T = lambda t", "gamma / lambda", {series.begin(), series.end()}};
    return run;
}

SeriesRun run_evolve(const Scenario& scenario, const BlochVector& initial) {
    const GeneratorSpec spec = scenario.spec();
    const std::vector<double> grid = scenario.integration_grid();
    IntegratorOptions options;
    const Trajectory traj = evolve(QubitState::from_bloch(initial), spec, grid, options);
    SeriesRun run;
    run.table.columns = {spec.is_undriven() ? "t" : "T", "x", "y", "z", "purity"};
    std::array<PlotSeries, 4> series{PlotSeries{"x", {}, {}}, PlotSeries{"y", {}, {}}, PlotSeries{"z", {}, {}},
                                     PlotSeries{"purity", {}, {}}};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const BlochVector r = traj.states[k].bloch();
        const double purity = traj.states[k].purity();
        run.table.add_row({grid[k], r.x(), r.y(), r.z(), purity});
        const double values[4] = {r.x(), r.y(), r.z(), purity};
        for (int c = 0; c < 4; ++c) {
            series[c].x.push_back(grid[k]);
            series[c].y.push_back(values[c]);
        }
    }
    run.plot = {"qubit dynamics (" + std::string(nonmark::to_string(spec.kind)) + ")",
                spec.is_undriven() ? "t" : "T = lambda t", "Bloch components", {series.begin(), series.end()}};
    return run;
}

RhpRun run_rhp(const Scenario& scenario, const RhpOptions& options) {
    const GeneratorSpec spec = scenario.spec();
    const std::vector<double> grid = scenario.rhp_grid();
    RhpRun run;
    run.report = rhp_measure(spec, grid, options);
    const RhpReport& r = run.report;

    run.series.table.columns = {spec.is_undriven() ? "t" : "T", "g_numeric", "g_analytic"};
    PlotSeries numeric{"g numeric", {}, {}}, analytic{"g closed form", {}, {}};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double gn = r.g_numeric.empty() ? kNan : r.g_numeric[k];
        const double ga = r.g_analytic.empty() ? kNan : r.g_analytic[k];
        run.series.table.add_row({grid[k], gn, ga});
        if (!r.g_numeric.empty()) {
            numeric.x.push_back(grid[k]);
            numeric.y.push_back(gn);
        }
        if (!r.g_analytic.empty()) {
            analytic.x.push_back(grid[k]);
            analytic.y.push_back(ga);
        }
    }
    run.series.plot = {"RHP rate g", spec.is_undriven() ? "t" : "T = lambda t", "g", {}};
    if (!numeric.x.empty()) run.series.plot.series.push_back(numeric);
    if (!analytic.x.empty()) run.series.plot.series.push_back(analytic);

    run.summary = Json{{"measure", "RHP"},
                       {"generator", std::string(nonmark::to_string(spec.kind))},
                       {"method", r.method},
                       {"closed_form", options.form == ClosedForm::Consistent ? "consistent" : "published"},
                       {"integral", number_or_null(r.integral)},
                       {"N_RHP", r.measure},
                       {"divergent", r.divergent},
                       {"poles", r.poles},
                       {"max_cross_error", r.max_cross_error},
                       {"tail_bound", r.tail_bound},
                       {"grid_points", grid.size()}};
    return run;
}

BlpRun run_blp(const Scenario& scenario, BlpSearchConfig config,
               const std::optional<std::pair<BlochVector, BlochVector>>& pair) {
    const GeneratorSpec spec = scenario.spec();
    const std::vector<double> grid = scenario.integration_grid();
    config.seed = scenario.seed;
    BlpRun run;
    run.report = pair ? blp_fixed_pair(spec, grid, pair->first, pair->second, config.integrator)
                      : blp_measure(spec, grid, config);
    const BlpReport& r = run.report;

    run.series.table.columns = {spec.is_undriven() ? "t" : "T", "D", "sigma"};
    PlotSeries d{"D", {}, {}}, sigma{"sigma", {}, {}};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        run.series.table.add_row({grid[k], r.distance[k], r.sigma[k]});
        d.x.push_back(grid[k]);
        d.y.push_back(r.distance[k]);
        sigma.x.push_back(grid[k]);
        sigma.y.push_back(r.sigma[k]);
    }
    run.series.plot = {"trace distance of the best pair", spec.is_undriven() ? "t" : "T = lambda t", "D, dD/dt", {d, sigma}};

    Json seeds = Json::array(), refined = Json::array();
    for (const auto& c : r.seeds) seeds.push_back(candidate_json(c));
    for (const auto& c : r.refined) refined.push_back(candidate_json(c));
    run.summary = Json{{"measure", "BLP"},
                       {"generator", std::string(nonmark::to_string(spec.kind))},
                       {"mode", pair ? "fixed-pair" : "search"},
                       {"N_BLP", r.measure},
                       {"best", candidate_json(r.best)},
                       {"search",
                        {{"seed", config.seed},
                         {"directions", pair ? 0 : config.directions},
                         {"random_pairs", pair ? 0 : config.random_pairs},
                         {"refine_seeds", pair ? 0 : config.refine_seeds},
                         {"stage1_best", r.stage1_best},
                         {"evaluations", r.evaluations},
                         {"refinement_steps", r.refinement_steps},
                         {"grid_points", grid.size()},
                         {"seeds", seeds},
                         {"refined", refined}}}};
    return run;
}

Json CompareReport::to_json() const {
    auto row = [](const CompareRow& c) {
        return Json{{"generator", c.generator},
                    {"N_RHP", c.rhp},
                    {"N_BLP", c.blp},
                    {"rhp_divergent", c.rhp_divergent}};
    };
    return Json{{"undriven", row(undriven)}, {"driven", row(driven)}, {"laser_induced", laser_induced}};
}

Table CompareReport::to_table() const {
    Table t;
    t.columns = {"model", "generator", "N_RHP", "N_BLP"};
    for (const CompareRow* c : {&undriven, &driven}) {
        t.rows.push_back({c->label, c->generator, format_number(c->rhp), format_number(c->blp)});
    }
    return t;
}

CompareReport run_compare(const Scenario& scenario) {
    if (scenario.regime == RegimeChoice::Undriven) {
        throw InputError("compare needs a driven regime (auto, secular, intermediate or nonsecular)");
    }
    auto row = [&](const Scenario& sc, std::string label) {
        CompareRow c;
        c.label = std::move(label);
        c.generator = std::string(nonmark::to_string(sc.spec().kind));
        const RhpRun rhp = run_rhp(sc, RhpOptions{});
        c.rhp = rhp.report.measure;
        c.rhp_divergent = rhp.report.divergent;
        c.blp = run_blp(sc, BlpSearchConfig{}).report.measure;
        return c;
    };
    Scenario bare = scenario;
    bare.regime = RegimeChoice::Undriven;
    CompareReport report;
    report.undriven = row(bare, "undriven");
    report.driven = row(scenario, "driven");
    report.laser_induced = report.undriven.rhp <= kRhpZero && report.undriven.blp <= kBlpZero &&
                           report.driven.rhp > kRhpZero && report.driven.blp > kBlpZero;
    return report;
}

SweepAxis SweepAxis::parse(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw InputError("axis must look like name=lo:hi:steps, got '" + std::string(text) + "'");
    }
    SweepAxis axis;
    axis.name = std::string(text.substr(0, eq));
    Scenario probe;
    probe.set(axis.name, 0.0); // validates the name
    std::string_view rest = text.substr(eq + 1);
    std::vector<std::string_view> parts;
    while (true) {
        const auto colon = rest.find(':');
        parts.push_back(rest.substr(0, colon));
        if (colon == std::string_view::npos) break;
        rest = rest.substr(colon + 1);
    }
    if (parts.size() == 1) {
        axis.lo = axis.hi = parse_double(parts[0]);
        axis.steps = 1;
    } else if (parts.size() == 3) {
        axis.lo = parse_double(parts[0]);
        axis.hi = parse_double(parts[1]);
        axis.steps = parse_int(parts[2]);
    } else {
        throw InputError("axis must look like name=lo:hi:steps, got '" + std::string(text) + "'");
    }
    if (axis.steps < 1) {
        throw InputError("axis '" + axis.name + "' needs steps >= 1");
    }
    if (axis.steps > 1 && !(axis.hi > axis.lo)) {
        throw InputError("axis '" + axis.name + "' needs hi > lo");
    }
    return axis;
}

std::vector<double> SweepAxis::values() const {
    std::vector<double> v(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        v[k] = steps == 1 ? lo : (k == steps - 1 ? hi : lo + (hi - lo) * k / (steps - 1));
    }
    return v;
}

SweepOutput parse_sweep_output(std::string_view name) {
    if (name == "rates") return SweepOutput::Rates;
    if (name == "rhp") return SweepOutput::Rhp;
    if (name == "blp") return SweepOutput::Blp;
    if (name == "both" || name == "both-measures") return SweepOutput::Both;
    throw InputError("unknown sweep output '" + std::string(name) + "' (rates, rhp, blp, both)");
}

std::string_view to_string(SweepOutput output) {
    switch (output) {
    case SweepOutput::Rates: return "rates";
    case SweepOutput::Rhp: return "rhp";
    case SweepOutput::Blp: return "blp";
    case SweepOutput::Both: return "both";
    }
    return "both";
}

namespace {

double min_rate(const Scenario& scenario) {
    const GeneratorSpec spec = scenario.spec();
    double lowest = std::numeric_limits<double>::infinity();
    for (double t : scenario.rhp_grid()) {
        if (spec.is_undriven()) {
            const auto& r = spec.params.reservoir;
            try {
                lowest = std::min(lowest, nondriven_rate(t, r.alpha, r.lambda_width));
            } catch (const PoleError&) {
                return -std::numeric_limits<double>::infinity();
            }
        } else {
            const auto& m = spec.params;
            for (double g : rate_sample(t, m.s(), m.p(), m.alpha()).gamma) {
                lowest = std::min(lowest, g);
            }
        }
    }
    return lowest;
}

} // namespace

Table run_sweep(const SweepSpec& spec) {
    if (spec.axes.empty()) {
        throw InputError("sweep needs at least one --axis");
    }
    std::vector<std::vector<double>> values;
    std::size_t total = 1;
    for (const auto& axis : spec.axes) {
        values.push_back(axis.values());
        total *= values.back().size();
    }
    const bool rates = spec.outputs == SweepOutput::Rates;
    const bool rhp = spec.outputs == SweepOutput::Rhp || spec.outputs == SweepOutput::Both;
    const bool blp = spec.outputs == SweepOutput::Blp || spec.outputs == SweepOutput::Both;

    Table table;
    for (const auto& axis : spec.axes) table.columns.push_back(axis.name);
    table.columns.push_back("generator");
    if (rates) table.columns.push_back("min_gamma");
    if (rhp) table.columns.push_back("N_RHP");
    if (blp) table.columns.push_back("N_BLP");
    table.columns.push_back("error");
    table.rows.resize(total);

    auto evaluate = [&](std::size_t index) {
        Scenario sc = spec.base;
        std::vector<std::string> row;
        std::size_t rem = index;
        std::vector<double> point(spec.axes.size());
        for (std::size_t a = spec.axes.size(); a-- > 0;) {
            point[a] = values[a][rem % values[a].size()];
            rem /= values[a].size();
        }
        for (std::size_t a = 0; a < spec.axes.size(); ++a) {
            sc.set(spec.axes[a].name, point[a]);
            row.push_back(format_number(point[a]));
        }
        const std::size_t result_columns = (rates ? 1 : 0) + (rhp ? 1 : 0) + (blp ? 1 : 0);
        try {
            row.push_back(std::string(nonmark::to_string(sc.spec().kind)));
            if (rates) row.push_back(format_number(min_rate(sc)));
            if (rhp) row.push_back(format_number(run_rhp(sc, spec.rhp).report.measure));
            if (blp) row.push_back(format_number(run_blp(sc, spec.blp).report.measure));
            row.push_back("");
        } catch (const std::exception& e) {
            row.resize(spec.axes.size());
            row.push_back("invalid");
            for (std::size_t k = 0; k < result_columns; ++k) row.push_back("nan");
            std::string message = e.what();
            std::replace(message.begin(), message.end(), ',', ';');
            std::replace(message.begin(), message.end(), '\n', ' ');
            row.push_back(message);
        }
        table.rows[index] = std::move(row);
    };

    unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            evaluate(i);
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();
    return table;
}

Plot sweep_plot(const SweepSpec& spec, const Table& table) {
    const std::size_t axes = spec.axes.size();
    const std::size_t measure_column = axes + 1; // first result column after "generator"
    Plot plot{"sweep", spec.axes.front().name, table.columns[measure_column], {}};
    std::vector<std::string> keys;
    for (const auto& row : table.rows) {
        std::string key;
        for (std::size_t a = 1; a < axes; ++a) {
            key += (a > 1 ? ", " : "") + spec.axes[a].name + "=" + row[a];
        }
        auto it = std::find(keys.begin(), keys.end(), key);
        if (it == keys.end()) {
            keys.push_back(key);
            plot.series.push_back({key.empty() ? table.columns[measure_column] : key, {}, {}});
            it = keys.end() - 1;
        }
        auto& s = plot.series[static_cast<std::size_t>(it - keys.begin())];
        s.x.push_back(std::stod(row[0]));
        const std::string& cell = row[measure_column];
        s.y.push_back(cell == "nan" ? kNan : cell == "inf" ? std::numeric_limits<double>::infinity()
                                           : cell == "-inf" ? -std::numeric_limits<double>::infinity()
                                                            : std::stod(cell));
    }
    return plot;
}

Json table_to_json(const Provenance& provenance, const Table& table) {
    Json prov = Json::object();
    for (const auto& [k, v] : provenance) prov[k] = v;
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json r = Json::array();
        for (const auto& cell : row) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec == std::errc() && ptr == cell.data() + cell.size()) {
                r.push_back(number_or_null(v));
            } else if (cell == "nan" || cell == "inf" || cell == "-inf") {
                r.push_back(nullptr);
            } else {
                r.push_back(cell);
            }
        }
        rows.push_back(std::move(r));
    }
    return Json{{"provenance", prov}, {"columns", table.columns}, {"rows", rows}};
}

} // namespace nonmark::app
