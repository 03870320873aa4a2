#include "cli.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "nonmark/error.hpp"
#include "nonmark/rates.hpp"

namespace nonmark::app {

namespace {

struct GlobalOptions {
    std::string config;
    std::string regime{"auto"};
    std::map<std::string, CLI::Option*> params;
    std::map<std::string, double> values;
    double tmax{30.0};
    double step{1e-3};
    double rhp_step{1e-2};
    std::uint64_t seed{0};
    std::string out{"-"};
    std::string summary;
    std::string format{"csv"};
    std::string plot;
};

BlochVector parse_bloch(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw InputError("bad Bloch vector '" + text + "' (expected x,y,z)");
        }
    }
    if (v.size() != 3) {
        throw InputError("bad Bloch vector '" + text + "' (expected x,y,z)");
    }
    const BlochVector r(v[0], v[1], v[2]);
    if (r.norm() > 1.0 + 1e-12) {
        throw InputError("Bloch vector '" + text + "' lies outside the unit ball");
    }
    return r;
}

Scenario build_scenario(const GlobalOptions& g, const CLI::App& app) {
    Scenario sc;
    if (!g.config.empty()) {
        apply_param_map(sc, load_param_file(g.config));
    }
    sc.regime = parse_regime_choice(g.regime);
    for (const auto& [name, option] : g.params) {
        if (option->count() > 0) {
            sc.set(name, g.values.at(name));
        }
    }
    if (app.get_option("--tmax")->count() > 0) sc.tmax = g.tmax;
    if (app.get_option("--step")->count() > 0) sc.step = g.step;
    if (app.get_option("--rhp-step")->count() > 0) sc.rhp_step = g.rhp_step;
    sc.seed = g.seed;
    if (!(sc.tmax > 0.0) || !(sc.step > 0.0) || !(sc.rhp_step > 0.0)) {
        throw InputError("--tmax, --step and --rhp-step must be positive");
    }
    return sc;
}

void add_scalars(Provenance& provenance, const Json& summary) {
    for (const auto& [key, value] : summary.items()) {
        const bool present = std::any_of(provenance.begin(), provenance.end(),
                                         [&](const auto& kv) { return kv.first == key; });
        if (present) {
            continue;
        }
        if (value.is_number()) {
            provenance.emplace_back(key, format_number(value.get<double>()));
        } else if (value.is_boolean()) {
            provenance.emplace_back(key, value.get<bool>() ? "true" : "false");
        } else if (value.is_string()) {
            provenance.emplace_back(key, value.get<std::string>());
        }
    }
}

void emit_table(const GlobalOptions& g, std::ostream& out, const Provenance& provenance, const Table& table,
                const Json* summary = nullptr) {
    Sink sink(g.out, out);
    if (g.format == "json") {
        Json doc = table_to_json(provenance, table);
        if (summary) doc["summary"] = *summary;
        sink.stream() << doc.dump(2) << '\n';
    } else {
        Provenance full = provenance;
        if (summary) add_scalars(full, *summary);
        write_csv(sink.stream(), full, table);
    }
    sink.close();
    if (summary && !g.summary.empty()) {
        Sink s(g.summary, out);
        s.stream() << summary->dump(2) << '\n';
        s.close();
    }
}

void maybe_plot(const GlobalOptions& g, const Plot& plot) {
    if (!g.plot.empty()) {
        emit_plot(plot, g.plot);
    }
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Non-Markovianity of a laser-driven qubit in a Lorentzian reservoir", "nonmark"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--config", g.config, "Parameter file (key = value lines)");
    app.add_option("--regime", g.regime, "auto, secular, intermediate (full), nonsecular (simplified), undriven")
        ->capture_default_str();
    const std::pair<const char*, const char*> params[] = {
        {"alpha", "Coupling strength alpha"},      {"lambda", "Reservoir width lambda"},
        {"omega0", "Reservoir centre omega_0"},    {"omegaA", "Atomic frequency omega_A"},
        {"omegaL", "Laser frequency omega_L"},     {"Omega", "Rabi frequency Omega"},
        {"s", "Dimensionless detuning s (overrides the drive)"},
        {"p", "Dimensionless Rabi frequency p (overrides the drive)"},
    };
    for (const auto& [name, help] : params) {
        g.values[name] = 0.0;
        g.params[name] = app.add_option(std::string("--") + name, g.values[name], help);
    }
    app.add_option("--tmax", g.tmax, "Horizon in units of 1/lambda")->capture_default_str();
    app.add_option("--step", g.step, "Integration and BLP grid step, units of 1/lambda")->capture_default_str();
    app.add_option("--rhp-step", g.rhp_step, "RHP grid step, units of 1/lambda")->capture_default_str();
    app.add_option("--seed", g.seed, "Seed for the BLP random candidates")->capture_default_str();
    app.add_option("--out", g.out, "Output file ('-' for stdout)")->capture_default_str();
    app.add_option("--summary", g.summary, "Also write the JSON summary of rhp/blp here");
    app.add_option("--format", g.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--plot", g.plot, "Write an SVG chart to this path");

    auto* rates = app.add_subcommand("rates", "Decay rates and Lamb shifts on the RHP grid");
    bool threshold = false;
    rates->add_flag("--threshold", threshold, "Print the nonsecular negativity threshold s* instead");

    auto* evolve_cmd = app.add_subcommand("evolve", "Bloch-vector trajectory");
    std::string bloch = "0,0,1";
    evolve_cmd->add_option("--bloch", bloch, "Initial Bloch vector x,y,z")->capture_default_str();

    auto* rhp = app.add_subcommand("rhp", "RHP measure");
    std::string method = "auto", form = "consistent";
    rhp->add_option("--method", method, "auto, numeric, analytic or both (auto = both where a closed form exists)")->capture_default_str();
    rhp->add_option("--closed-form", form, "consistent or published")
        ->check(CLI::IsMember({"consistent", "published"}))
        ->capture_default_str();

    auto* blp = app.add_subcommand("blp", "BLP measure");
    BlpSearchConfig search;
    std::string r1_text, r2_text;
    blp->add_option("--directions", search.directions, "Antipodal direction pairs in stage 1")
        ->capture_default_str();
    blp->add_option("--random-pairs", search.random_pairs, "Random pure pairs in stage 1")->capture_default_str();
    blp->add_option("--refine", search.refine_seeds, "Stage-1 candidates refined by Nelder-Mead")
        ->capture_default_str();
    auto* r1_opt = blp->add_option("--r1", r1_text, "First Bloch vector of a fixed pair");
    auto* r2_opt = blp->add_option("--r2", r2_text, "Second Bloch vector of a fixed pair");
    r1_opt->needs(r2_opt);
    r2_opt->needs(r1_opt);

    auto* compare = app.add_subcommand("compare", "Undriven versus driven qubit, both measures");

    auto* sweep = app.add_subcommand("sweep", "Parameter grid in parallel");
    std::vector<std::string> axis_texts;
    std::string outputs = "both";
    unsigned threads = 0;
    sweep->add_option("--axis", axis_texts, "name=lo:hi:steps (repeatable)")->required();
    sweep->add_option("--outputs", outputs, "rates, rhp, blp or both")->capture_default_str();
    sweep->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        const Scenario sc = build_scenario(g, app);
        for (const auto& w : sc.warnings()) {
            err << "warning: " << w << '\n';
        }
        const Provenance provenance = sc.provenance();

        if (rates->parsed()) {
            if (threshold) {
                Table t;
                t.columns = {"s_star"};
                t.add_row({negativity_threshold_s()});
                emit_table(g, out, provenance, t);
                return 0;
            }
            const SeriesRun run = run_rates(sc);
            emit_table(g, out, provenance, run.table);
            maybe_plot(g, run.plot);
        } else if (evolve_cmd->parsed()) {
            const SeriesRun run = run_evolve(sc, parse_bloch(bloch));
            emit_table(g, out, provenance, run.table);
            maybe_plot(g, run.plot);
        } else if (rhp->parsed()) {
            RhpOptions options;
            if (method == "auto") {
                options.method = has_closed_form(sc.spec().kind) ? RhpMethod::Both : RhpMethod::Numeric;
            } else {
                options.method = parse_rhp_method(method);
            }
            options.form = form == "published" ? ClosedForm::AsPublished : ClosedForm::Consistent;
            const RhpRun run = run_rhp(sc, options);
            if (run.report.divergent) {
                err << "warning: the undriven rate has poles inside the horizon; the RHP integral diverges\n";
            }
            if (run.report.tail_bound > 1e-6) {
                err << "warning: tail bound beyond the horizon is " << run.report.tail_bound << '\n';
            }
            emit_table(g, out, provenance, run.series.table, &run.summary);
            maybe_plot(g, run.series.plot);
        } else if (blp->parsed()) {
            std::optional<std::pair<BlochVector, BlochVector>> pair;
            if (r1_opt->count() > 0) {
                pair.emplace(parse_bloch(r1_text), parse_bloch(r2_text));
            }
            if (search.directions < 1 || search.random_pairs < 0 || search.refine_seeds < 0) {
                throw InputError("--directions must be >= 1, --random-pairs and --refine >= 0");
            }
            const BlpRun run = run_blp(sc, search, pair);
            emit_table(g, out, provenance, run.series.table, &run.summary);
            maybe_plot(g, run.series.plot);
        } else if (compare->parsed()) {
            if (!g.plot.empty()) {
                throw InputError("compare does not produce a chart");
            }
            const CompareReport report = run_compare(sc);
            if (g.format == "json") {
                Json doc = report.to_json();
                Json prov = Json::object();
                for (const auto& [k, v] : provenance) prov[k] = v;
                doc["provenance"] = prov;
                Sink sink(g.out, out);
                sink.stream() << doc.dump(2) << '\n';
                sink.close();
            } else {
                Provenance full = provenance;
                full.emplace_back("laser_induced", report.laser_induced ? "true" : "false");
                Sink sink(g.out, out);
                write_csv(sink.stream(), full, report.to_table());
                sink.close();
            }
        } else if (sweep->parsed()) {
            SweepSpec spec;
            spec.base = sc;
            for (const auto& text : axis_texts) spec.axes.push_back(SweepAxis::parse(text));
            spec.outputs = parse_sweep_output(outputs);
            spec.threads = threads;
            const Table table = run_sweep(spec);
            emit_table(g, out, provenance, table);
            maybe_plot(g, sweep_plot(spec, table));
        }
        return 0;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace nonmark::app
