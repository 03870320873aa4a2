// The work behind each subcommand, independent of argument parsing.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nonmark/blp.hpp"
#include "nonmark/rhp.hpp"
#include "output.hpp"
#include "plot.hpp"
#include "scenario.hpp"

namespace nonmark::app {

using Json = nlohmann::ordered_json;

/// Values at or below these count as zero when reports call a measure Markovian.
inline constexpr double kRhpZero = 1e-8;
inline constexpr double kBlpZero = 1e-6;

struct SeriesRun {
    Table table;
    Plot plot;
};

/// T, gamma_minus, gamma_zero, gamma_plus, lamb_minus, lamb_zero, lamb_plus on the RHP
/// grid; t, gamma for the undriven model (NaN at poles).
SeriesRun run_rates(const Scenario& scenario);

/// t, x, y, z, purity from the given initial Bloch vector.
SeriesRun run_evolve(const Scenario& scenario, const BlochVector& initial);

struct RhpRun {
    RhpReport report;
    SeriesRun series;
    Json summary;
};

RhpRun run_rhp(const Scenario& scenario, const RhpOptions& options);

struct BlpRun {
    BlpReport report;
    SeriesRun series;
    Json summary;
};

/// Pair search, or the single pair when `pair` is set. The scenario seed drives the search.
BlpRun run_blp(const Scenario& scenario, BlpSearchConfig config,
               const std::optional<std::pair<BlochVector, BlochVector>>& pair = std::nullopt);

struct CompareRow {
    std::string label;
    std::string generator;
    double rhp{0.0};
    double blp{0.0};
    bool rhp_divergent{false};
};

struct CompareReport {
    CompareRow undriven;
    CompareRow driven;
    /// Undriven Markovian by both measures while the driven qubit is not by either.
    bool laser_induced{false};
    Json to_json() const;
    Table to_table() const;
};

/// Undriven resonant qubit versus the driven qubit in the same reservoir.
CompareReport run_compare(const Scenario& scenario);

struct SweepAxis {
    std::string name;
    double lo{0.0};
    double hi{0.0};
    int steps{1};

    /// "name=lo:hi:steps", or "name=value" for a single point.
    static SweepAxis parse(std::string_view text);
    std::vector<double> values() const;
};

enum class SweepOutput { Rates, Rhp, Blp, Both };

SweepOutput parse_sweep_output(std::string_view name);
std::string_view to_string(SweepOutput output);

struct SweepSpec {
    Scenario base;
    std::vector<SweepAxis> axes;
    SweepOutput outputs{SweepOutput::Both};
    RhpOptions rhp{};
    BlpSearchConfig blp{};
    unsigned threads{0}; // 0 = hardware concurrency
};

/// One row per grid point in row-major axis order (last axis fastest). Failures are
/// recorded in the error column and the sweep continues.
Table run_sweep(const SweepSpec& spec);

/// Measure-versus-first-axis chart, one series per combination of the other axes.
Plot sweep_plot(const SweepSpec& spec, const Table& table);

Json table_to_json(const Provenance& provenance, const Table& table);

} // namespace nonmark::app
