#pragma once

#include "liqprob/core.hpp"
#include "liqprob/montecarlo.hpp"

#include <string>
#include <vector>

namespace liqprob::harness {

/// One horizon of a scenario: both closed forms next to all three schemes.
/// diff_reflection_nodrift = p_reflection - p_mc_nodrift.p_hat,
/// diff_ig_gbm = p_ig - p_mc_gbm.p_hat.
struct ComparisonRow {
    double days;
    Probability p_reflection;
    Probability p_ig;
    montecarlo::ProbabilityEstimate p_mc_euler;
    montecarlo::ProbabilityEstimate p_mc_gbm;
    montecarlo::ProbabilityEstimate p_mc_nodrift;
    double diff_reflection_nodrift;
    double diff_ig_gbm;
};

/// `config.scheme` is ignored; every scheme runs with the remaining settings.
struct ScenarioGrid {
    std::vector<MarketScenario> scenarios;
    std::vector<Horizon> horizons;
    montecarlo::SimulationConfig config;
};

struct ScenarioResult {
    MarketScenario scenario;
    std::vector<ComparisonRow> rows;
};

/// The six (volatility, S0, S_liq) rows used for the published comparison:
/// sigma in {0.8, 1.8, 2.8} against S0 in {1500, 2500} with S_liq = 1200.
[[nodiscard]] std::vector<MarketScenario> table1_scenarios();

/// {3, 7, 14, 30, 60, 90, 120} days.
[[nodiscard]] std::vector<Horizon> default_horizons();

/// default_horizons() plus 150 and 180 days.
[[nodiscard]] std::vector<Horizon> extended_horizons();

/// Throws Error{Validation} for an empty scenario or horizon list.
[[nodiscard]] std::vector<ScenarioResult> run_comparison(const ScenarioGrid& grid,
                                                         unsigned threads = 0);

enum class TableFormat { Csv, Json };

/// CSV header: days,p_reflection,p_ig,p_mc_euler,p_mc_euler_se,p_mc_gbm,
/// p_mc_gbm_se,p_mc_nodrift,p_mc_nodrift_se,diff_reflection_nodrift,diff_ig_gbm
/// with every probability, standard error and difference at 6 decimals.
/// JSON is an array of objects keyed by the same names.
/// Throws Error{EmptyOutput} for no rows.
[[nodiscard]] std::string emit_table(const std::vector<ComparisonRow>& rows, TableFormat format);

}  // namespace liqprob::harness
