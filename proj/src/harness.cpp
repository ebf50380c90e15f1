#include "liqprob/harness.hpp"

#include "liqprob/analytic.hpp"
#include "liqprob/error.hpp"
#include "liqprob/format.hpp"

#include <algorithm>

#include <json.hpp>

namespace liqprob::harness {

namespace {

constexpr int kDigits = 6;

constexpr const char* kColumns[] = {"days",
                                    "p_reflection",
                                    "p_ig",
                                    "p_mc_euler",
                                    "p_mc_euler_se",
                                    "p_mc_gbm",
                                    "p_mc_gbm_se",
                                    "p_mc_nodrift",
                                    "p_mc_nodrift_se",
                                    "diff_reflection_nodrift",
                                    "diff_ig_gbm"};

std::vector<double> row_values(const ComparisonRow& r) {
    return {r.p_reflection.value(),   r.p_ig.value(),           r.p_mc_euler.p_hat,
            r.p_mc_euler.std_error,   r.p_mc_gbm.p_hat,         r.p_mc_gbm.std_error,
            r.p_mc_nodrift.p_hat,     r.p_mc_nodrift.std_error, r.diff_reflection_nodrift,
            r.diff_ig_gbm};
}

}  // namespace

std::vector<MarketScenario> table1_scenarios() {
    std::vector<MarketScenario> out;
    for (double sigma : {0.8, 1.8, 2.8}) {
        for (double s0 : {1500.0, 2500.0}) {
            out.emplace_back(sigma, s0, 1200.0);
        }
    }
    return out;
}

std::vector<Horizon> default_horizons() {
    std::vector<Horizon> out;
    for (double d : {3.0, 7.0, 14.0, 30.0, 60.0, 90.0, 120.0}) {
        out.emplace_back(d);
    }
    return out;
}

std::vector<Horizon> extended_horizons() {
    auto out = default_horizons();
    out.emplace_back(150.0);
    out.emplace_back(180.0);
    return out;
}

std::vector<ScenarioResult> run_comparison(const ScenarioGrid& grid, unsigned threads) {
    if (grid.scenarios.empty() || grid.horizons.empty()) {
        throw Error(ErrorKind::Validation, "scenario grid needs at least one scenario and horizon");
    }
    auto horizons = grid.horizons;
    std::stable_sort(horizons.begin(), horizons.end());

    std::vector<ScenarioResult> results;
    results.reserve(grid.scenarios.size());
    for (const MarketScenario& scenario : grid.scenarios) {
        ScenarioResult result{scenario, {}};
        result.rows.reserve(horizons.size());
        for (const Horizon& h : horizons) {
            auto run = [&](montecarlo::Scheme scheme) {
                auto cfg = grid.config;
                cfg.scheme = scheme;
                return montecarlo::estimate_liquidation_prob(scenario, h, cfg, threads);
            };
            const Probability refl = analytic::reflection_liquidation_prob(scenario, h);
            const Probability ig = analytic::ig_liquidation_prob(scenario, h);
            const auto euler = run(montecarlo::Scheme::EulerMaruyama);
            const auto gbm = run(montecarlo::Scheme::ExactGbm);
            const auto nodrift = run(montecarlo::Scheme::ZeroDriftGbm);
            result.rows.push_back(ComparisonRow{
                .days = h.days(),
                .p_reflection = refl,
                .p_ig = ig,
                .p_mc_euler = euler,
                .p_mc_gbm = gbm,
                .p_mc_nodrift = nodrift,
                .diff_reflection_nodrift = refl.value() - nodrift.p_hat,
                .diff_ig_gbm = ig.value() - gbm.p_hat,
            });
        }
        results.push_back(std::move(result));
    }
    return results;
}

std::string emit_table(const std::vector<ComparisonRow>& rows, TableFormat format) {
    if (rows.empty()) {
        throw Error(ErrorKind::EmptyOutput, "no comparison rows to emit");
    }
    if (format == TableFormat::Json) {
        auto out = nlohmann::ordered_json::array();
        for (const ComparisonRow& r : rows) {
            nlohmann::ordered_json obj;
            obj[kColumns[0]] = r.days;
            const auto values = row_values(r);
            for (std::size_t i = 0; i < values.size(); ++i) {
                obj[kColumns[i + 1]] = fmt::round_to(values[i], kDigits);
            }
            out.push_back(std::move(obj));
        }
        return out.dump(2) + "\n";
    }

    std::string out;
    for (std::size_t i = 0; i < std::size(kColumns); ++i) {
        out += (i ? "," : "");
        out += kColumns[i];
    }
    out += '\n';
    for (const ComparisonRow& r : rows) {
        out += fmt::shortest(r.days);
        for (double v : row_values(r)) {
            out += ',';
            out += fmt::fixed(v, kDigits);
        }
        out += '\n';
    }
    return out;
}

}  // namespace liqprob::harness
