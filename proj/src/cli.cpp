#include "liqprob/cli.hpp"

#include "liqprob/analytic.hpp"
#include "liqprob/core.hpp"
#include "liqprob/data.hpp"
#include "liqprob/error.hpp"
#include "liqprob/format.hpp"
#include "liqprob/harness.hpp"
#include "liqprob/montecarlo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace liqprob::cli {

namespace {

constexpr int kDigits = 6;

/// Bad flag values found after CLI11 parsing; reported as usage errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Json, Csv };

struct GlobalFlags {
    std::optional<std::string> format;
    unsigned threads = 0;
    std::uint64_t seed = 0;

    [[nodiscard]] OutputFormat output(OutputFormat fallback) const {
        if (!format) {
            return fallback;
        }
        return *format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    }
};

struct ScenarioFlags {
    double sigma = 0.0;
    double s0 = 0.0;
    double s_liq = 0.0;
};

struct SimFlags {
    std::size_t n_paths = 10000;
    double dt_days = 1.0;
    std::string scheme = "exact-gbm";
};

std::string json_escape(const std::string& s) { return nlohmann::json(s).dump(); }

/// JSON number text for a probability-like value at the table precision.
std::string prob_text(double x) {
    std::string s = fmt::shortest(fmt::round_to(x, kDigits));
    if (s.find_first_of(".eE") == std::string::npos) {
        s += ".0";
    }
    return s;
}

std::string real_text(double x) {
    std::string s = fmt::shortest(x);
    if (s.find_first_of(".eEn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

/// Flat one-line JSON object with pre-rendered values: {"k": v, ...}.
class JsonLine {
public:
    JsonLine& add(const std::string& key, std::string rendered) {
        fields_.emplace_back(key, std::move(rendered));
        return *this;
    }
    [[nodiscard]] std::string str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < fields_.size(); ++i) {
            out += i ? ", " : "";
            out += json_escape(fields_[i].first) + ": " + fields_[i].second;
        }
        return out + "}\n";
    }

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

void report(std::ostream& err, std::string_view kind, const std::string& message) {
    err << "{\"error\": " << json_escape(std::string(kind)) << ", \"message\": " << json_escape(message)
        << "}\n";
}

void warn(std::ostream& err, std::string_view kind, const std::string& message) {
    err << "{\"warning\": " << json_escape(std::string(kind))
        << ", \"message\": " << json_escape(message) << "}\n";
}

MarketScenario make_scenario(const ScenarioFlags& f) {
    try {
        return MarketScenario{f.sigma, f.s0, f.s_liq};
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

Horizon make_horizon(double days) {
    try {
        return Horizon{days};
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

montecarlo::SimulationConfig make_config(const SimFlags& f, const GlobalFlags& g,
                                         const std::vector<Horizon>& horizons) {
    montecarlo::SimulationConfig cfg;
    try {
        cfg.scheme = montecarlo::parse_scheme(f.scheme);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    cfg.n_paths = f.n_paths;
    cfg.dt_days = f.dt_days;
    cfg.seed = g.seed;
    if (cfg.n_paths == 0) {
        throw UsageError("--n-paths must be >= 1");
    }
    for (const Horizon& h : horizons) {
        if (cfg.dt_days > h.days()) {
            throw UsageError("--dt-days exceeds horizon of " + fmt::shortest(h.days()) + " days");
        }
    }
    return cfg;
}

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f, bool required) {
    auto* a = cmd->add_option("--sigma", f.sigma, "annualized volatility")->check(CLI::PositiveNumber);
    auto* b = cmd->add_option("--s0", f.s0, "current exchange rate")->check(CLI::PositiveNumber);
    auto* c = cmd->add_option("--sliq", f.s_liq, "liquidation exchange rate")->check(CLI::PositiveNumber);
    if (required) {
        a->required();
        b->required();
        c->required();
    }
}

void add_sim_flags(CLI::App* cmd, SimFlags& f, bool with_scheme) {
    cmd->add_option("--n-paths", f.n_paths, "number of simulated paths")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--dt-days", f.dt_days, "time step in days")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    if (with_scheme) {
        cmd->add_option("--scheme", f.scheme, "euler-maruyama | exact-gbm | zero-drift-gbm")
            ->check(CLI::IsMember({"euler-maruyama", "exact-gbm", "zero-drift-gbm"}))
            ->capture_default_str();
    }
}

data::OhlcSeries load_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open input file '" + path + "'");
    }
    return data::parse_ohlc_csv(in);
}

// --- subcommands -----------------------------------------------------------

std::string cmd_analytic(const ScenarioFlags& sf, double days, const std::string& method,
                         const GlobalFlags& g, std::ostream& err) {
    const MarketScenario scenario = make_scenario(sf);
    const Horizon horizon = make_horizon(days);
    if (scenario.is_liquidated_now()) {
        warn(err, "already_liquidated", "s0 <= sliq: the position is at or past the liquidation threshold");
    }
    std::vector<std::pair<std::string, double>> results;
    if (method == "reflection" || method == "both") {
        results.emplace_back("reflection", analytic::reflection_liquidation_prob(scenario, horizon).value());
    }
    if (method == "ig" || method == "both") {
        results.emplace_back("ig", analytic::ig_liquidation_prob(scenario, horizon).value());
    }

    if (g.output(OutputFormat::Json) == OutputFormat::Csv) {
        std::string out = "method,p\n";
        for (const auto& [name, p] : results) {
            out += name + "," + fmt::fixed(p, kDigits) + "\n";
        }
        return out;
    }
    JsonLine line;
    if (results.size() == 1) {
        line.add("p", prob_text(results.front().second));
    } else {
        for (const auto& [name, p] : results) {
            line.add("p_" + name, prob_text(p));
        }
    }
    return line.str();
}

std::string cmd_simulate(const ScenarioFlags& sf, double days, const SimFlags& sim,
                         const GlobalFlags& g, std::ostream& err) {
    const MarketScenario scenario = make_scenario(sf);
    const Horizon horizon = make_horizon(days);
    const auto cfg = make_config(sim, g, {horizon});
    if (scenario.is_liquidated_now()) {
        warn(err, "already_liquidated", "s0 <= sliq: the position is at or past the liquidation threshold");
    }
    const auto est = montecarlo::estimate_liquidation_prob(scenario, horizon, cfg, g.threads);

    const std::string scheme(montecarlo::to_string(cfg.scheme));
    if (g.output(OutputFormat::Json) == OutputFormat::Csv) {
        return "scheme,p_hat,std_error,ci_low,ci_high,n_liquidated,n_paths,seed\n" + scheme + "," +
               fmt::fixed(est.p_hat, kDigits) + "," + fmt::fixed(est.std_error, kDigits) + "," +
               fmt::fixed(est.ci_low, kDigits) + "," + fmt::fixed(est.ci_high, kDigits) + "," +
               std::to_string(est.n_liquidated) + "," + std::to_string(est.n_paths) + "," +
               std::to_string(cfg.seed) + "\n";
    }
    return JsonLine{}
        .add("scheme", json_escape(scheme))
        .add("p_hat", prob_text(est.p_hat))
        .add("std_error", prob_text(est.std_error))
        .add("ci_low", prob_text(est.ci_low))
        .add("ci_high", prob_text(est.ci_high))
        .add("n_liquidated", std::to_string(est.n_liquidated))
        .add("n_paths", std::to_string(est.n_paths))
        .add("dt_days", real_text(cfg.dt_days))
        .add("seed", std::to_string(cfg.seed))
        .str();
}

std::string scenario_file_stem(std::size_t index, const MarketScenario& s) {
    return "scenario_" + std::to_string(index + 1) + "_sigma" + fmt::shortest(s.sigma_annual()) + "_s0" +
           fmt::shortest(s.s0()) + "_sliq" + fmt::shortest(s.s_liq());
}

std::string cmd_compare(bool table1, std::size_t scenario_flag_count, const ScenarioFlags& sf,
                        const std::vector<double>& horizon_days, const SimFlags& sim,
                        const std::string& out_dir, const GlobalFlags& g) {
    harness::ScenarioGrid grid;
    if (table1) {
        if (scenario_flag_count != 0) {
            throw UsageError("--table1 cannot be combined with --sigma/--s0/--sliq");
        }
        grid.scenarios = harness::table1_scenarios();
    } else {
        if (scenario_flag_count != 3) {
            throw UsageError("compare needs --table1 or all of --sigma, --s0, --sliq");
        }
        grid.scenarios.push_back(make_scenario(sf));
    }
    if (horizon_days.empty()) {
        grid.horizons = harness::default_horizons();
    } else {
        for (double d : horizon_days) {
            grid.horizons.push_back(make_horizon(d));
        }
    }
    grid.config = make_config(sim, g, grid.horizons);

    const OutputFormat format = g.output(OutputFormat::Csv);
    const auto results = harness::run_comparison(grid, g.threads);

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        throw Error(ErrorKind::Io, "cannot create output directory '" + out_dir + "'");
    }
    std::vector<std::string> written;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto table = harness::emit_table(
            results[i].rows, format == OutputFormat::Csv ? harness::TableFormat::Csv : harness::TableFormat::Json);
        const fs::path path =
            fs::path(out_dir) / (scenario_file_stem(i, results[i].scenario) +
                                 (format == OutputFormat::Csv ? ".csv" : ".json"));
        std::ofstream file(path, std::ios::binary | std::ios::trunc);
        file << table;
        file.close();
        if (!file) {
            throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
        }
        written.push_back(path.string());
    }
    return nlohmann::json{{"files", written}}.dump() + "\n";
}

std::string cmd_estimate_vol(const std::string& input, bool annualize, const GlobalFlags& g) {
    const auto vol = data::estimate_volatility(load_series(input));
    if (g.output(OutputFormat::Json) == OutputFormat::Csv) {
        return annualize ? "sigma_daily,sigma_annual,n_returns\n" + fmt::shortest(vol.sigma_daily) + "," +
                               fmt::shortest(vol.sigma_annual) + "," + std::to_string(vol.n_returns) + "\n"
                         : "sigma_daily,n_returns\n" + fmt::shortest(vol.sigma_daily) + "," +
                               std::to_string(vol.n_returns) + "\n";
    }
    JsonLine line;
    line.add("sigma_daily", real_text(vol.sigma_daily));
    if (annualize) {
        line.add("sigma_annual", real_text(vol.sigma_annual));
    }
    return line.add("n_returns", std::to_string(vol.n_returns)).str();
}

std::string cmd_histogram(const std::string& input, double bin_width, const GlobalFlags& g) {
    const auto hist = data::histogram_close_minus_open(load_series(input), bin_width);
    if (g.output(OutputFormat::Csv) == OutputFormat::Json) {
        return nlohmann::json(hist).dump() + "\n";
    }
    std::string out = "left_edge,count\n";
    for (const auto& b : hist.bins) {
        out += fmt::shortest(b.left_edge) + "," + std::to_string(b.count) + "\n";
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Liquidation probability for single-collateral stablecoin loans", "liqprob"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    app.add_option("--format", g.format, "output format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", g.threads, "worker threads for simulation (0 = auto)");
    app.add_option("--seed", g.seed, "master seed for simulation (default 0)");

    ScenarioFlags sf;
    SimFlags sim;
    double days = 0.0;
    std::string method = "both";
    std::vector<double> horizon_days;
    std::string out_dir;
    bool table1 = false;
    std::string input;
    bool annualize = false;
    double bin_width = 20.0;

    auto* analytic_cmd = app.add_subcommand("analytic", "closed-form liquidation probability");
    add_scenario_flags(analytic_cmd, sf, true);
    analytic_cmd->add_option("--days", days, "horizon in days")->required()->check(CLI::PositiveNumber);
    analytic_cmd->add_option("--method", method, "reflection | ig | both")
        ->check(CLI::IsMember({"reflection", "ig", "both"}))
        ->capture_default_str();

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo liquidation probability");
    add_scenario_flags(simulate_cmd, sf, true);
    simulate_cmd->add_option("--days", days, "horizon in days")->required()->check(CLI::PositiveNumber);
    add_sim_flags(simulate_cmd, sim, true);

    auto* compare_cmd = app.add_subcommand("compare", "closed forms against all schemes over horizons");
    add_scenario_flags(compare_cmd, sf, false);
    compare_cmd->add_flag("--table1", table1, "use the six-scenario reference grid");
    compare_cmd->add_option("--horizons", horizon_days, "comma-separated horizons in days")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    add_sim_flags(compare_cmd, sim, false);
    compare_cmd->add_option("--out", out_dir, "output directory")->required();

    auto* vol_cmd = app.add_subcommand("estimate-vol", "volatility from daily OHLC CSV");
    vol_cmd->add_option("--input", input, "OHLC CSV file")->required();
    vol_cmd->add_flag("--annualize", annualize, "also report sqrt(365)-annualized volatility");

    auto* hist_cmd = app.add_subcommand("histogram", "histogram of daily close - open");
    hist_cmd->add_option("--input", input, "OHLC CSV file")->required();
    hist_cmd->add_option("--bin-width", bin_width, "bin width in price units")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kSuccess;
        }
        report(err, "usage", e.what());
        return kUsageError;
    }

    try {
        std::string result;
        if (analytic_cmd->parsed()) {
            result = cmd_analytic(sf, days, method, g, err);
        } else if (simulate_cmd->parsed()) {
            result = cmd_simulate(sf, days, sim, g, err);
        } else if (compare_cmd->parsed()) {
            const std::size_t given = compare_cmd->count("--sigma") + compare_cmd->count("--s0") +
                                      compare_cmd->count("--sliq");
            result = cmd_compare(table1, given, sf, horizon_days, sim, out_dir, g);
        } else if (vol_cmd->parsed()) {
            result = cmd_estimate_vol(input, annualize, g);
        } else if (hist_cmd->parsed()) {
            result = cmd_histogram(input, bin_width, g);
        }
        out << result;
        out.flush();
        return kSuccess;
    } catch (const UsageError& e) {
        report(err, "usage", e.what());
        return kUsageError;
    } catch (const Error& e) {
        report(err, to_string(e.kind()), e.what());
        return kRuntimeError;
    } catch (const std::exception& e) {
        report(err, "runtime", e.what());
        return kRuntimeError;
    }
}

}  // namespace liqprob::cli
