#include "liqprob/montecarlo.hpp"

#include "liqprob/error.hpp"
#include "liqprob/rng.hpp"

#include <algorithm>
#include <string>
#include <thread>

namespace liqprob::montecarlo {

std::string_view to_string(Scheme scheme) noexcept {
    switch (scheme) {
        case Scheme::EulerMaruyama: return "euler-maruyama";
        case Scheme::ExactGbm: return "exact-gbm";
        case Scheme::ZeroDriftGbm: return "zero-drift-gbm";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    for (Scheme s : kAllSchemes) {
        if (name == to_string(s)) {
            return s;
        }
    }
    throw Error(ErrorKind::Validation,
                "unknown scheme '" + std::string(name) +
                    "' (expected euler-maruyama, exact-gbm or zero-drift-gbm)");
}

ProbabilityEstimate ProbabilityEstimate::from_counts(std::uint64_t n_liquidated,
                                                     std::uint64_t n_paths) {
    if (n_paths == 0 || n_liquidated > n_paths) {
        throw Error(ErrorKind::Validation, "invalid path counts");
    }
    ProbabilityEstimate e;
    e.n_liquidated = n_liquidated;
    e.n_paths = n_paths;
    e.p_hat = static_cast<double>(n_liquidated) / static_cast<double>(n_paths);
    e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n_paths));
    e.ci_low = std::clamp(e.p_hat - 1.96 * e.std_error, 0.0, 1.0);
    e.ci_high = std::clamp(e.p_hat + 1.96 * e.std_error, 0.0, 1.0);
    return e;
}

StepGrid make_step_grid(const Horizon& horizon, double dt_days) {
    if (!(std::isfinite(dt_days) && dt_days > 0.0)) {
        throw Error(ErrorKind::Config, "dt_days must be finite and > 0");
    }
    if (dt_days > horizon.days()) {
        throw Error(ErrorKind::Config, "dt_days exceeds the horizon");
    }
    // Snap ratios within rounding noise of an integer, e.g. 30 / 0.01.
    const double ratio = horizon.days() / dt_days;
    const double nearest = std::round(ratio);
    StepGrid grid;
    grid.dt_days = dt_days;
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) {
        grid.full_steps = static_cast<std::size_t>(nearest);
    } else {
        grid.full_steps = static_cast<std::size_t>(std::floor(ratio));
        grid.remainder_days = horizon.days() - static_cast<double>(grid.full_steps) * dt_days;
    }
    return grid;
}

double step(Scheme scheme, double s, double sigma_annual, double dt_years, double z) noexcept {
    const double shock = sigma_annual * std::sqrt(dt_years) * z;
    switch (scheme) {
        case Scheme::EulerMaruyama: return s + s * shock;
        case Scheme::ExactGbm: return s * std::exp(shock - 0.5 * sigma_annual * sigma_annual * dt_years);
        case Scheme::ZeroDriftGbm: return s * std::exp(shock);
    }
    return s;
}

namespace {

// Precomputed per-step constants so the hot loop matches step() exactly.
struct Stepper {
    Scheme scheme;
    double sigma;
    double dt_years;
    double remainder_years;

    [[nodiscard]] double advance(double s, double z, bool partial) const noexcept {
        return step(scheme, s, sigma, partial ? remainder_years : dt_years, z);
    }
};

bool path_liquidates(const Stepper& stepper, const StepGrid& grid, double s0, double s_liq,
                     std::uint64_t seed, std::uint64_t path_index) {
    rng::NormalStream stream(seed, path_index);
    double s = s0;
    const std::size_t n = grid.step_count();
    for (std::size_t k = 0; k < n; ++k) {
        s = stepper.advance(s, stream.next(), k == grid.full_steps);
        if (s <= s_liq) {
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<double> simulate_path(const MarketScenario& scenario, const Horizon& horizon,
                                  Scheme scheme, double dt_days, std::uint64_t seed,
                                  std::uint64_t path_index) {
    const StepGrid grid = make_step_grid(horizon, dt_days);
    const Stepper stepper{scheme, scenario.sigma_annual(), grid.dt_days / kDaysPerYear,
                          grid.remainder_days / kDaysPerYear};
    rng::NormalStream stream(seed, path_index);
    std::vector<double> path;
    path.reserve(grid.step_count() + 1);
    path.push_back(scenario.s0());
    for (std::size_t k = 0; k < grid.step_count(); ++k) {
        path.push_back(stepper.advance(path.back(), stream.next(), k == grid.full_steps));
    }
    return path;
}

ProbabilityEstimate estimate_liquidation_prob(const MarketScenario& scenario,
                                              const Horizon& horizon,
                                              const SimulationConfig& config, unsigned threads) {
    if (config.n_paths == 0) {
        throw Error(ErrorKind::Config, "n_paths must be >= 1");
    }
    const StepGrid grid = make_step_grid(horizon, config.dt_days);
    const std::uint64_t n_paths = config.n_paths;
    if (scenario.is_liquidated_now()) {
        return ProbabilityEstimate::from_counts(n_paths, n_paths);
    }

    const Stepper stepper{config.scheme, scenario.sigma_annual(), grid.dt_days / kDaysPerYear,
                          grid.remainder_days / kDaysPerYear};
    auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t hits = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            hits += path_liquidates(stepper, grid, scenario.s0(), scenario.s_liq(), config.seed, i) ? 1 : 0;
        }
        return hits;
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_paths));
    if (workers <= 1) {
        return ProbabilityEstimate::from_counts(count_range(0, n_paths), n_paths);
    }

    std::vector<std::uint64_t> hits(workers, 0);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = n_paths * w / workers;
            const std::uint64_t end = n_paths * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] { hits[w] = count_range(begin, end); });
        }
    }
    std::uint64_t total = 0;
    for (std::uint64_t h : hits) {
        total += h;
    }
    return ProbabilityEstimate::from_counts(total, n_paths);
}

}  // namespace liqprob::montecarlo
