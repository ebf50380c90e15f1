#pragma once

#include "liqprob/core.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace liqprob::montecarlo {

/// Discretizations of dS = sigma S dW over a step dt:
///   EulerMaruyama  S + sigma S sqrt(dt) Z
///   ExactGbm       S exp(sigma sqrt(dt) Z - sigma^2 dt / 2)
///   ZeroDriftGbm   S exp(sigma sqrt(dt) Z)
enum class Scheme { EulerMaruyama, ExactGbm, ZeroDriftGbm };

inline constexpr Scheme kAllSchemes[] = {Scheme::EulerMaruyama, Scheme::ExactGbm,
                                         Scheme::ZeroDriftGbm};

/// "euler-maruyama", "exact-gbm", "zero-drift-gbm".
[[nodiscard]] std::string_view to_string(Scheme scheme) noexcept;

/// Inverse of to_string. Throws Error{Validation} for any other name.
[[nodiscard]] Scheme parse_scheme(std::string_view name);

struct SimulationConfig {
    std::size_t n_paths = 10000;
    double dt_days = 1.0;
    Scheme scheme = Scheme::ExactGbm;
    std::uint64_t seed = 0;
};

/// Hitting-fraction estimate N_liquidated / N with a Wald 95% interval.
struct ProbabilityEstimate {
    double p_hat = 0.0;
    std::uint64_t n_liquidated = 0;
    std::uint64_t n_paths = 0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;

    /// Requires 1 <= n_paths and n_liquidated <= n_paths.
    [[nodiscard]] static ProbabilityEstimate from_counts(std::uint64_t n_liquidated,
                                                         std::uint64_t n_paths);

    friend bool operator==(const ProbabilityEstimate&, const ProbabilityEstimate&) = default;
};

/// Time grid covering a horizon: `full_steps` steps of dt followed, when the
/// horizon is not a multiple of dt, by one shorter step of `remainder_days`.
struct StepGrid {
    std::size_t full_steps = 0;
    double dt_days = 0.0;
    double remainder_days = 0.0;

    [[nodiscard]] std::size_t step_count() const noexcept {
        return full_steps + (remainder_days > 0.0 ? 1 : 0);
    }
};

/// Throws Error{Config} when dt is not finite and positive or exceeds the horizon.
[[nodiscard]] StepGrid make_step_grid(const Horizon& horizon, double dt_days);

/// One update of the selected scheme. Euler-Maruyama may return a
/// non-positive price for a large negative shock; it is passed through.
[[nodiscard]] double step(Scheme scheme, double s, double sigma_annual, double dt_years,
                          double z) noexcept;

/// Discrete path s0, S_1, ..., S_n for the stream (seed, path_index); the
/// same stream the estimator uses for that path. Length is step count + 1.
[[nodiscard]] std::vector<double> simulate_path(const MarketScenario& scenario,
                                                const Horizon& horizon, Scheme scheme,
                                                double dt_days, std::uint64_t seed,
                                                std::uint64_t path_index = 0);

/// Fraction of simulated paths whose price is <= s_liq at any step boundary
/// (or at inception). Bit-identical for any `threads`; 0 means one worker
/// per hardware thread. Throws Error{Config} for n_paths == 0 or dt > horizon.
[[nodiscard]] ProbabilityEstimate estimate_liquidation_prob(const MarketScenario& scenario,
                                                            const Horizon& horizon,
                                                            const SimulationConfig& config,
                                                            unsigned threads = 0);

}  // namespace liqprob::montecarlo
