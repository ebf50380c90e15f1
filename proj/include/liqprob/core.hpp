#pragma once

#include <cmath>

namespace liqprob {

/// Calendar-day year: crypto markets trade every day.
inline constexpr double kDaysPerYear = 365.0;

/// Standard normal CDF via erfc. Throws Error{Domain} on non-finite input.
[[nodiscard]] double std_normal_cdf(double x);

/// ln Phi(x), finite for arbitrarily negative x (asymptotic tail branch
/// below the erfc underflow region). Throws Error{Domain} on non-finite input.
[[nodiscard]] double log_std_normal_cdf(double x);

/// A single-collateral stablecoin loan position.
///
/// The loan value and the liquidation exchange rate are constant; only the
/// collateral exchange rate moves, as a GBM with annualized volatility
/// `sigma_annual`. A position with s0 <= s_liq is valid and reports
/// `is_liquidated_now()`.
class MarketScenario {
public:
    /// Throws Error{Validation} unless all three values are finite and > 0.
    MarketScenario(double sigma_annual, double s0, double s_liq);

    [[nodiscard]] double sigma_annual() const noexcept { return sigma_annual_; }
    [[nodiscard]] double s0() const noexcept { return s0_; }
    [[nodiscard]] double s_liq() const noexcept { return s_liq_; }

    [[nodiscard]] bool is_liquidated_now() const noexcept { return s0_ <= s_liq_; }

    /// a = ln(s_liq / s0); negative for a live position.
    [[nodiscard]] double log_barrier() const noexcept { return std::log(s_liq_ / s0_); }

    friend bool operator==(const MarketScenario&, const MarketScenario&) = default;

private:
    double sigma_annual_;
    double s0_;
    double s_liq_;
};

/// Prediction window, stored in days.
class Horizon {
public:
    /// Throws Error{Validation} unless days is finite and > 0.
    explicit Horizon(double days);

    [[nodiscard]] double days() const noexcept { return days_; }
    [[nodiscard]] double years() const noexcept { return days_ / kDaysPerYear; }

    friend auto operator<=>(const Horizon&, const Horizon&) = default;

private:
    double days_;
};

/// A real number in [0, 1].
class Probability {
public:
    /// Throws Error{Validation} outside [0, 1] (NaN included).
    explicit Probability(double value);

    [[nodiscard]] double value() const noexcept { return value_; }

    friend auto operator<=>(const Probability&, const Probability&) = default;

private:
    double value_;
};

}  // namespace liqprob
