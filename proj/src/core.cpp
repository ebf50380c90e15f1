#include "liqprob/core.hpp"

#include "liqprob/error.hpp"

#include <array>
#include <numbers>
#include <string>

namespace liqprob {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Validation: return "validation";
        case ErrorKind::DegenerateScenario: return "degenerate_scenario";
        case ErrorKind::Config: return "config";
        case ErrorKind::Format: return "format";
        case ErrorKind::Ordering: return "ordering";
        case ErrorKind::InsufficientData: return "insufficient_data";
        case ErrorKind::ZeroVolatility: return "zero_volatility";
        case ErrorKind::EmptyOutput: return "empty_output";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw Error(ErrorKind::Domain, std::string(what) + ": non-finite argument");
    }
}

void require_positive(double x, const char* name) {
    if (!(std::isfinite(x) && x > 0.0)) {
        throw Error(ErrorKind::Validation,
                    std::string(name) + " must be finite and > 0, got " + std::to_string(x));
    }
}

// Below this point erfc still returns a normal double with full relative
// accuracy; further out the asymptotic series converges to machine precision.
constexpr double kLogTailSwitch = -30.0;

// ln Phi(x) for x <= kLogTailSwitch:
//   ln phi(x) - ln|x| + ln(1 - 1/x^2 + 3/x^4 - 15/x^6 + ...)
double log_cdf_asymptotic(double x) {
    const double inv_x2 = 1.0 / (x * x);
    double term = 1.0;
    double series = 1.0;
    for (int k = 1; k <= 12; ++k) {
        term *= -static_cast<double>(2 * k - 1) * inv_x2;
        series += term;
    }
    constexpr double half_log_2pi = 0.91893853320467274178032973640562;
    return -0.5 * x * x - std::log(-x) - half_log_2pi + std::log(series);
}

}  // namespace

double std_normal_cdf(double x) {
    require_finite(x, "std_normal_cdf");
    return 0.5 * std::erfc(-x * (1.0 / std::numbers::sqrt2));
}

double log_std_normal_cdf(double x) {
    require_finite(x, "log_std_normal_cdf");
    if (x > 0.0) {
        return std::log1p(-0.5 * std::erfc(x * (1.0 / std::numbers::sqrt2)));
    }
    if (x >= kLogTailSwitch) {
        return std::log(0.5 * std::erfc(-x * (1.0 / std::numbers::sqrt2)));
    }
    return log_cdf_asymptotic(x);
}

MarketScenario::MarketScenario(double sigma_annual, double s0, double s_liq)
    : sigma_annual_(sigma_annual), s0_(s0), s_liq_(s_liq) {
    require_positive(sigma_annual, "sigma_annual");
    require_positive(s0, "s0");
    require_positive(s_liq, "s_liq");
}

Horizon::Horizon(double days) : days_(days) { require_positive(days, "days"); }

Probability::Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw Error(ErrorKind::Validation,
                    "probability must lie in [0, 1], got " + std::to_string(value));
    }
}

}  // namespace liqprob
