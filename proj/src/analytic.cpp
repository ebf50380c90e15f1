#include "liqprob/analytic.hpp"

#include "liqprob/error.hpp"

#include <algorithm>
#include <numbers>

namespace liqprob::analytic {

Probability reflection_liquidation_prob(const MarketScenario& scenario, const Horizon& horizon) {
    if (scenario.is_liquidated_now()) {
        return Probability{1.0};
    }
    const double z = scenario.log_barrier() / (scenario.sigma_annual() * std::sqrt(horizon.years()));
    return Probability{std::clamp(2.0 * std_normal_cdf(z), 0.0, 1.0)};
}

IgParams ig_params(const MarketScenario& scenario) {
    if (scenario.is_liquidated_now()) {
        throw Error(ErrorKind::DegenerateScenario,
                    "ig_params requires s0 > s_liq (position is already at the threshold)");
    }
    const double sigma = scenario.sigma_annual();
    const double a2 = std::log(scenario.s0() / scenario.s_liq());
    const double mu2 = 0.5 * sigma * sigma;
    const double shape_root = a2 / sigma;
    return IgParams{.mu0 = a2 / mu2, .lambda = shape_root * shape_root, .a2 = a2, .mu2 = mu2};
}

Probability ig_liquidation_prob(const MarketScenario& scenario, const Horizon& horizon) {
    if (scenario.is_liquidated_now()) {
        return Probability{1.0};
    }
    const IgParams p = ig_params(scenario);
    const double t = horizon.years();
    const double root = std::sqrt(p.lambda / t);
    const double near = std_normal_cdf(root * (t / p.mu0 - 1.0));
    const double far = std::exp(2.0 * p.lambda / p.mu0 + log_std_normal_cdf(-root * (t / p.mu0 + 1.0)));
    return Probability{std::clamp(near + far, 0.0, 1.0)};
}

double ig_first_passage_pdf(const IgParams& params, double t_years) {
    if (!(std::isfinite(t_years) && t_years > 0.0)) {
        throw Error(ErrorKind::Domain, "ig_first_passage_pdf requires finite t > 0");
    }
    const double sigma2 = 2.0 * params.mu2;
    const double gap = params.a2 - params.mu2 * t_years;
    // log space: t^3 underflows long before the density itself does
    const double log_norm = std::log(params.a2) - 0.5 * std::log(2.0 * std::numbers::pi * sigma2) -
                            1.5 * std::log(t_years);
    return std::exp(log_norm - gap * gap / (2.0 * sigma2 * t_years));
}

}  // namespace liqprob::analytic
