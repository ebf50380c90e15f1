#pragma once

#include "liqprob/core.hpp"

namespace liqprob::analytic {

/// Inverse Gaussian law of the first time the flipped log price
/// X_t = sigma W_t + mu2 t (X_0 = 0) reaches a2 = ln(s0 / s_liq) > 0.
///
///   mu0    = a2 / mu2          (mean, years)
///   lambda = (a2 / sigma)^2    (shape, years)
///   mu2    = sigma^2 / 2       (drift toward the barrier, 1/year)
struct IgParams {
    double mu0;
    double lambda;
    double a2;
    double mu2;
};

/// Zero-drift approximation 2 Phi(ln(s_liq/s0) / (sigma sqrt(t))).
/// Returns exactly 1 when the position is already at or past the threshold.
[[nodiscard]] Probability reflection_liquidation_prob(const MarketScenario& scenario,
                                                      const Horizon& horizon);

/// Throws Error{DegenerateScenario} when s0 <= s_liq.
[[nodiscard]] IgParams ig_params(const MarketScenario& scenario);

/// Exact first-passage probability of the drifted log price by time t, the
/// inverse Gaussian CDF
///
///   F(t) = Phi(sqrt(lambda/t) (t/mu0 - 1))
///        + exp(2 lambda/mu0) Phi(-sqrt(lambda/t) (t/mu0 + 1)),
///
/// with the second term evaluated in log space. Returns exactly 1 when the
/// position is already at or past the threshold.
[[nodiscard]] Probability ig_liquidation_prob(const MarketScenario& scenario,
                                              const Horizon& horizon);

/// First-passage density a2 / (sigma sqrt(2 pi t^3)) exp(-(a2 - mu2 t)^2 / (2 sigma^2 t)),
/// t in years. Throws Error{Domain} for t <= 0 or non-finite t.
[[nodiscard]] double ig_first_passage_pdf(const IgParams& params, double t_years);

}  // namespace liqprob::analytic
