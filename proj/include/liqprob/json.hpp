#pragma once

// nlohmann::json adapters for the value types. Field names are snake_case.

#include "liqprob/core.hpp"

#include <json.hpp>

namespace nlohmann {

template <>
struct adl_serializer<liqprob::MarketScenario> {
    static void to_json(json& j, const liqprob::MarketScenario& s) {
        j = json{{"sigma_annual", s.sigma_annual()}, {"s0", s.s0()}, {"s_liq", s.s_liq()}};
    }
    static liqprob::MarketScenario from_json(const json& j) {
        return {j.at("sigma_annual").get<double>(), j.at("s0").get<double>(),
                j.at("s_liq").get<double>()};
    }
};

template <>
struct adl_serializer<liqprob::Horizon> {
    static void to_json(json& j, const liqprob::Horizon& h) { j = json{{"days", h.days()}}; }
    static liqprob::Horizon from_json(const json& j) {
        return liqprob::Horizon{j.at("days").get<double>()};
    }
};

}  // namespace nlohmann
