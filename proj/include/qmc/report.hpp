#pragma once
// Result record emitted by the evaluation commands.

#include <cstdint>
#include <string>

#include <json.hpp>

namespace qmc {

struct DiscrepancyReport {
    std::string metric;        // "star-l2", "extreme-l2", "periodic-l2", "diaphony", ...
    double p = 2.0;
    double value = 0.0;        // the L_p value itself
    double value_squared = 0.0;
    std::string method;        // "pair-formula", "pair-formula-exact", "grid", "monte-carlo"
    double error_estimate = 0.0;
    uint64_t n = 0;
    uint32_t d = 0;
    uint64_t seed = 0;
    bool budget_exhausted = false;
    std::string value_exact;   // decimal-free rational string when available

    nlohmann::json to_json() const {
        nlohmann::json j{
            {"metric", metric},
            {"p", p},
            {"value", value},
            {"value_squared", value_squared},
            {"method", method},
            {"error_estimate", error_estimate},
            {"n", n},
            {"d", d},
            {"seed", seed},
        };
        if (budget_exhausted) j["budget_exhausted"] = true;
        if (!value_exact.empty()) j["value_squared_exact"] = value_exact;
        return j;
    }
};

}  // namespace qmc
