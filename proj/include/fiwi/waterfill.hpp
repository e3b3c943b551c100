#pragma once

#include <span>
#include <vector>

#include "fiwi/config.hpp"

namespace fiwi {

struct WaterfillResult {
    std::vector<double> powers;  // W per UE, aligned with the input gains
    double water_level = 0.0;    // B / (rho mu ln2), W
    double mu = 0.0;             // Lagrange multiplier of the power budget, 1/W
    double sum_rate = 0.0;       // bit/s, evaluated with the beam gain
    std::vector<int> active;     // indices with positive power

    double sum_power() const {
        double s = 0.0;
        for (double p : powers) s += p;
        return s;
    }
};

// Water-filling over the budget left once `cached_count` files draw
// caching power: powers = (water_level - sigma^2/g)^+ with the level set
// so that rho * sum(powers) + omega * j * s = P_M - P_cc exactly.
//
// The closed form assumes every UE stays positive; when the (.)^+ clips,
// the level is recomputed over the survivors (active-set iteration, at
// most |Phi_n| rounds since the set only shrinks).
WaterfillResult vabwf(std::span<const double> gains, int cached_count,
                      const ValidatedConfig& cfg);

// Residuals of the first-order optimality system for a vabwf output.
struct KktReport {
    double stationarity = 0.0;      // max over active UEs, relative to rho*mu
    double budget = 0.0;            // |rho sum P + omega j s - (P_M - P_cc)| / P_M
    double comp_slackness = 0.0;    // max |eps_nk * P_nk| / (rho mu * P_M)
    double dual_min_epsilon = 0.0;  // min eps_nk / (rho mu) over inactive UEs (>= 0 required)
    double mu = 0.0;

    bool passes(double tol = 1e-8) const {
        return stationarity < tol && budget < tol && comp_slackness < tol &&
               dual_min_epsilon > -tol && mu >= 0.0;
    }
    double worst() const;
};

KktReport verify_kkt(const WaterfillResult& res, std::span<const double> gains,
                     int cached_count, const ValidatedConfig& cfg);

}  // namespace fiwi
