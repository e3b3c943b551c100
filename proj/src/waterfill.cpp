#include "fiwi/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fiwi/caching.hpp"
#include "fiwi/channel.hpp"

namespace fiwi {

WaterfillResult vabwf(std::span<const double> gains, int cached_count,
                      const ValidatedConfig& cfg) {
    if (gains.empty()) throw EmptyUserSet();
    const double cache_power = caching_power(cached_count, cfg);
    const double budget = cfg->usable_budget() - cache_power;
    if (budget <= 0.0) throw NoTransmitBudget(cache_power, cfg->usable_budget());
    for (double g : gains)
        if (!(g > 0.0)) throw std::invalid_argument("vabwf: gains must be > 0");

    const double volume = budget / cfg->power_amp_coeff;  // sum of transmit powers
    const size_t count = gains.size();

    // Noise-normalized inverse gains, best channel first. Ties keep the
    // original order so permuting the input permutes the output.
    std::vector<std::pair<double, int>> floor_levels(count);
    for (size_t k = 0; k < count; ++k)
        floor_levels[k] = {cfg->noise_power / gains[k], static_cast<int>(k)};
    std::sort(floor_levels.begin(), floor_levels.end());

    // Largest active set whose common level stays above its worst floor.
    double prefix = 0.0;
    double level = 0.0;
    size_t active_count = 0;
    for (size_t m = 1; m <= count; ++m) {
        prefix += floor_levels[m - 1].first;
        const double candidate = (volume + prefix) / static_cast<double>(m);
        if (candidate > floor_levels[m - 1].first) {
            level = candidate;
            active_count = m;
        }
    }

    WaterfillResult res;
    res.powers.assign(count, 0.0);
    res.water_level = level;
    res.mu = cfg->subchannel_bw / (cfg->power_amp_coeff * level * std::numbers::ln2);
    for (size_t m = 0; m < active_count; ++m) {
        const int k = floor_levels[m].second;
        res.powers[k] = level - floor_levels[m].first;
        res.active.push_back(k);
    }
    std::sort(res.active.begin(), res.active.end());

    for (size_t k = 0; k < count; ++k)
        res.sum_rate += link_rate(res.powers[k], gains[k], cfg).rate;
    return res;
}

double KktReport::worst() const {
    double w = std::max({stationarity, budget, comp_slackness});
    if (dual_min_epsilon < 0.0) w = std::max(w, -dual_min_epsilon);
    return w;
}

KktReport verify_kkt(const WaterfillResult& res, std::span<const double> gains,
                     int cached_count, const ValidatedConfig& cfg) {
    KktReport rep;
    rep.mu = res.mu;
    const double rho_mu = cfg->power_amp_coeff * res.mu;
    const double ln2 = std::numbers::ln2;

    double sum_power = 0.0;
    double min_eps = 0.0;
    bool has_inactive = false;
    for (size_t k = 0; k < gains.size(); ++k) {
        const double p = res.powers[k];
        sum_power += p;
        const double marginal =
            cfg->subchannel_bw * gains[k] / ((cfg->noise_power + gains[k] * p) * ln2);
        const double eps = rho_mu - marginal;
        if (p > 0.0) {
            rep.stationarity = std::max(rep.stationarity, std::abs(eps) / rho_mu);
        } else {
            if (!has_inactive || eps / rho_mu < min_eps) min_eps = eps / rho_mu;
            has_inactive = true;
        }
        rep.comp_slackness =
            std::max(rep.comp_slackness, std::abs(eps * p) / (rho_mu * cfg->max_power));
    }
    rep.dual_min_epsilon = has_inactive ? min_eps : 0.0;

    const double total = cfg->power_amp_coeff * sum_power + caching_power(cached_count, cfg);
    rep.budget = std::abs(total - cfg->usable_budget()) / cfg->max_power;
    return rep;
}

}  // namespace fiwi
