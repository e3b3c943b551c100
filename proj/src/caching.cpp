#include "fiwi/caching.hpp"

#include <algorithm>
#include <cmath>

namespace fiwi {

PopularityModel::PopularityModel(std::vector<double> probs) : probs_(std::move(probs)) {
    prefix_.resize(probs_.size() + 1, 0.0);
    for (size_t j = 0; j < probs_.size(); ++j) prefix_[j + 1] = prefix_[j] + probs_[j];
    suffix_.resize(probs_.size() + 1, 0.0);
    for (size_t j = probs_.size(); j-- > 0;) suffix_[j] = suffix_[j + 1] + probs_[j];
}

double PopularityModel::prefix_hit_ratio(int count) const {
    count = std::clamp(count, 0, num_files());
    return prefix_[count];
}

double PopularityModel::miss_ratio(int count) const {
    count = std::clamp(count, 0, num_files());
    return suffix_[count];
}

PopularityModel zipf_popularity(int num_files, double delta) {
    std::vector<double> probs(num_files);
    double norm = 0.0;
    for (int j = 1; j <= num_files; ++j) norm += std::pow(j, -delta);
    for (int j = 1; j <= num_files; ++j) probs[j - 1] = std::pow(j, -delta) / norm;
    return PopularityModel(std::move(probs));
}

double hit_ratio(const CachePlacement& placement, const PopularityModel& pop, int ap) {
    return pop.prefix_hit_ratio(placement.cached_count[ap]);
}

double caching_power(int cached_count, const ValidatedConfig& cfg) {
    return cfg->caching_power_coeff * static_cast<double>(cached_count) * cfg->file_size;
}

double total_power(double sum_tx_power, int cached_count, const ValidatedConfig& cfg) {
    if (sum_tx_power < 0.0) throw NegativePower("total_power: sum_tx_power < 0");
    return cfg->power_amp_coeff * sum_tx_power + caching_power(cached_count, cfg) +
           cfg->circuit_power;
}

int max_feasible_cached_count(const ValidatedConfig& cfg) {
    const double budget = cfg->usable_budget();
    const double per_file = cfg->caching_power_coeff * cfg->file_size;

    int by_cache = static_cast<int>(std::floor(cfg->cache_size / cfg->file_size));
    int by_power = static_cast<int>(std::floor(budget / per_file));
    while (by_power > 0 && static_cast<double>(by_power) * per_file >= budget) --by_power;

    return std::max(0, std::min({cfg->num_files, by_cache, by_power}));
}

}  // namespace fiwi
