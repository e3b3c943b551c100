#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fiwi/caching.hpp"
#include "fiwi/config.hpp"
#include "fiwi/mckp.hpp"
#include "fiwi/rng.hpp"

namespace fiwi {

enum class Algorithm { VabwfDp, WfFc, EpPf, WfRc };

const std::vector<std::pair<std::string, Algorithm>>& algorithm_names();
std::optional<Algorithm> parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm alg);

struct TrialResult {
    double throughput = 0.0;     // counted downlink traffic, bit/s
    double backhaul_load = 0.0;  // counted backhaul traffic (<= C), bit/s
    std::vector<double> tx_power;  // per AP, consumption rho * sum P_nk, W
    std::vector<int> cached_files;  // per AP
    std::vector<double> hit_ratio;  // per AP
    int ue_count = 0;

    double mean_tx_power() const;
    double mean_cached_files() const;
    double mean_cache_utilization(const ValidatedConfig& cfg) const;
};

// One deployment + channel drop scored under the chosen policy.
//
//   vabwf-dp  candidate build -> weight quantization -> knapsack DP
//   wf-fc     full prefix cache, water-filled transmit power
//   ep-pf     equal power; per-AP cached count swept against a C/N share
//   wf-rc     random cache fill; equal power (water-filling behind a
//             config switch)
//
// Policies other than the DP may oversubscribe the backhaul; their miss
// traffic is then scaled down proportionally (hits are never throttled).
TrialResult run_trial(const ValidatedConfig& cfg, const PopularityModel& pop, Algorithm alg,
                      RandomStream& rng);

struct AggregateStats {
    int trials = 0;
    bool stddev_defined = false;
    double mean_throughput = 0.0;
    double stddev_throughput = 0.0;
    double ci95_throughput = 0.0;
    double mean_backhaul = 0.0;
    double stddev_backhaul = 0.0;
    double ci95_backhaul = 0.0;
    double mean_tx_power = 0.0;
    double mean_cached_files = 0.0;
    double mean_cache_utilization = 0.0;
};

AggregateStats aggregate(const std::vector<TrialResult>& results, const ValidatedConfig& cfg);

// Independent per-trial streams derived as mix(seed, trial). Trials run
// on a small worker pool; aggregation is order-independent.
std::vector<TrialResult> run_trials(const ValidatedConfig& cfg, const PopularityModel& pop,
                                    Algorithm alg, int trials, uint64_t seed, int threads = 0);

AggregateStats run_benchmark(const ValidatedConfig& cfg, const PopularityModel& pop,
                             Algorithm alg, int trials, uint64_t seed, int threads = 0);

}  // namespace fiwi
