#include "fiwi/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fiwi/channel.hpp"
#include "fiwi/geometry.hpp"
#include "fiwi/waterfill.hpp"

namespace fiwi {

const std::vector<std::pair<std::string, Algorithm>>& algorithm_names() {
    static const std::vector<std::pair<std::string, Algorithm>> names = {
        {"vabwf-dp", Algorithm::VabwfDp},
        {"wf-fc", Algorithm::WfFc},
        {"ep-pf", Algorithm::EpPf},
        {"wf-rc", Algorithm::WfRc},
    };
    return names;
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
    for (const auto& [text, alg] : algorithm_names())
        if (text == name) return alg;
    return std::nullopt;
}

std::string algorithm_name(Algorithm alg) {
    for (const auto& [text, a] : algorithm_names())
        if (a == alg) return text;
    return "?";
}

double TrialResult::mean_tx_power() const {
    if (tx_power.empty()) return 0.0;
    double s = 0.0;
    for (double p : tx_power) s += p;
    return s / tx_power.size();
}

double TrialResult::mean_cached_files() const {
    if (cached_files.empty()) return 0.0;
    double s = 0.0;
    for (int c : cached_files) s += c;
    return s / cached_files.size();
}

double TrialResult::mean_cache_utilization(const ValidatedConfig& cfg) const {
    if (cached_files.empty() || cfg->cache_size <= 0.0) return 0.0;
    double s = 0.0;
    for (int c : cached_files) s += c * cfg->file_size / cfg->cache_size;
    return s / cached_files.size();
}

namespace {

// Per-AP outcome of a non-DP policy before backhaul accounting.
struct ApOutcome {
    double sum_rate = 0.0;
    double hit = 0.0;
    double tx_consumption = 0.0;
    int cached = 0;
};

// Hits always count; miss traffic is scaled down to the backhaul cap when
// the policy oversubscribes it.
TrialResult score_with_throttling(const std::vector<ApOutcome>& outcomes,
                                  const ValidatedConfig& cfg) {
    TrialResult out;
    double hits = 0.0;
    double miss = 0.0;
    for (const auto& ap : outcomes) {
        hits += ap.hit * ap.sum_rate;
        miss += (1.0 - ap.hit) * ap.sum_rate;
        out.tx_power.push_back(ap.tx_consumption);
        out.cached_files.push_back(ap.cached);
        out.hit_ratio.push_back(ap.hit);
    }
    const double carried_miss = std::min(miss, cfg->backhaul_capacity);
    out.throughput = hits + carried_miss;
    out.backhaul_load = carried_miss;
    return out;
}

double equal_power_sum_rate(const std::vector<double>& gains, double tx_volume,
                            const ValidatedConfig& cfg) {
    const double per_ue = tx_volume / gains.size();
    double sum = 0.0;
    for (double g : gains) sum += link_rate(per_ue, g, cfg).rate;
    return sum;
}

TrialResult run_vabwf_dp(const Deployment& dep, const ChannelRealization& ch,
                         const PopularityModel& pop, const ValidatedConfig& cfg) {
    CandidateTable items = build_candidates(dep, ch, pop, cfg);
    quantize_weights(items, cfg->dp_bandwidth_unit);

    JointSolution sol;
    if (std::isfinite(cfg->backhaul_capacity)) {
        const int capacity_units =
            static_cast<int>(std::floor(cfg->backhaul_capacity / cfg->dp_bandwidth_unit + 1e-9));
        const DPTable table = dp_solve(items, capacity_units);
        sol = backtrack(table, items);
    } else {
        // Unbounded backhaul: the knapsack decouples into per-AP argmax.
        sol.chosen.assign(items.size(), -1);
        for (size_t n = 0; n < items.size(); ++n) {
            int best = 0;
            for (size_t idx = 1; idx < items[n].size(); ++idx)
                if (items[n][idx].profit >= items[n][best].profit) best = static_cast<int>(idx);
            sol.chosen[n] = best;
            sol.throughput += items[n][best].profit;
            sol.backhaul += items[n][best].weight;
        }
    }

    TrialResult out;
    out.throughput = sol.throughput;
    out.backhaul_load = sol.backhaul;
    for (size_t n = 0; n < items.size(); ++n) {
        const CandidateItem* item = sol.item(items, n);
        if (!item) {
            out.tx_power.push_back(0.0);
            out.cached_files.push_back(0);
            out.hit_ratio.push_back(0.0);
            continue;
        }
        out.tx_power.push_back(cfg->power_amp_coeff * item->wf.sum_power());
        out.cached_files.push_back(item->cached_count);
        out.hit_ratio.push_back(pop.prefix_hit_ratio(item->cached_count));
    }
    return out;
}

TrialResult run_wf_fc(const Deployment& dep, const ChannelRealization& ch,
                      const PopularityModel& pop, const ValidatedConfig& cfg) {
    const int full = max_feasible_cached_count(cfg);
    std::vector<ApOutcome> outcomes(dep.assoc.size());
    for (size_t n = 0; n < dep.assoc.size(); ++n) {
        ApOutcome& ap = outcomes[n];
        ap.cached = full;
        ap.hit = pop.prefix_hit_ratio(full);
        if (dep.assoc[n].empty()) continue;
        const WaterfillResult wf = vabwf(ch.gains(n), full, cfg);
        ap.sum_rate = wf.sum_rate;
        ap.tx_consumption = cfg->power_amp_coeff * wf.sum_power();
    }
    return score_with_throttling(outcomes, cfg);
}

TrialResult run_ep_pf(const Deployment& dep, const ChannelRealization& ch,
                      const PopularityModel& pop, const ValidatedConfig& cfg) {
    const int j_max = max_feasible_cached_count(cfg);
    const double share = cfg->backhaul_capacity / cfg->num_aps;
    std::vector<ApOutcome> outcomes(dep.assoc.size());
    for (size_t n = 0; n < dep.assoc.size(); ++n) {
        ApOutcome& ap = outcomes[n];
        if (dep.assoc[n].empty()) continue;
        const std::vector<double> gains = ch.gains(n);
        double best_score = -1.0;
        for (int j = 0; j <= j_max; ++j) {
            const double budget = cfg->usable_budget() - caching_power(j, cfg);
            const double nu = equal_power_sum_rate(gains, budget / cfg->power_amp_coeff, cfg);
            const double hit = pop.prefix_hit_ratio(j);
            const double score = hit * nu + std::min((1.0 - hit) * nu, share);
            if (score > best_score) {
                best_score = score;
                ap.cached = j;
                ap.hit = hit;
                ap.sum_rate = nu;
                ap.tx_consumption = budget;
            }
        }
    }
    return score_with_throttling(outcomes, cfg);
}

TrialResult run_wf_rc(const Deployment& dep, const ChannelRealization& ch,
                      const PopularityModel& pop, const ValidatedConfig& cfg,
                      RandomStream& rng) {
    const int fill = max_feasible_cached_count(cfg);
    const int num_files = pop.num_files();
    std::vector<ApOutcome> outcomes(dep.assoc.size());
    std::vector<int> files(num_files);
    for (size_t n = 0; n < dep.assoc.size(); ++n) {
        ApOutcome& ap = outcomes[n];
        // Uniform random subset via partial Fisher-Yates; drawn for every
        // AP so the stream layout does not depend on occupancy.
        for (int f = 0; f < num_files; ++f) files[f] = f + 1;
        double hit = 0.0;
        for (int i = 0; i < fill; ++i) {
            const int remaining = num_files - i;
            int pick = i + static_cast<int>(rng.uniform() * remaining);
            pick = std::min(pick, num_files - 1);
            std::swap(files[i], files[pick]);
            hit += pop.prob(files[i]);
        }
        ap.cached = fill;
        ap.hit = hit;
        if (dep.assoc[n].empty()) continue;
        const std::vector<double> gains = ch.gains(n);
        const double budget = cfg->usable_budget() - caching_power(fill, cfg);
        if (cfg->wf_rc_use_waterfilling) {
            const WaterfillResult wf = vabwf(gains, fill, cfg);
            ap.sum_rate = wf.sum_rate;
        } else {
            ap.sum_rate = equal_power_sum_rate(gains, budget / cfg->power_amp_coeff, cfg);
        }
        ap.tx_consumption = budget;
    }
    return score_with_throttling(outcomes, cfg);
}

}  // namespace

TrialResult run_trial(const ValidatedConfig& cfg, const PopularityModel& pop, Algorithm alg,
                      RandomStream& rng) {
    const ApLayout aps = deploy_aps(cfg);
    const Deployment dep = associate(aps, sample_ues(cfg, rng), cfg);
    const ChannelRealization ch = realize_channel(dep, cfg, rng);

    TrialResult out;
    switch (alg) {
        case Algorithm::VabwfDp: out = run_vabwf_dp(dep, ch, pop, cfg); break;
        case Algorithm::WfFc: out = run_wf_fc(dep, ch, pop, cfg); break;
        case Algorithm::EpPf: out = run_ep_pf(dep, ch, pop, cfg); break;
        case Algorithm::WfRc: out = run_wf_rc(dep, ch, pop, cfg, rng); break;
    }
    out.ue_count = dep.ue_count();
    return out;
}

std::vector<TrialResult> run_trials(const ValidatedConfig& cfg, const PopularityModel& pop,
                                    Algorithm alg, int trials, uint64_t seed, int threads) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, trials);

    std::vector<TrialResult> results(trials);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        while (true) {
            const int t = next.fetch_add(1);
            if (t >= trials) return;
            try {
                RandomStream rng(RandomStream::mix(seed, static_cast<uint64_t>(t)));
                results[t] = run_trial(cfg, pop, alg, rng);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

AggregateStats aggregate(const std::vector<TrialResult>& results, const ValidatedConfig& cfg) {
    AggregateStats stats;
    stats.trials = static_cast<int>(results.size());
    if (results.empty()) return stats;

    double sum_t = 0.0, sum_b = 0.0;
    for (const auto& r : results) {
        sum_t += r.throughput;
        sum_b += r.backhaul_load;
        stats.mean_tx_power += r.mean_tx_power();
        stats.mean_cached_files += r.mean_cached_files();
        stats.mean_cache_utilization += r.mean_cache_utilization(cfg);
    }
    stats.mean_throughput = sum_t / stats.trials;
    stats.mean_backhaul = sum_b / stats.trials;
    stats.mean_tx_power /= stats.trials;
    stats.mean_cached_files /= stats.trials;
    stats.mean_cache_utilization /= stats.trials;

    if (stats.trials > 1) {
        stats.stddev_defined = true;
        double var_t = 0.0, var_b = 0.0;
        for (const auto& r : results) {
            var_t += (r.throughput - stats.mean_throughput) * (r.throughput - stats.mean_throughput);
            var_b += (r.backhaul_load - stats.mean_backhaul) * (r.backhaul_load - stats.mean_backhaul);
        }
        stats.stddev_throughput = std::sqrt(var_t / (stats.trials - 1));
        stats.stddev_backhaul = std::sqrt(var_b / (stats.trials - 1));
        const double root_n = std::sqrt(static_cast<double>(stats.trials));
        stats.ci95_throughput = 1.96 * stats.stddev_throughput / root_n;
        stats.ci95_backhaul = 1.96 * stats.stddev_backhaul / root_n;
    }
    return stats;
}

AggregateStats run_benchmark(const ValidatedConfig& cfg, const PopularityModel& pop,
                             Algorithm alg, int trials, uint64_t seed, int threads) {
    return aggregate(run_trials(cfg, pop, alg, trials, seed, threads), cfg);
}

}  // namespace fiwi
