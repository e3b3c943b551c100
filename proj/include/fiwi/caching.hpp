#pragma once

#include <vector>

#include "fiwi/config.hpp"

namespace fiwi {

// Zipf file popularity with precomputed prefix sums. probs[j-1] is the
// request probability of the j-th most popular file.
class PopularityModel {
public:
    PopularityModel(std::vector<double> probs);

    int num_files() const { return static_cast<int>(probs_.size()); }
    const std::vector<double>& probs() const { return probs_; }
    double prob(int file) const { return probs_[file - 1]; }  // 1-based rank

    // Hit ratio of a prefix cache holding the `count` most popular files.
    double prefix_hit_ratio(int count) const;

    // Complement kept as its own backward sum so a full catalog misses
    // exactly never.
    double miss_ratio(int count) const;

private:
    std::vector<double> probs_;
    std::vector<double> prefix_;  // prefix_[j] = sum of the first j probs
    std::vector<double> suffix_;  // suffix_[j] = sum of probs after the first j
};

// p_j = j^{-delta} / sum_n n^{-delta}.
PopularityModel zipf_popularity(int num_files, double delta);

// Prefix placement: x_nj = 1 iff j <= cached_count.
struct CachePlacement {
    std::vector<int> cached_count;  // per AP
};

double hit_ratio(const CachePlacement& placement, const PopularityModel& pop, int ap);

// Caching power for a prefix of `cached_count` files.
double caching_power(int cached_count, const ValidatedConfig& cfg);

// Eq-form total draw: rho * sum_tx + omega * j * s + P_cc.
double total_power(double sum_tx_power, int cached_count, const ValidatedConfig& cfg);

// Largest prefix length that fits both the cache and a strictly positive
// transmit budget: min(J, floor(Q/s), power bound).
int max_feasible_cached_count(const ValidatedConfig& cfg);

}  // namespace fiwi
