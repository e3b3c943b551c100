#pragma once

#include <string>
#include <vector>

#include "fiwi/caching.hpp"
#include "fiwi/channel.hpp"
#include "fiwi/config.hpp"
#include "fiwi/geometry.hpp"
#include "fiwi/waterfill.hpp"

namespace fiwi {

// One joint (power allocation, cached count) option for an AP. Weight is
// the backhaul bandwidth the option occupies, profit its sum rate; the
// miss-weighted form collapses the per-file sum because every user shares
// the AP's hit ratio.
struct CandidateItem {
    int ap = 0;
    int cached_count = 0;
    double weight = 0.0;      // phi = p_miss * nu, bit/s
    double profit = 0.0;      // nu = sum rate, bit/s
    int weight_units = 0;     // ceil(phi / unit) after quantization
    WaterfillResult wf;
};

using CandidateTable = std::vector<std::vector<CandidateItem>>;

// All feasible cached counts per AP (0 .. min(J, cache, power bound)),
// each solved by vabwf. APs with no users get the single (0, 0, 0) item.
CandidateTable build_candidates(const Deployment& dep, const ChannelRealization& ch,
                                const PopularityModel& pop, const ValidatedConfig& cfg);

// Ceiling quantization of the capacity axis only; profits stay real, so
// a quantized selection can never violate the true backhaul constraint.
void quantize_weights(CandidateTable& items, double unit);

struct DPTable {
    int num_classes = 0;
    int capacity_units = 0;
    std::vector<double> value;  // (num_classes + 1) x (capacity_units + 1), row 0 = 0
    std::vector<int> choice;    // num_classes x (capacity_units + 1), -1 = skip

    double at(int n, int c) const { return value[static_cast<size_t>(n) * (capacity_units + 1) + c]; }
    int choice_at(int n, int c) const {
        return choice[static_cast<size_t>(n - 1) * (capacity_units + 1) + c];
    }
};

// Bottom-up recursion over classes; skipping a class is always allowed.
// Ties between items prefer the larger cached count; a tie against
// skipping keeps the skip.
DPTable dp_solve(const CandidateTable& items, int capacity_units);

struct JointSolution {
    std::vector<int> chosen;   // item index per AP, -1 = none
    double throughput = 0.0;   // sum of chosen profits, equals the table optimum
    double backhaul = 0.0;     // sum of true (unquantized) weights
    int used_units = 0;

    const CandidateItem* item(const CandidateTable& items, int ap) const {
        return chosen[ap] >= 0 ? &items[ap][chosen[ap]] : nullptr;
    }
};

// Walks the choice pointers from the last class down. Throws CorruptTable
// if the reconstructed value does not reproduce the table optimum.
JointSolution backtrack(const DPTable& table, const CandidateTable& items);

// Debug dumps: candidate table (n, j, weight_units, profit_bps) and the
// final DP frontier (c_units, value_bps).
void dump_candidates_csv(const CandidateTable& items, const std::string& path);
void dump_dp_frontier_csv(const DPTable& table, const std::string& path);

}  // namespace fiwi
