#include "fiwi/mckp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace fiwi {

CandidateTable build_candidates(const Deployment& dep, const ChannelRealization& ch,
                                const PopularityModel& pop, const ValidatedConfig& cfg) {
    const int num_aps = static_cast<int>(dep.assoc.size());
    const int j_max = max_feasible_cached_count(cfg);

    CandidateTable items(num_aps);
    for (int n = 0; n < num_aps; ++n) {
        if (dep.assoc[n].empty()) {
            CandidateItem idle;
            idle.ap = n;
            items[n].push_back(std::move(idle));
            continue;
        }
        const std::vector<double> gains = ch.gains(n);
        items[n].reserve(j_max + 1);
        for (int j = 0; j <= j_max; ++j) {
            CandidateItem item;
            item.ap = n;
            item.cached_count = j;
            item.wf = vabwf(gains, j, cfg);
            item.profit = item.wf.sum_rate;
            item.weight = std::max(0.0, pop.miss_ratio(j)) * item.profit;
            items[n].push_back(std::move(item));
        }
    }
    return items;
}

void quantize_weights(CandidateTable& items, double unit) {
    if (!(unit > 0.0)) throw std::invalid_argument("quantize_weights: unit must be > 0");
    for (auto& ap_items : items)
        for (auto& item : ap_items)
            item.weight_units = item.weight <= 0.0
                                    ? 0
                                    : static_cast<int>(std::ceil(item.weight / unit));
}

DPTable dp_solve(const CandidateTable& items, int capacity_units) {
    if (capacity_units < 0) throw std::invalid_argument("dp_solve: negative capacity");
    DPTable table;
    table.num_classes = static_cast<int>(items.size());
    table.capacity_units = capacity_units;
    const size_t row = static_cast<size_t>(capacity_units) + 1;
    table.value.assign((table.num_classes + 1) * row, 0.0);
    table.choice.assign(table.num_classes * row, -1);

    for (int n = 1; n <= table.num_classes; ++n) {
        const double* prev = table.value.data() + (n - 1) * row;
        double* cur = table.value.data() + n * row;
        int* choice = table.choice.data() + (n - 1) * row;
        std::copy(prev, prev + row, cur);  // skip this class by default

        for (size_t idx = 0; idx < items[n - 1].size(); ++idx) {
            const CandidateItem& item = items[n - 1][idx];
            const int w = item.weight_units;
            if (w > capacity_units) continue;
            const double nu = item.profit;
            for (int c = capacity_units; c >= w; --c) {
                const double candidate = prev[c - w] + nu;
                if (candidate > cur[c]) {
                    cur[c] = candidate;
                    choice[c] = static_cast<int>(idx);
                } else if (candidate == cur[c] && choice[c] >= 0 &&
                           item.cached_count > items[n - 1][choice[c]].cached_count) {
                    choice[c] = static_cast<int>(idx);
                }
            }
        }
    }
    return table;
}

JointSolution backtrack(const DPTable& table, const CandidateTable& items) {
    JointSolution sol;
    sol.chosen.assign(table.num_classes, -1);

    int c = table.capacity_units;
    for (int n = table.num_classes; n >= 1; --n) {
        if (table.at(n, c) == table.at(n - 1, c)) continue;
        const int idx = table.choice_at(n, c);
        if (idx < 0) throw CorruptTable("value changed without a recorded choice");
        const CandidateItem& item = items[n - 1][idx];
        if (item.weight_units > c) throw CorruptTable("choice exceeds remaining capacity");
        sol.chosen[n - 1] = idx;
        c -= item.weight_units;
    }

    // Replaying the additions in class order reproduces the exact float
    // sequence the recursion used, so equality is bitwise.
    double value = 0.0;
    for (int n = 0; n < table.num_classes; ++n) {
        if (sol.chosen[n] < 0) continue;
        const CandidateItem& item = items[n][sol.chosen[n]];
        value += item.profit;
        sol.backhaul += item.weight;
        sol.used_units += item.weight_units;
    }
    if (value != table.at(table.num_classes, table.capacity_units))
        throw CorruptTable("reconstructed value does not match the table optimum");
    sol.throughput = value;
    return sol;
}

void dump_candidates_csv(const CandidateTable& items, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "n,j,weight_units,profit_bps\n";
    char line[128];
    for (const auto& ap_items : items)
        for (const auto& item : ap_items) {
            std::snprintf(line, sizeof(line), "%d,%d,%d,%.17g\n", item.ap, item.cached_count,
                          item.weight_units, item.profit);
            out << line;
        }
}

void dump_dp_frontier_csv(const DPTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "c_units,value_bps\n";
    char line[64];
    for (int c = 0; c <= table.capacity_units; ++c) {
        std::snprintf(line, sizeof(line), "%d,%.17g\n", c, table.at(table.num_classes, c));
        out << line;
    }
}

}  // namespace fiwi
