#pragma once

#include <string>
#include <vector>

#include "fiwi/config.hpp"
#include "fiwi/rng.hpp"

namespace fiwi {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct ApLayout {
    std::vector<Point> positions;
};

// One network drop: AP grid, UE positions, nearest-AP association sets
// Phi_n and the clamped link distances r_nk (aligned with assoc).
struct Deployment {
    ApLayout aps;
    std::vector<Point> ues;
    std::vector<std::vector<int>> assoc;
    std::vector<std::vector<double>> dist;

    int ue_count() const { return static_cast<int>(ues.size()); }
};

// sqrt(N) x sqrt(N) grid over the square, offset by half a spacing so the
// cells tile it. Throws NonSquareCount when N is not a perfect square.
ApLayout deploy_aps(const ValidatedConfig& cfg);

// Explicit layout (positions must be pairwise distinct and inside the square).
ApLayout make_layout(const ValidatedConfig& cfg, std::vector<Point> positions);

// One position pair "x y" per line.
ApLayout load_ap_layout(const ValidatedConfig& cfg, const std::string& path);

// PPP drop: count ~ Poisson(lambda * area^2), positions i.i.d. uniform.
std::vector<Point> sample_ues(const ValidatedConfig& cfg, RandomStream& rng);

// Nearest-AP association, ties to the lower AP index, distances clamped
// to min_distance.
Deployment associate(const ApLayout& aps, std::vector<Point> ues, const ValidatedConfig& cfg);

}  // namespace fiwi
