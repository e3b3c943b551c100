#include "fiwi/geometry.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace fiwi {

namespace {

int exact_sqrt(int n) {
    int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    for (int c = std::max(0, r - 1); c <= r + 1; ++c)
        if (c * c == n) return c;
    return -1;
}

}  // namespace

ApLayout deploy_aps(const ValidatedConfig& cfg) {
    const int n = cfg->num_aps;
    const int side = exact_sqrt(n);
    if (side < 0) throw NonSquareCount(n);

    const double spacing = cfg->area_side / side;
    ApLayout layout;
    layout.positions.reserve(n);
    for (int row = 0; row < side; ++row)
        for (int col = 0; col < side; ++col)
            layout.positions.push_back({(col + 0.5) * spacing, (row + 0.5) * spacing});
    return layout;
}

ApLayout make_layout(const ValidatedConfig& cfg, std::vector<Point> positions) {
    if (static_cast<int>(positions.size()) != cfg->num_aps)
        throw ValidationError({{"ap_layout", "position count does not match num_aps"}});
    for (size_t i = 0; i < positions.size(); ++i) {
        const auto& p = positions[i];
        if (p.x < 0.0 || p.x > cfg->area_side || p.y < 0.0 || p.y > cfg->area_side)
            throw ValidationError({{"ap_layout", "position outside the deployment square"}});
        for (size_t j = 0; j < i; ++j)
            if (positions[j].x == p.x && positions[j].y == p.y)
                throw ValidationError({{"ap_layout", "duplicate AP position"}});
    }
    return ApLayout{std::move(positions)};
}

ApLayout load_ap_layout(const ValidatedConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open AP layout file: " + path);
    std::vector<Point> positions;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        Point p;
        if (!(ss >> p.x >> p.y))
            throw ValidationError({{"ap_layout", "bad line: " + line}});
        positions.push_back(p);
    }
    return make_layout(cfg, std::move(positions));
}

std::vector<Point> sample_ues(const ValidatedConfig& cfg, RandomStream& rng) {
    const double area = cfg->area_side * cfg->area_side;
    const int count = cfg->ue_density > 0.0 ? rng.poisson(cfg->ue_density * area) : 0;
    std::vector<Point> ues;
    ues.reserve(count);
    for (int i = 0; i < count; ++i) {
        double x = rng.uniform(0.0, cfg->area_side);
        double y = rng.uniform(0.0, cfg->area_side);
        ues.push_back({x, y});
    }
    return ues;
}

Deployment associate(const ApLayout& aps, std::vector<Point> ues, const ValidatedConfig& cfg) {
    Deployment dep;
    dep.aps = aps;
    dep.assoc.resize(aps.positions.size());
    dep.dist.resize(aps.positions.size());

    for (size_t k = 0; k < ues.size(); ++k) {
        int best = 0;
        double best_d2 = std::numeric_limits<double>::infinity();
        for (size_t n = 0; n < aps.positions.size(); ++n) {
            const double dx = ues[k].x - aps.positions[n].x;
            const double dy = ues[k].y - aps.positions[n].y;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best_d2) {  // strict: ties stay with the lower index
                best_d2 = d2;
                best = static_cast<int>(n);
            }
        }
        dep.assoc[best].push_back(static_cast<int>(k));
        dep.dist[best].push_back(std::max(std::sqrt(best_d2), cfg->min_distance));
    }
    dep.ues = std::move(ues);
    return dep;
}

}  // namespace fiwi
