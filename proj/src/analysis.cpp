#include "fiwi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "fiwi/quadrature.hpp"

namespace fiwi {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

struct StateParams {
    double eta;
    double u;
    double alpha;
    int nakagami;
};

// CCDF approximation of unit-mean Gamma fading at threshold z, written in
// the numerically stable product form; expanding the power binomially
// gives the alternating-sum form of the rate integral.
double gamma_ccdf_bound(double z, int nakagami) {
    if (z <= 0.0) return 1.0;
    if (z > 45.0) return 0.0;
    const double base = 1.0 - std::exp(-z);
    return 1.0 - std::pow(base, nakagami);
}

}  // namespace

RateModel RateModel::from_config(const ValidatedConfig& cfg) {
    if (!(cfg->ue_density > 0.0))
        throw std::invalid_argument("analysis requires ue_density > 0");
    RateModel m;
    m.cfg = cfg.get();
    const double d_half_l = std::pow(cfg->cell_radius / 2.0, cfg->pathloss_los);
    const double d_half_n = std::pow(cfg->cell_radius / 2.0, cfg->pathloss_nlos);
    m.eta_los = cfg->nakagami_los * std::pow(factorial(cfg->nakagami_los),
                                             -1.0 / cfg->nakagami_los);
    m.eta_nlos = cfg->nakagami_nlos * std::pow(factorial(cfg->nakagami_nlos),
                                               -1.0 / cfg->nakagami_nlos);
    m.u_los = cfg->beam_gain * cfg->nakagami_los * d_half_l / (cfg->nakagami_los - 1);
    m.u_nlos = cfg->beam_gain * cfg->nakagami_nlos * d_half_n / (cfg->nakagami_nlos - 1);
    m.avg_ues_per_ap = cfg->ue_density * std::numbers::pi * cfg->cell_radius * cfg->cell_radius;
    m.v = cfg->beam_gain / (cfg->noise_power * m.avg_ues_per_ap);
    return m;
}

double average_rate(const RateModel& model, double p_t) {
    if (p_t < 0.0) throw NegativePower("average_rate: p_t < 0");
    const NetworkConfig& cfg = model.cfg;
    const StateParams states[2] = {
        {model.eta_los, model.u_los, cfg.pathloss_los, cfg.nakagami_los},
        {model.eta_nlos, model.u_nlos, cfg.pathloss_nlos, cfg.nakagami_nlos},
    };

    // Truncate t where the exponent reaches 40 at the distance floor, the
    // slowest-decaying point of the r range.
    double t_max = 1.0;
    for (const auto& s : states) {
        const double denom = s.eta * std::pow(cfg.min_distance, s.alpha);
        const double arg = 40.0 * (s.u + model.v * p_t) / denom - (cfg.beam_gain - 1.0);
        if (arg > 2.0) t_max = std::max(t_max, std::log2(arg));
    }

    const double d = cfg.cell_radius;
    // The inner integral feeds the outer integrand, so its budget sits
    // three orders below the outer relative target and its residual noise
    // enters the outer acceptance floor.
    const double inner_tol = model.rel_tol * 1e-3 * std::max(1.0, t_max);
    auto inner = [&](double r) {
        const double p_los = std::exp(-cfg.blockage_beta * r);
        const double weights[2] = {p_los, 1.0 - p_los};
        double kappa[2];
        for (int i = 0; i < 2; ++i)
            kappa[i] = states[i].eta * std::pow(r, states[i].alpha) /
                       (states[i].u + model.v * p_t);
        auto ccdf_at = [&](double t) {
            const double shift = std::exp2(t) + cfg.beam_gain - 1.0;
            double val = 0.0;
            for (int i = 0; i < 2; ++i)
                val += weights[i] * gamma_ccdf_bound(kappa[i] * shift, states[i].nakagami);
            return val;
        };
        return adaptive_simpson(ccdf_at, 0.0, t_max, inner_tol);
    };

    auto outer_integrand = [&](double r) { return inner(r) * 2.0 * r / (d * d); };

    // Pilot estimate sets the absolute budget for the requested relative
    // tolerance.
    double pilot = 0.0;
    const int pilot_n = 16;
    for (int i = 0; i < pilot_n; ++i) {
        const double r = d * (i + 0.5) / pilot_n;
        pilot += outer_integrand(r) * (d / pilot_n);
    }
    const double abs_tol = std::max(pilot, 1e-9) * model.rel_tol;
    return adaptive_simpson(outer_integrand, 0.0, d, abs_tol, 40, inner_tol * 2.0 / d);
}

double expected_inverse_gain(const ValidatedConfig& cfg, double lambda, double d,
                             LinkState state) {
    const bool los = state == LinkState::Los;
    const double alpha = los ? cfg->pathloss_los : cfg->pathloss_nlos;
    const int nakagami = los ? cfg->nakagami_los : cfg->nakagami_nlos;
    const double mean_count = lambda * std::numbers::pi * d * d;
    const double inv_fading_mean =
        static_cast<double>(nakagami) / (static_cast<double>(nakagami) - 1.0);
    return mean_count * std::pow(d / 2.0, alpha) * cfg->noise_power * inv_fading_mean;
}

namespace {

int cached_files_at(double p_t, const NetworkConfig& cfg) {
    double bits = std::floor((cfg.max_power - cfg.circuit_power - p_t) /
                             cfg.caching_power_coeff);
    bits = std::clamp(bits, 0.0, cfg.cache_size);
    const int files = static_cast<int>(std::floor(bits / cfg.file_size));
    return std::min(files, cfg.num_files);
}

}  // namespace

int analytic_cached_files(double p_t, const ValidatedConfig& cfg) {
    if (p_t < 0.0 || p_t > cfg->usable_budget())
        throw std::invalid_argument("p_t outside [0, P_M - P_cc]");
    return cached_files_at(p_t, cfg.get());
}

double analytic_hit_ratio(double p_t, const ValidatedConfig& cfg, const PopularityModel& pop) {
    return pop.prefix_hit_ratio(analytic_cached_files(p_t, cfg));
}

double backhaul_load(double p_t, const RateModel& model, const PopularityModel& pop) {
    const double miss = pop.miss_ratio(cached_files_at(p_t, model.cfg));
    const double tau = average_rate(model, p_t);
    return miss * model.avg_ues_per_ap * model.cfg.subchannel_bw * tau;
}

double backhaul_load(double p_t, const ValidatedConfig& cfg, const PopularityModel& pop) {
    return backhaul_load(p_t, RateModel::from_config(cfg), pop);
}

double upper_bound(double p_t, const RateModel& model, const PopularityModel& pop) {
    const double tau = average_rate(model, p_t);
    const double wireless =
        model.avg_ues_per_ap * model.cfg.num_aps * model.cfg.subchannel_bw * tau;
    const double hit = pop.prefix_hit_ratio(cached_files_at(p_t, model.cfg));
    return std::min(wireless, model.cfg.backhaul_capacity + hit * wireless);
}

double upper_bound(double p_t, const ValidatedConfig& cfg, const PopularityModel& pop) {
    return upper_bound(p_t, RateModel::from_config(cfg), pop);
}

UpperBoundResult maximize_upper_bound(const ValidatedConfig& cfg, const PopularityModel& pop) {
    const RateModel model = RateModel::from_config(cfg);
    auto objective = [&](double p) { return upper_bound(p, model, pop); };

    double lo = 0.0;
    double hi = cfg->usable_budget();
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (hi - lo > 1e-4) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        }
    }

    UpperBoundResult out;
    out.p_t_star = 0.5 * (lo + hi);
    out.r_plus = objective(out.p_t_star);
    // The ends can win when the bound is monotone over the whole range.
    for (double end : {0.0, cfg->usable_budget()}) {
        const double val = objective(end);
        if (val > out.r_plus) {
            out.p_t_star = end;
            out.r_plus = val;
        }
    }
    out.tau_at_star = average_rate(model, out.p_t_star);
    out.hit_ratio_at_star = analytic_hit_ratio(out.p_t_star, cfg, pop);
    out.cache_utilization =
        std::clamp((cfg->usable_budget() - out.p_t_star) /
                       (cfg->caching_power_coeff * cfg->cache_size),
                   0.0, 1.0);
    return out;
}

void write_analysis_csv(const ValidatedConfig& cfg, const PopularityModel& pop,
                        int grid_size, const std::string& path) {
    if (grid_size < 1) throw std::invalid_argument("grid_size must be >= 1");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);

    const RateModel model = RateModel::from_config(cfg);
    out << "# config_hash=" << config_hash_hex(cfg.get()) << "\n";
    out << "P_T_watts,tau_bps_hz,p_hit,C_n_bps,R_plus_bps\n";
    char line[256];
    for (int i = 0; i < grid_size; ++i) {
        const double p_t = grid_size == 1
                               ? 0.0
                               : cfg->usable_budget() * i / (grid_size - 1.0);
        const double tau = average_rate(model, p_t);
        const int files = analytic_cached_files(p_t, cfg);
        const double hit = pop.prefix_hit_ratio(files);
        const double load = pop.miss_ratio(files) * model.avg_ues_per_ap * cfg->subchannel_bw * tau;
        const double wireless = model.avg_ues_per_ap * cfg->num_aps * cfg->subchannel_bw * tau;
        const double bound = std::min(wireless, cfg->backhaul_capacity + hit * wireless);
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g\n", p_t, tau, hit,
                      load, bound);
        out << line;
    }
}

}  // namespace fiwi
