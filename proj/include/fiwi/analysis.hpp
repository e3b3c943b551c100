#pragma once

#include <string>

#include "fiwi/caching.hpp"
#include "fiwi/channel.hpp"
#include "fiwi/config.hpp"

namespace fiwi {

// Constants of the average-rate integral for one (lambda, D) pair:
//   eta_i = N_i (N_i!)^{-1/N_i}
//   U_i   = G N_i (D/2)^{alpha_i} / (N_i - 1)
//   V     = G / (sigma^2 lambda pi D^2)
// P_T below is the per-AP total transmit power consumption in
// [0, P_M - P_cc]; the remainder of the budget is caching power.
struct RateModel {
    double eta_los = 0.0, eta_nlos = 0.0;
    double u_los = 0.0, u_nlos = 0.0;
    double v = 0.0;
    double avg_ues_per_ap = 0.0;  // lambda pi D^2

    NetworkConfig cfg;
    double rel_tol = 1e-6;  // outer r-integral, relative

    static RateModel from_config(const ValidatedConfig& cfg);
};

// Average spectral efficiency of a link, bit/s/Hz (multiply by B for
// bit/s). Double integral over distance and the rate CCDF; the t axis is
// truncated where the exponent at r = min_distance reaches 40.
double average_rate(const RateModel& model, double p_t);

// Noise-normalized expected inverse-gain sum over one AP's users,
// conditioned on the link state:
//   lambda pi D^2 (D/2)^{alpha_i} sigma^2 N_i / (N_i - 1)   [W]
double expected_inverse_gain(const ValidatedConfig& cfg, double lambda, double d,
                             LinkState state);

// Files bought by the budget remainder: floor of (P_M - P_cc - P_T)/omega
// bits, clamped to the cache size and the catalog.
int analytic_cached_files(double p_t, const ValidatedConfig& cfg);

// Hit ratio when P_T of the usable budget goes to transmission.
double analytic_hit_ratio(double p_t, const ValidatedConfig& cfg, const PopularityModel& pop);

// Backhaul load of one AP: p_miss * lambda pi D^2 * B * tau, bit/s.
double backhaul_load(double p_t, const ValidatedConfig& cfg, const PopularityModel& pop);
double backhaul_load(double p_t, const RateModel& model, const PopularityModel& pop);

// Network throughput bound: min(A, C + p_hit A) with A = lambda pi D^2 N B tau.
double upper_bound(double p_t, const ValidatedConfig& cfg, const PopularityModel& pop);
double upper_bound(double p_t, const RateModel& model, const PopularityModel& pop);

struct UpperBoundResult {
    double p_t_star = 0.0;          // argmax, W
    double r_plus = 0.0;            // bound value, bit/s
    double tau_at_star = 0.0;       // bit/s/Hz
    double hit_ratio_at_star = 0.0;
    double cache_utilization = 0.0;  // fraction of Q in use at the optimum
};

// Golden-section search of the bound over P_T in [0, P_M - P_cc]
// (concave up to file-granularity steps), |interval| tolerance 1e-4 W.
UpperBoundResult maximize_upper_bound(const ValidatedConfig& cfg, const PopularityModel& pop);

// CSV over a P_T grid: P_T_watts, tau_bps_hz, p_hit, C_n_bps, R_plus_bps.
void write_analysis_csv(const ValidatedConfig& cfg, const PopularityModel& pop,
                        int grid_size, const std::string& path);

}  // namespace fiwi
