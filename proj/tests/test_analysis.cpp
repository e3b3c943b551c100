#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "fiwi/analysis.hpp"
#include "fiwi/quadrature.hpp"
#include "fiwi/rng.hpp"
#include "fiwi/waterfill.hpp"

using namespace fiwi;

namespace {

ValidatedConfig defaults() { return validate_config(NetworkConfig{}); }

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace

TEST_CASE("adaptive simpson basics") {
    CHECK(adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi,
                           1e-10) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(adaptive_simpson([](double) { return 1.0; }, 2.0, 2.0, 1e-10) == 0.0);
    // A step cannot be resolved within a tiny depth budget.
    CHECK_THROWS_AS(adaptive_simpson([](double x) { return x < 0.1234567 ? 0.0 : 1.0; }, 0.0,
                                     1.0, 1e-12, 3),
                    IntegrationFailure);
}

TEST_CASE("rate-model constants") {
    const ValidatedConfig cfg = defaults();
    const RateModel m = RateModel::from_config(cfg);
    CHECK(m.eta_los == doctest::Approx(3.0 * std::pow(6.0, -1.0 / 3.0)).epsilon(1e-12));
    CHECK(m.eta_nlos == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(m.u_los == doctest::Approx(cfg->beam_gain * 3.0 * 2500.0 / 2.0).epsilon(1e-12));
    CHECK(m.u_nlos == doctest::Approx(cfg->beam_gain * 2.0 * 6.25e6).epsilon(1e-12));
    CHECK(m.avg_ues_per_ap == doctest::Approx(4e-4 * std::numbers::pi * 1e4).epsilon(1e-12));
    CHECK(m.v ==
          doctest::Approx(cfg->beam_gain / (cfg->noise_power * m.avg_ues_per_ap)).epsilon(1e-12));
}

TEST_CASE("stable ccdf form equals the alternating binomial sum") {
    for (int nakagami : {2, 3, 5}) {
        for (double z : {1e-6, 0.3, 1.0, 2.5, 10.0}) {
            double alternating = 0.0;
            for (int m = 1; m <= nakagami; ++m)
                alternating += (m % 2 == 1 ? 1.0 : -1.0) * binomial(nakagami, m) *
                               std::exp(-m * z);
            const double stable = 1.0 - std::pow(1.0 - std::exp(-z), nakagami);
            CHECK(stable == doctest::Approx(alternating).epsilon(1e-12));
        }
    }
}

TEST_CASE("expected inverse gain per state") {
    const ValidatedConfig cfg = defaults();
    const double lambda = cfg->ue_density;
    const double d = cfg->cell_radius;
    const double count = lambda * std::numbers::pi * d * d;

    const double los = expected_inverse_gain(cfg, lambda, d, LinkState::Los);
    CHECK(los == doctest::Approx(count * 2500.0 * cfg->noise_power * 1.5).epsilon(1e-12));
    const double nlos = expected_inverse_gain(cfg, lambda, d, LinkState::Nlos);
    CHECK(nlos == doctest::Approx(count * 6.25e6 * cfg->noise_power * 2.0).epsilon(1e-12));

    // Sampling oracle for the inverse-fading factor.
    RandomStream rng(67);
    double sum_inv = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) sum_inv += 1.0 / rng.gamma_unit_mean(3);
    CHECK(sum_inv / draws == doctest::Approx(1.5).epsilon(0.01));
}

TEST_CASE("average rate is positive at zero power and increases with it") {
    NetworkConfig no_beam;
    no_beam.beam_gain = 1.0;
    const RateModel bare = RateModel::from_config(validate_config(no_beam));
    CHECK(average_rate(bare, 0.0) > 0.0);

    const RateModel m = RateModel::from_config(defaults());
    const double t1 = average_rate(m, 1.0);
    const double t2 = average_rate(m, 2.0);
    const double t4 = average_rate(m, 4.0);
    CHECK(t1 > 0.0);
    CHECK(t2 > t1);
    CHECK(t4 > t2);
}

TEST_CASE("halving the tolerance moves tau by far less than 0.1%") {
    RateModel m = RateModel::from_config(defaults());
    m.rel_tol = 1e-6;
    const double coarse = average_rate(m, 3.0);
    m.rel_tol = 5e-7;
    const double fine = average_rate(m, 3.0);
    CHECK(std::abs(coarse - fine) / fine < 1e-3);
}

TEST_CASE("analytic hit ratio follows the power split") {
    const ValidatedConfig cfg = defaults();
    const PopularityModel pop = zipf_popularity(cfg->num_files, cfg->zipf_delta);

    CHECK(analytic_hit_ratio(cfg->usable_budget(), cfg, pop) == 0.0);
    CHECK(analytic_cached_files(0.0, cfg) == 400);  // cache-bound
    CHECK(analytic_hit_ratio(0.0, cfg, pop) ==
          doctest::Approx(pop.prefix_hit_ratio(400)).epsilon(1e-15));

    double prev = 2.0;
    for (int i = 0; i <= 30; ++i) {
        const double p_t = cfg->usable_budget() * i / 30.0;
        const double hit = analytic_hit_ratio(p_t, cfg, pop);
        CHECK(hit <= prev + 1e-15);
        prev = hit;
    }
    CHECK_THROWS_AS(analytic_hit_ratio(-0.1, cfg, pop), std::invalid_argument);
    CHECK_THROWS_AS(analytic_hit_ratio(6.1, cfg, pop), std::invalid_argument);
}

TEST_CASE("backhaul load vanishes when the whole catalog is cached") {
    NetworkConfig small;
    small.num_files = 10;
    const ValidatedConfig cfg = validate_config(small);
    const PopularityModel pop = zipf_popularity(10, small.zipf_delta);
    CHECK(analytic_hit_ratio(1.0, cfg, pop) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(backhaul_load(1.0, cfg, pop) == 0.0);
}

TEST_CASE("backhaul load is strictly increasing in transmit power") {
    const ValidatedConfig cfg = defaults();
    const PopularityModel pop = zipf_popularity(cfg->num_files, cfg->zipf_delta);
    const RateModel m = RateModel::from_config(cfg);
    double prev = -1.0;
    for (int i = 1; i <= 12; ++i) {
        const double p_t = cfg->usable_budget() * i / 13.0;
        const double load = backhaul_load(p_t, m, pop);
        CHECK(load > prev);
        prev = load;
    }
}

TEST_CASE("upper bound branches") {
    // Full catalog cached: the wireless term is the binding one.
    NetworkConfig small;
    small.num_files = 10;
    const ValidatedConfig cfg_small = validate_config(small);
    const PopularityModel pop_small = zipf_popularity(10, small.zipf_delta);
    const RateModel m_small = RateModel::from_config(cfg_small);
    const double tau = average_rate(m_small, 1.0);
    const double wireless = m_small.avg_ues_per_ap * 16 * 10e6 * tau;
    CHECK(upper_bound(1.0, cfg_small, pop_small) == doctest::Approx(wireless).epsilon(1e-9));

    // No cache at all and plenty of wireless headroom: the bound is C.
    NetworkConfig bare;
    bare.cache_size = 0.0;
    const ValidatedConfig cfg_bare = validate_config(bare);
    const PopularityModel pop = zipf_popularity(bare.num_files, bare.zipf_delta);
    CHECK(upper_bound(6.0, cfg_bare, pop) == doctest::Approx(15e9).epsilon(1e-12));
}

TEST_CASE("bound maximization and cache utilization") {
    const ValidatedConfig cfg = defaults();
    const PopularityModel pop = zipf_popularity(cfg->num_files, cfg->zipf_delta);
    const UpperBoundResult best = maximize_upper_bound(cfg, pop);
    CHECK(best.p_t_star >= 0.0);
    CHECK(best.p_t_star <= cfg->usable_budget());
    CHECK(best.cache_utilization > 0.0);
    CHECK(best.cache_utilization < 1.0);
    CHECK(best.r_plus >= upper_bound(best.p_t_star * 0.9, cfg, pop) - 1e-6 * best.r_plus);
    CHECK(best.r_plus >= upper_bound(std::min(best.p_t_star * 1.1, cfg->usable_budget()), cfg,
                                     pop) -
                             1e-6 * best.r_plus);

    // Unbounded backhaul never rewards caching.
    NetworkConfig infinite;
    infinite.backhaul_capacity = std::numeric_limits<double>::infinity();
    const ValidatedConfig cfg_inf = validate_config(infinite);
    const UpperBoundResult free = maximize_upper_bound(cfg_inf, pop);
    CHECK(free.p_t_star == doctest::Approx(cfg->usable_budget()).epsilon(1e-3));

    // Tighter cells cache more at the optimum. The comparison holds the
    // average user count per AP fixed across radii, so the density scales
    // with 1/D^2.
    const double users_per_ap = NetworkConfig{}.ue_density * std::numbers::pi * 1e4;
    NetworkConfig near;
    near.cell_radius = 80.0;
    near.ue_density = users_per_ap / (std::numbers::pi * 80.0 * 80.0);
    NetworkConfig far;
    far.cell_radius = 120.0;
    far.ue_density = users_per_ap / (std::numbers::pi * 120.0 * 120.0);
    const UpperBoundResult near_best = maximize_upper_bound(validate_config(near), pop);
    const UpperBoundResult far_best = maximize_upper_bound(validate_config(far), pop);
    CHECK(near_best.cache_utilization > far_best.cache_utilization);
}

TEST_CASE("the bound grows with backhaul capacity") {
    const PopularityModel pop = zipf_popularity(1000, 0.8);
    double prev = -1.0;
    for (double c : {5e9, 10e9, 15e9, 20e9}) {
        NetworkConfig raw;
        raw.backhaul_capacity = c;
        const UpperBoundResult best = maximize_upper_bound(validate_config(raw), pop);
        CHECK(best.r_plus >= prev);
        prev = best.r_plus;
    }
}

TEST_CASE("simulated single-cell rate approaches the analytic average") {
    // Jensen-tightness condition: a cell with exactly lambda pi D^2 users
    // and the matching transmit volume. The residual gap is the fading
    // CCDF bound inside the integral plus sampling noise.
    const int users = 13;
    NetworkConfig raw;
    raw.ue_density = users / (std::numbers::pi * 1e4);
    raw.power_amp_coeff = 1.0;
    raw.max_power = 6.0;  // usable budget 4 W = P_T
    const ValidatedConfig cfg = validate_config(raw);
    const double p_t = cfg->usable_budget();
    const RateModel model = RateModel::from_config(cfg);
    const double tau = average_rate(model, p_t);

    RandomStream rng(71);
    double sum = 0.0;
    const int drops = 1500;
    for (int i = 0; i < drops; ++i) {
        std::vector<double> gains(users);
        for (int k = 0; k < users; ++k) {
            const double r = std::max(cfg->cell_radius * std::sqrt(rng.uniform()),
                                      cfg->min_distance);
            const bool los = rng.bernoulli(std::exp(-cfg->blockage_beta * r));
            const double h = rng.gamma_unit_mean(los ? cfg->nakagami_los : cfg->nakagami_nlos);
            gains[k] = std::pow(r, los ? -cfg->pathloss_los : -cfg->pathloss_nlos) * h;
        }
        sum += vabwf(gains, 0, cfg).sum_rate;
    }
    const double simulated = sum / (drops * users * cfg->subchannel_bw);
    CHECK(std::abs(simulated - tau) / tau < 0.025);
}

TEST_CASE("analysis csv layout") {
    const ValidatedConfig cfg = defaults();
    const PopularityModel pop = zipf_popularity(cfg->num_files, cfg->zipf_delta);
    const auto path = std::filesystem::temp_directory_path() / "fiwi_analysis.csv";
    write_analysis_csv(cfg, pop, 2, path.string());

    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# config_hash=", 0) == 0);
    std::getline(in, line);
    CHECK(line == "P_T_watts,tau_bps_hz,p_hit,C_n_bps,R_plus_bps");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2);
    std::filesystem::remove(path);
}
