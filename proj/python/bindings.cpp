#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fiwi/analysis.hpp"
#include "fiwi/caching.hpp"
#include "fiwi/channel.hpp"
#include "fiwi/cli.hpp"
#include "fiwi/config.hpp"
#include "fiwi/sim.hpp"
#include "fiwi/waterfill.hpp"

namespace py = pybind11;
using namespace fiwi;

namespace {

Algorithm algorithm_from_name(const std::string& name) {
    const auto alg = parse_algorithm(name);
    if (!alg) throw std::invalid_argument("unknown algorithm: " + name);
    return *alg;
}

}  // namespace

PYBIND11_MODULE(fiwi, m) {
    m.doc() = "joint power-allocation and caching optimizer for cache-enabled "
              "fiber-wireless networks";

    py::class_<NetworkConfig> cfg(m, "NetworkConfig");
    cfg.def(py::init<>());
#define FIWI_FIELD(name) cfg.def_readwrite(#name, &NetworkConfig::name)
    FIWI_FIELD(num_aps);
    FIWI_FIELD(num_files);
    FIWI_FIELD(subchannel_bw);
    FIWI_FIELD(backhaul_capacity);
    FIWI_FIELD(cell_radius);
    FIWI_FIELD(cache_size);
    FIWI_FIELD(max_power);
    FIWI_FIELD(circuit_power);
    FIWI_FIELD(file_size);
    FIWI_FIELD(zipf_delta);
    FIWI_FIELD(ue_density);
    FIWI_FIELD(power_amp_coeff);
    FIWI_FIELD(caching_power_coeff);
    FIWI_FIELD(blockage_beta);
    FIWI_FIELD(pathloss_los);
    FIWI_FIELD(pathloss_nlos);
    FIWI_FIELD(nakagami_los);
    FIWI_FIELD(nakagami_nlos);
    FIWI_FIELD(beam_gain);
    FIWI_FIELD(noise_power);
    FIWI_FIELD(area_side);
    FIWI_FIELD(rng_seed);
    FIWI_FIELD(min_distance);
    FIWI_FIELD(dp_bandwidth_unit);
    FIWI_FIELD(wf_rc_use_waterfilling);
#undef FIWI_FIELD
    cfg.def("to_json", &config_to_json);

    py::class_<ValidatedConfig>(m, "ValidatedConfig")
        .def_property_readonly("config", &ValidatedConfig::get);

    m.def("validate_config", py::overload_cast<const NetworkConfig&>(&validate_config));
    m.def("load_config_file", &load_config_file);
    m.def("config_hash_hex", &config_hash_hex);

    py::class_<PopularityModel>(m, "PopularityModel")
        .def_property_readonly("probs", &PopularityModel::probs)
        .def("prefix_hit_ratio", &PopularityModel::prefix_hit_ratio)
        .def("miss_ratio", &PopularityModel::miss_ratio);
    m.def("zipf_popularity", &zipf_popularity, py::arg("num_files"), py::arg("delta"));

    m.def("blockage_probability", &blockage_probability, py::arg("r"), py::arg("beta"));
    m.def(
        "link_rate",
        [](double power, double gain, const ValidatedConfig& cfg) {
            const LinkRate lr = link_rate(power, gain, cfg);
            return py::make_tuple(lr.snr, lr.rate);
        },
        py::arg("power"), py::arg("gain"), py::arg("cfg"));

    py::class_<WaterfillResult>(m, "WaterfillResult")
        .def_readonly("powers", &WaterfillResult::powers)
        .def_readonly("water_level", &WaterfillResult::water_level)
        .def_readonly("mu", &WaterfillResult::mu)
        .def_readonly("sum_rate", &WaterfillResult::sum_rate)
        .def_readonly("active", &WaterfillResult::active)
        .def("sum_power", &WaterfillResult::sum_power);

    m.def(
        "vabwf",
        [](const std::vector<double>& gains, int cached_count, const ValidatedConfig& cfg) {
            return vabwf(gains, cached_count, cfg);
        },
        py::arg("gains"), py::arg("cached_count"), py::arg("cfg"));

    py::class_<KktReport>(m, "KktReport")
        .def_readonly("stationarity", &KktReport::stationarity)
        .def_readonly("budget", &KktReport::budget)
        .def_readonly("comp_slackness", &KktReport::comp_slackness)
        .def_readonly("dual_min_epsilon", &KktReport::dual_min_epsilon)
        .def_readonly("mu", &KktReport::mu)
        .def("passes", &KktReport::passes, py::arg("tol") = 1e-8)
        .def("worst", &KktReport::worst);

    m.def(
        "verify_kkt",
        [](const WaterfillResult& res, const std::vector<double>& gains, int cached_count,
           const ValidatedConfig& cfg) { return verify_kkt(res, gains, cached_count, cfg); },
        py::arg("result"), py::arg("gains"), py::arg("cached_count"), py::arg("cfg"));

    m.def(
        "average_rate",
        [](const ValidatedConfig& cfg, double p_t) {
            return average_rate(RateModel::from_config(cfg), p_t);
        },
        py::arg("cfg"), py::arg("p_t"));
    m.def("analytic_hit_ratio", &analytic_hit_ratio, py::arg("p_t"), py::arg("cfg"),
          py::arg("pop"));
    m.def("backhaul_load",
          py::overload_cast<double, const ValidatedConfig&, const PopularityModel&>(
              &backhaul_load),
          py::arg("p_t"), py::arg("cfg"), py::arg("pop"));
    m.def("upper_bound",
          py::overload_cast<double, const ValidatedConfig&, const PopularityModel&>(&upper_bound),
          py::arg("p_t"), py::arg("cfg"), py::arg("pop"));

    py::class_<UpperBoundResult>(m, "UpperBoundResult")
        .def_readonly("p_t_star", &UpperBoundResult::p_t_star)
        .def_readonly("r_plus", &UpperBoundResult::r_plus)
        .def_readonly("tau_at_star", &UpperBoundResult::tau_at_star)
        .def_readonly("hit_ratio_at_star", &UpperBoundResult::hit_ratio_at_star)
        .def_readonly("cache_utilization", &UpperBoundResult::cache_utilization);
    m.def("maximize_upper_bound", &maximize_upper_bound, py::arg("cfg"), py::arg("pop"));

    py::class_<TrialResult>(m, "TrialResult")
        .def_readonly("throughput", &TrialResult::throughput)
        .def_readonly("backhaul_load", &TrialResult::backhaul_load)
        .def_readonly("tx_power", &TrialResult::tx_power)
        .def_readonly("cached_files", &TrialResult::cached_files)
        .def_readonly("hit_ratio", &TrialResult::hit_ratio)
        .def_readonly("ue_count", &TrialResult::ue_count)
        .def("mean_tx_power", &TrialResult::mean_tx_power)
        .def("mean_cached_files", &TrialResult::mean_cached_files);

    py::class_<AggregateStats>(m, "AggregateStats")
        .def_readonly("trials", &AggregateStats::trials)
        .def_readonly("stddev_defined", &AggregateStats::stddev_defined)
        .def_readonly("mean_throughput", &AggregateStats::mean_throughput)
        .def_readonly("stddev_throughput", &AggregateStats::stddev_throughput)
        .def_readonly("ci95_throughput", &AggregateStats::ci95_throughput)
        .def_readonly("mean_backhaul", &AggregateStats::mean_backhaul)
        .def_readonly("mean_tx_power", &AggregateStats::mean_tx_power)
        .def_readonly("mean_cached_files", &AggregateStats::mean_cached_files)
        .def_readonly("mean_cache_utilization", &AggregateStats::mean_cache_utilization);

    m.def(
        "run_trial",
        [](const ValidatedConfig& cfg, const std::string& algorithm, uint64_t seed) {
            const PopularityModel pop = zipf_popularity(cfg->num_files, cfg->zipf_delta);
            RandomStream rng(seed);
            return run_trial(cfg, pop, algorithm_from_name(algorithm), rng);
        },
        py::arg("cfg"), py::arg("algorithm"), py::arg("seed"));

    m.def(
        "run_benchmark",
        [](const ValidatedConfig& cfg, const std::string& algorithm, int trials, uint64_t seed,
           int threads) {
            const PopularityModel pop = zipf_popularity(cfg->num_files, cfg->zipf_delta);
            return run_benchmark(cfg, pop, algorithm_from_name(algorithm), trials, seed, threads);
        },
        py::arg("cfg"), py::arg("algorithm"), py::arg("trials"), py::arg("seed"),
        py::arg("threads") = 0);

    m.def("cli_main", &cli_main, py::arg("args"));
}
