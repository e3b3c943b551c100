#include "fiwi/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "fiwi/analysis.hpp"
#include "fiwi/config.hpp"
#include "fiwi/mckp.hpp"
#include "fiwi/sim.hpp"

namespace fiwi {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

NetworkConfig resolve_config(const std::string& config_path,
                             const std::vector<std::string>& overrides) {
    NetworkConfig cfg;
    if (!config_path.empty()) cfg = load_config_file(config_path);
    for (const auto& assignment : overrides) apply_override(cfg, assignment);
    return cfg;
}

json config_json_object(const NetworkConfig& cfg) { return json::parse(config_to_json(cfg)); }

std::string sweep_param_field(const std::string& name) {
    if (name == "C") return "backhaul_capacity";
    if (name == "D") return "cell_radius";
    if (name == "beta") return "blockage_beta";
    if (name == "P_M") return "max_power";
    if (name == "delta") return "zipf_delta";
    if (name == "lambda") return "ue_density";
    if (name == "backhaul_capacity" || name == "cell_radius" || name == "blockage_beta" ||
        name == "max_power" || name == "zipf_delta" || name == "ue_density")
        return name;
    return {};
}

int cmd_analyze(const std::string& config_path, const std::vector<std::string>& overrides,
                int grid, const std::string& out_path, const std::string& summary_path) {
    const NetworkConfig raw = resolve_config(config_path, overrides);
    const ValidatedConfig cfg = validate_config(raw);
    const PopularityModel pop = zipf_popularity(cfg->num_files, cfg->zipf_delta);

    write_analysis_csv(cfg, pop, grid, out_path);

    const UpperBoundResult best = maximize_upper_bound(cfg, pop);
    json summary = {
        {"config_hash", config_hash_hex(cfg.get())},
        {"config", config_json_object(cfg.get())},
        {"grid", grid},
        {"p_t_star_watts", best.p_t_star},
        {"r_plus_bps", best.r_plus},
        {"tau_at_star_bps_hz", best.tau_at_star},
        {"hit_ratio_at_star", best.hit_ratio_at_star},
        {"cache_utilization", best.cache_utilization},
    };
    std::ofstream out(summary_path);
    if (!out) throw std::runtime_error("cannot write " + summary_path);
    out << summary.dump(2) << "\n";
    std::cout << "analyze: wrote " << out_path << " and " << summary_path << "\n";
    return 0;
}

void write_trials_csv(const std::vector<TrialResult>& results, const std::string& algorithm,
                      const NetworkConfig& cfg, uint64_t seed, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "# config_hash=" << config_hash_hex(cfg) << " algorithm=" << algorithm
        << " seed=" << seed << " trials=" << results.size() << "\n";
    out << "trial_id,algorithm,throughput_bps,backhaul_bps,mean_tx_power_w,mean_cached_files\n";
    for (size_t t = 0; t < results.size(); ++t) {
        const TrialResult& r = results[t];
        out << t << ',' << algorithm << ',' << fmt(r.throughput) << ',' << fmt(r.backhaul_load)
            << ',' << fmt(r.mean_tx_power()) << ',' << fmt(r.mean_cached_files()) << "\n";
    }
}

json stats_json(const AggregateStats& stats) {
    return json{
        {"trials", stats.trials},
        {"stddev_defined", stats.stddev_defined},
        {"mean_throughput_bps", stats.mean_throughput},
        {"stddev_throughput_bps", stats.stddev_throughput},
        {"ci95_throughput_bps", stats.ci95_throughput},
        {"mean_backhaul_bps", stats.mean_backhaul},
        {"stddev_backhaul_bps", stats.stddev_backhaul},
        {"ci95_backhaul_bps", stats.ci95_backhaul},
        {"mean_tx_power_w", stats.mean_tx_power},
        {"mean_cached_files", stats.mean_cached_files},
        {"mean_cache_utilization", stats.mean_cache_utilization},
    };
}

// First-trial debug dump of the DP inputs and frontier.
void dump_dp_internals(const ValidatedConfig& cfg, const PopularityModel& pop, uint64_t seed,
                       const std::string& candidates_path, const std::string& frontier_path) {
    RandomStream rng(RandomStream::mix(seed, 0));
    const ApLayout aps = deploy_aps(cfg);
    const Deployment dep = associate(aps, sample_ues(cfg, rng), cfg);
    const ChannelRealization ch = realize_channel(dep, cfg, rng);
    CandidateTable items = build_candidates(dep, ch, pop, cfg);
    quantize_weights(items, cfg->dp_bandwidth_unit);
    if (!candidates_path.empty()) dump_candidates_csv(items, candidates_path);
    if (!frontier_path.empty() && std::isfinite(cfg->backhaul_capacity)) {
        const int units =
            static_cast<int>(std::floor(cfg->backhaul_capacity / cfg->dp_bandwidth_unit + 1e-9));
        dump_dp_frontier_csv(dp_solve(items, units), frontier_path);
    }
}

int cmd_simulate(const std::string& config_path, const std::vector<std::string>& overrides,
                 const std::string& algorithm, int trials, uint64_t seed, int threads,
                 const std::string& out_path, const std::string& summary_path,
                 const std::string& dump_candidates_path, const std::string& dump_frontier_path) {
    const auto alg = parse_algorithm(algorithm);
    if (!alg) {
        std::cerr << "unknown algorithm '" << algorithm << "'; valid names:";
        for (const auto& [name, a] : algorithm_names()) std::cerr << " " << name;
        std::cerr << "\n";
        return 2;
    }
    const NetworkConfig raw = resolve_config(config_path, overrides);
    const ValidatedConfig cfg = validate_config(raw);
    const PopularityModel pop = zipf_popularity(cfg->num_files, cfg->zipf_delta);

    if (!dump_candidates_path.empty() || !dump_frontier_path.empty())
        dump_dp_internals(cfg, pop, seed, dump_candidates_path, dump_frontier_path);

    const std::vector<TrialResult> results = run_trials(cfg, pop, *alg, trials, seed, threads);
    write_trials_csv(results, algorithm, cfg.get(), seed, out_path);

    json summary = {
        {"config_hash", config_hash_hex(cfg.get())},
        {"config", config_json_object(cfg.get())},
        {"algorithm", algorithm},
        {"seed", seed},
        {"backhaul_enforcement",
         *alg == Algorithm::VabwfDp ? "dp-capacity-constraint" : "proportional-miss-throttling"},
        {"stats", stats_json(aggregate(results, cfg))},
    };
    std::ofstream out(summary_path);
    if (!out) throw std::runtime_error("cannot write " + summary_path);
    out << summary.dump(2) << "\n";
    std::cout << "simulate: wrote " << out_path << " and " << summary_path << "\n";
    return 0;
}

struct SweepSpec {
    std::string parameter;
    std::vector<double> values;
    std::vector<std::string> algorithms;
    int trials = 200;
    uint64_t seed = 1;
    std::string output = "sweep.csv";
};

SweepSpec parse_sweep_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sweep spec: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError({{"<sweep>", std::string("not valid JSON: ") + e.what()}});
    }

    std::vector<FieldViolation> v;
    SweepSpec spec;
    if (!j.contains("parameter") || !j["parameter"].is_string())
        v.push_back({"parameter", "required string, one of C D beta P_M delta lambda"});
    else {
        spec.parameter = j["parameter"].get<std::string>();
        if (sweep_param_field(spec.parameter).empty())
            v.push_back({"parameter", "unknown sweep parameter '" + spec.parameter + "'"});
    }
    if (!j.contains("values") || !j["values"].is_array() || j["values"].empty())
        v.push_back({"values", "required non-empty array of numbers"});
    else
        for (const auto& val : j["values"]) {
            if (!val.is_number()) {
                v.push_back({"values", "entries must be numbers"});
                break;
            }
            spec.values.push_back(val.get<double>());
        }
    if (j.contains("algorithms")) {
        if (!j["algorithms"].is_array() || j["algorithms"].empty())
            v.push_back({"algorithms", "must be a non-empty array of names"});
        else
            for (const auto& name : j["algorithms"]) {
                const std::string text = name.get<std::string>();
                if (!parse_algorithm(text))
                    v.push_back({"algorithms", "unknown algorithm '" + text + "'"});
                spec.algorithms.push_back(text);
            }
    } else {
        for (const auto& [name, alg] : algorithm_names()) spec.algorithms.push_back(name);
    }
    if (j.contains("trials")) {
        spec.trials = j["trials"].get<int>();
        if (spec.trials < 1) v.push_back({"trials", "must be >= 1"});
    }
    if (j.contains("seed")) spec.seed = j["seed"].get<uint64_t>();
    if (j.contains("output")) spec.output = j["output"].get<std::string>();
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string k = it.key();
        if (k != "parameter" && k != "values" && k != "algorithms" && k != "trials" &&
            k != "seed" && k != "output")
            v.push_back({k, "unknown sweep field"});
    }
    if (!v.empty()) throw ValidationError(std::move(v));
    return spec;
}

int cmd_sweep(const std::string& spec_path, const std::string& config_path,
              const std::vector<std::string>& overrides, const std::string& out_override,
              int threads) {
    const SweepSpec spec = parse_sweep_spec(spec_path);
    const std::string field = sweep_param_field(spec.parameter);
    const std::string out_path = out_override.empty() ? spec.output : out_override;

    const NetworkConfig base = resolve_config(config_path, overrides);

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << "# config_hash=" << config_hash_hex(base) << " parameter=" << spec.parameter
        << " seed=" << spec.seed << " trials=" << spec.trials << "\n";
    out << "param_name,param_value,algorithm,mean_throughput_bps,ci95,mean_utilization,"
           "r_plus_bps\n";

    for (size_t i = 0; i < spec.values.size(); ++i) {
        NetworkConfig point_cfg = base;
        apply_override(point_cfg, field + "=" + fmt(spec.values[i]));
        const ValidatedConfig cfg = validate_config(point_cfg);
        const PopularityModel pop = zipf_popularity(cfg->num_files, cfg->zipf_delta);
        const double r_plus = maximize_upper_bound(cfg, pop).r_plus;
        const uint64_t point_seed = RandomStream::mix(spec.seed, i);

        for (const auto& name : spec.algorithms) {
            const AggregateStats stats =
                run_benchmark(cfg, pop, *parse_algorithm(name), spec.trials, point_seed, threads);
            out << spec.parameter << ',' << fmt(spec.values[i]) << ',' << name << ','
                << fmt(stats.mean_throughput) << ',' << fmt(stats.ci95_throughput) << ','
                << fmt(stats.mean_cache_utilization) << ',' << fmt(r_plus) << "\n";
            out.flush();
        }
    }
    std::cout << "sweep: wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"joint power-allocation and caching optimizer for cache-enabled "
                 "fiber-wireless networks"};
    app.require_subcommand(1);
    app.fallthrough(true);

    std::string config_path;
    std::vector<std::string> overrides;
    int threads = 0;
    app.add_option("--config", config_path, "config file (flat JSON key-value)");
    app.add_option("--set", overrides, "override a config field, field=value (repeatable)");
    app.add_option("--threads", threads, "worker threads (0 = auto)");

    auto* analyze = app.add_subcommand("analyze", "bound and rate curves over a P_T grid");
    int grid = 50;
    std::string analyze_out = "analysis.csv";
    std::string analyze_summary;
    analyze->add_option("--grid", grid, "number of P_T grid points")->check(CLI::PositiveNumber);
    analyze->add_option("--out", analyze_out, "output CSV path");
    analyze->add_option("--summary", analyze_summary, "summary JSON path");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo trials for one algorithm");
    std::string algorithm = "vabwf-dp";
    int trials = 200;
    uint64_t seed = 1;
    std::string sim_out = "trials.csv";
    std::string sim_summary;
    std::string dump_candidates_path;
    std::string dump_frontier_path;
    simulate->add_option("--algorithm", algorithm, "vabwf-dp | wf-fc | ep-pf | wf-rc");
    simulate->add_option("--trials", trials, "trial count")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "root seed");
    simulate->add_option("--out", sim_out, "per-trial CSV path");
    simulate->add_option("--summary", sim_summary, "aggregate JSON path");
    simulate->add_option("--dump-candidates", dump_candidates_path,
                         "debug CSV of the first trial's candidate table");
    simulate->add_option("--dump-frontier", dump_frontier_path,
                         "debug CSV of the first trial's DP frontier");

    auto* sweep = app.add_subcommand("sweep", "parameter sweep from a spec file");
    std::string sweep_spec_path;
    std::string sweep_out;
    sweep->add_option("--spec", sweep_spec_path, "sweep spec JSON")->required();
    sweep->add_option("--out", sweep_out, "override the spec's output path");

    std::vector<const char*> argv;
    argv.push_back("fiwi");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) {
            if (analyze_summary.empty()) analyze_summary = analyze_out + ".summary.json";
            return cmd_analyze(config_path, overrides, grid, analyze_out, analyze_summary);
        }
        if (simulate->parsed()) {
            if (sim_summary.empty()) sim_summary = sim_out + ".summary.json";
            return cmd_simulate(config_path, overrides, algorithm, trials, seed, threads,
                                sim_out, sim_summary, dump_candidates_path, dump_frontier_path);
        }
        if (sweep->parsed())
            return cmd_sweep(sweep_spec_path, config_path, overrides, sweep_out, threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace fiwi
