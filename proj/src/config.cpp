#include "fiwi/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fiwi {

namespace {

using nlohmann::json;

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

const std::vector<FieldEntry>& config_fields() {
    static const std::vector<FieldEntry> fields = {
        {"num_aps", &NetworkConfig::num_aps},
        {"num_files", &NetworkConfig::num_files},
        {"subchannel_bw", &NetworkConfig::subchannel_bw},
        {"backhaul_capacity", &NetworkConfig::backhaul_capacity},
        {"cell_radius", &NetworkConfig::cell_radius},
        {"cache_size", &NetworkConfig::cache_size},
        {"max_power", &NetworkConfig::max_power},
        {"circuit_power", &NetworkConfig::circuit_power},
        {"file_size", &NetworkConfig::file_size},
        {"zipf_delta", &NetworkConfig::zipf_delta},
        {"ue_density", &NetworkConfig::ue_density},
        {"power_amp_coeff", &NetworkConfig::power_amp_coeff},
        {"caching_power_coeff", &NetworkConfig::caching_power_coeff},
        {"blockage_beta", &NetworkConfig::blockage_beta},
        {"pathloss_los", &NetworkConfig::pathloss_los},
        {"pathloss_nlos", &NetworkConfig::pathloss_nlos},
        {"nakagami_los", &NetworkConfig::nakagami_los},
        {"nakagami_nlos", &NetworkConfig::nakagami_nlos},
        {"beam_gain", &NetworkConfig::beam_gain},
        {"noise_power", &NetworkConfig::noise_power},
        {"area_side", &NetworkConfig::area_side},
        {"rng_seed", &NetworkConfig::rng_seed},
        {"min_distance", &NetworkConfig::min_distance},
        {"dp_bandwidth_unit", &NetworkConfig::dp_bandwidth_unit},
        {"wf_rc_use_waterfilling", &NetworkConfig::wf_rc_use_waterfilling},
    };
    return fields;
}

ValidatedConfig validate_config(const NetworkConfig& cfg) {
    std::vector<FieldViolation> v;
    auto require = [&](bool ok, const char* field, const char* reason) {
        if (!ok) v.push_back({field, reason});
    };

    require(cfg.num_aps >= 1, "num_aps", "must be >= 1");
    require(cfg.num_files >= 1, "num_files", "must be >= 1");
    require(positive(cfg.subchannel_bw), "subchannel_bw", "must be > 0");
    require(cfg.backhaul_capacity > 0.0 && !std::isnan(cfg.backhaul_capacity),
            "backhaul_capacity", "must be > 0");
    require(positive(cfg.cell_radius), "cell_radius", "must be > 0");
    require(std::isfinite(cfg.cache_size) && cfg.cache_size >= 0.0, "cache_size", "must be >= 0");
    require(positive(cfg.max_power), "max_power", "must be > 0");
    require(positive(cfg.circuit_power), "circuit_power", "must be > 0");
    require(positive(cfg.file_size), "file_size", "must be > 0");
    require(std::isfinite(cfg.zipf_delta) && cfg.zipf_delta >= 0.0, "zipf_delta", "must be >= 0");
    require(std::isfinite(cfg.ue_density) && cfg.ue_density >= 0.0, "ue_density", "must be >= 0");
    require(std::isfinite(cfg.power_amp_coeff) && cfg.power_amp_coeff >= 1.0,
            "power_amp_coeff", "must be >= 1");
    require(positive(cfg.caching_power_coeff), "caching_power_coeff", "must be > 0");
    require(positive(cfg.blockage_beta), "blockage_beta", "must be > 0");
    require(positive(cfg.pathloss_los), "pathloss_los", "must be > 0");
    require(positive(cfg.pathloss_nlos), "pathloss_nlos", "must be > 0");
    require(cfg.nakagami_los >= 2, "nakagami_los", "requires N_i > 1");
    require(cfg.nakagami_nlos >= 2, "nakagami_nlos", "requires N_i > 1");
    require(positive(cfg.beam_gain), "beam_gain", "must be > 0 (linear)");
    require(positive(cfg.noise_power), "noise_power", "must be > 0");
    require(positive(cfg.area_side), "area_side", "must be > 0");
    require(positive(cfg.min_distance), "min_distance", "must be > 0");
    require(positive(cfg.dp_bandwidth_unit), "dp_bandwidth_unit", "must be > 0");

    if (positive(cfg.max_power) && positive(cfg.circuit_power))
        require(cfg.max_power > cfg.circuit_power, "max_power", "P_M must exceed P_cc");
    if (positive(cfg.cell_radius) && positive(cfg.min_distance))
        require(cfg.min_distance < cfg.cell_radius, "min_distance", "must be < cell_radius");
    if (cfg.backhaul_capacity > 0.0 && positive(cfg.dp_bandwidth_unit))
        require(cfg.backhaul_capacity / cfg.dp_bandwidth_unit >= 100.0, "dp_bandwidth_unit",
                "must divide backhaul_capacity into at least 100 units");

    if (!v.empty()) throw ValidationError(std::move(v));
    return ValidatedConfig(cfg);
}

std::string config_to_json(const NetworkConfig& cfg) {
    json j = json::object();
    for (const auto& f : config_fields()) {
        std::visit([&](auto member) { j[f.name] = cfg.*member; }, f.ref);
    }
    return j.dump(2) + "\n";
}

NetworkConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError({{"<file>", std::string("not valid JSON: ") + e.what()}});
    }
    if (!j.is_object()) throw ValidationError({{"<file>", "top level must be an object"}});

    NetworkConfig cfg;
    std::vector<FieldViolation> v;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const FieldEntry* entry = nullptr;
        for (const auto& f : config_fields())
            if (f.name == it.key()) { entry = &f; break; }
        if (!entry) {
            v.push_back({it.key(), "unknown field"});
            continue;
        }
        try {
            std::visit([&](auto member) {
                using T = std::remove_reference_t<decltype(cfg.*member)>;
                cfg.*member = it.value().get<T>();
            }, entry->ref);
        } catch (const json::exception&) {
            v.push_back({it.key(), "wrong type"});
        }
    }
    if (!v.empty()) throw ValidationError(std::move(v));
    return cfg;
}

NetworkConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

void save_config_file(const NetworkConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config file: " + path);
    out << config_to_json(cfg);
}

void apply_override(NetworkConfig& cfg, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ValidationError({{assignment, "override must look like field=value"}});
    std::string key = assignment.substr(0, eq);
    std::string value = assignment.substr(eq + 1);

    for (const auto& f : config_fields()) {
        if (f.name != key) continue;
        try {
            std::visit([&](auto member) {
                using T = std::remove_reference_t<decltype(cfg.*member)>;
                if constexpr (std::is_same_v<T, bool>) {
                    if (value == "true" || value == "1") cfg.*member = true;
                    else if (value == "false" || value == "0") cfg.*member = false;
                    else throw std::invalid_argument("bool");
                } else if constexpr (std::is_same_v<T, int>) {
                    cfg.*member = std::stoi(value);
                } else if constexpr (std::is_same_v<T, uint64_t>) {
                    cfg.*member = std::stoull(value);
                } else {
                    cfg.*member = std::stod(value);
                }
            }, f.ref);
        } catch (const ValidationError&) {
            throw;
        } catch (const std::exception&) {
            throw ValidationError({{key, "cannot parse value '" + value + "'"}});
        }
        return;
    }
    throw ValidationError({{key, "unknown field"}});
}

uint64_t config_hash(const NetworkConfig& cfg) {
    const std::string text = config_to_json(cfg);
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string config_hash_hex(const NetworkConfig& cfg) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
    return buf;
}

}  // namespace fiwi
