#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fiwi/errors.hpp"

namespace fiwi {

// Every scalar parameter of the network model, SI units throughout
// (Hz, bit/s, bit, W, m, 1/m, 1/m^2, W/bit).
struct NetworkConfig {
    int num_aps = 16;                        // N
    int num_files = 1000;                    // J
    double subchannel_bw = 10e6;             // B, Hz per UE
    double backhaul_capacity = 15e9;         // C, bit/s on the feeder fiber
    double cell_radius = 100.0;              // D, m (analysis circle)
    double cache_size = 3.2e11;              // Q, bit (40 GB)
    double max_power = 8.0;                  // P_M, W
    double circuit_power = 2.0;              // P_cc, W
    double file_size = 8e8;                  // s, bit (100 MB)
    double zipf_delta = 0.8;                 // popularity skew
    double ue_density = 4e-4;                // lambda, 1/m^2
    double power_amp_coeff = 1.2;            // rho
    double caching_power_coeff = 6.25e-12;   // omega, W/bit
    double blockage_beta = 0.002;            // 1/m
    double pathloss_los = 2.0;               // alpha_L
    double pathloss_nlos = 4.0;              // alpha_N
    int nakagami_los = 3;                    // N_L
    int nakagami_nlos = 2;                   // N_N
    double beam_gain = 63.09573444801933;    // G, linear (18 dB main lobe)
    double noise_power = 3.1622776601683794e-13;  // sigma^2, W (-95 dBm over 10 MHz)
    double area_side = 700.0;                // m, simulation square
    uint64_t rng_seed = 1;
    double min_distance = 1.0;               // r_min, m
    double dp_bandwidth_unit = 1e6;          // bit/s per DP capacity unit
    bool wf_rc_use_waterfilling = false;     // WF-RC power rule switch

    // Usable per-AP power budget once the constant circuit draw is set aside.
    double usable_budget() const { return max_power - circuit_power; }

    bool operator==(const NetworkConfig&) const = default;
};

// A NetworkConfig that passed validate_config. Immutable; safe to share
// across concurrent trial workers.
class ValidatedConfig {
public:
    const NetworkConfig& get() const { return cfg_; }
    const NetworkConfig* operator->() const { return &cfg_; }

private:
    friend ValidatedConfig validate_config(const NetworkConfig&);
    explicit ValidatedConfig(const NetworkConfig& cfg) : cfg_(cfg) {}
    NetworkConfig cfg_;
};

// Checks every invariant and reports all violations at once via
// ValidationError. Idempotent: a valid config is returned unchanged.
ValidatedConfig validate_config(const NetworkConfig& cfg);
inline ValidatedConfig validate_config(const ValidatedConfig& cfg) { return cfg; }

// Field table shared by the file format and CLI overrides.
using FieldRef = std::variant<int NetworkConfig::*, double NetworkConfig::*,
                              uint64_t NetworkConfig::*, bool NetworkConfig::*>;

struct FieldEntry {
    std::string name;
    FieldRef ref;
};

const std::vector<FieldEntry>& config_fields();

// Flat key-value config file (JSON object, keys = field names, SI units).
// Missing keys keep their defaults; unknown keys are rejected.
NetworkConfig load_config_file(const std::string& path);
void save_config_file(const NetworkConfig& cfg, const std::string& path);
NetworkConfig parse_config_json(const std::string& text);
std::string config_to_json(const NetworkConfig& cfg);

// "field=value" override, applied after the file is read.
void apply_override(NetworkConfig& cfg, const std::string& assignment);

// FNV-1a over the canonical JSON form; stamped into every output so a
// CSV can be traced back to the exact parameter set.
uint64_t config_hash(const NetworkConfig& cfg);
std::string config_hash_hex(const NetworkConfig& cfg);

}  // namespace fiwi
