#ifndef ISACSIM_CONFIG_HPP
#define ISACSIM_CONFIG_HPP

#include "isacsim/da.hpp"
#include "isacsim/rl.hpp"
#include "isacsim/sca.hpp"
#include "isacsim/sensing.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace isacsim {

// Full run configuration. Defaults are the desk-scale preset; the
// paper-scale values live in configs/paper.cfg.
struct SimConfig {
    // [scenario]
    int users = 8;
    int episodes = 60;
    int slots_per_episode = 40;
    double slot_duration_s = 1.0;
    double bandwidth_total_hz = 40.0e6;
    double power_total_w = 10.0;
    double compute_total_cps = 3.0e9;
    std::array<double, 2> carrier_hz{28.0e9, 39.0e9};
    std::array<double, 2> bs_a_m{0.0, 0.0};
    std::array<double, 2> bs_b_m{200.0, 0.0};
    double area_half_extent_m = 150.0;
    double velocity_min_kmh = 30.0;
    double velocity_max_kmh = 80.0;
    double velocity_cap_kmh = 80.0; // v_max of the complexity model
    double noise_psd_w_per_hz = 3.9810717055349565e-21; // -174 dBm/Hz
    double file_size_min_mb = 0.5;
    double file_size_max_mb = 8.0;
    double compute_density_cycles_per_mb = 1.0e7;
    double quality_shape = 2.0;
    // Mixing weights of the three MOS principles (latency, quality, combined).
    std::array<double, 3> principle_weights{1.0, 1.0, 1.0};
    double swipe_rate_min_hz = 0.2;
    double swipe_rate_max_hz = 2.0;
    double behavior_smoothing = 0.3;

    // [sensing]
    sensing::WaveformParams waveform;
    sensing::CrbThresholds thresholds{{0.01, 1.0e-5, 0.01}, {1.0, 1.0e-20, 1.0e-13}};
    double rcs_m2 = 5.0;
    double array_gain = 0.8;
    double tx_beam_gain = 1.0;
    double rx_beam_gain = 1.0;
    int rx_antennas = 32;

    // [collection]
    agent::DaConfig da;
    double collection_spectral_eff = 1.0; // bits/s per Hz of charged overhead

    // [rl]
    rl::AgentConfig agent;
    rl::StateRanges state_ranges{1.0, 1.0, 5.0e-3, 1.0e-9, 0.5, 8.0, 20.0};

    // [solver]
    sca::SolverConfig solver;

    // [run]
    int eval_episodes = 5;
    int sweep_seeds = 3;
    bool sweep_retrain = false;
    int greedy_quanta = 100;
    int checkpoint_interval_episodes = 20;
    std::uint64_t seed = 1;
};

// Parses the flat key-value config format ("key = value [unit]" lines under
// [section] headers). Unknown keys or malformed quantities raise
// std::runtime_error with the offending line. Missing keys keep defaults.
SimConfig load_config(const std::string& path);
SimConfig parse_config(const std::string& text);

// Quantity parser used by the config loader: a number followed by an
// optional unit suffix (Hz/kHz/MHz/GHz, s/ms/us/ns, W/mW, GCyc/MCyc, kmh,
// dBmHz, MB, deg, bits). Returns the value in the field's canonical unit.
double parse_quantity(const std::string& text);

} // namespace isacsim

#endif
