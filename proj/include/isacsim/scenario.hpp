#ifndef ISACSIM_SCENARIO_HPP
#define ISACSIM_SCENARIO_HPP

#include "isacsim/config.hpp"
#include "isacsim/rng.hpp"
#include "isacsim/sensing.hpp"

#include <iosfwd>
#include <vector>

namespace isacsim::scenario {

enum class MosPrinciple { Latency = 0, Quality = 1, Combined = 2 };

struct UserProfile {
    int id = 0;
    double velocity_kmh = 0.0;
    int category = 0; // video category, drives the swipe rate
    double swipe_rate_hz = 0.0;
    MosPrinciple principle = MosPrinciple::Latency;
    double env_complexity = 0.0; // fixed per user (velocity-driven)
};

struct SlotUserState {
    double position_x_m = 0.0;
    double position_y_m = 0.0;
    double distance_m = 0.0;
    int serving_bs = 0;
    double comm_gain = 0.0;    // |h|^2
    double sensing_gain = 0.0; // dimensionless
    double file_size_mb = 0.0;
    double behavior_dynamics = 0.0; // smoothed swipe count
};

// One episode's exogenous trajectory: slots x users.
struct EpisodeData {
    std::vector<std::vector<SlotUserState>> slots;
};

struct Scenario {
    std::vector<UserProfile> users;
    double behavior_max = 1.0; // normalization ceiling for H (calibrated)
    double env_max = 1.0;
};

// Velocity-driven environmental complexity in (0, 1]; velocities above the
// cap are clamped (with a one-time warning on stderr).
double environmental_complexity(double velocity_kmh, double velocity_cap_kmh);

// Pathloss-based |h|^2 from distance and carrier frequency in GHz.
double comm_channel_gain(double distance_m, double carrier_ghz);

// Truncated-normal MOS draw on [1, 5] under the given principle.
double mos_oracle(MosPrinciple principle, double latency_s, double quality, Rng& rng);

// Fixed per-run user population (profiles depend on the seed only).
std::vector<UserProfile> generate_users(const SimConfig& config, Rng rng);

// Exogenous per-slot states for one episode: waypoint motion, channel
// gains, file sizes and behavior dynamics. Deterministic in
// (config, seed, episode).
EpisodeData generate_episode(const SimConfig& config, const std::vector<UserProfile>& users,
                             std::uint64_t seed, int episode);

// 99th percentile of the behavior-dynamics trace over one warmup episode.
double calibrate_behavior_max(const SimConfig& config, const std::vector<UserProfile>& users,
                              std::uint64_t seed);

// The sigma_r^2 entering the sensing gain: noise PSD integrated over the
// system bandwidth.
double sensing_noise_power(const SimConfig& config);

sensing::SensingChannel sensing_channel_at(const SimConfig& config, const SlotUserState& state);

// CSV exports backing the gen-scenario subcommand.
void write_users_csv(std::ostream& out, const std::vector<UserProfile>& users);
void write_slots_csv(std::ostream& out, const EpisodeData& episode);

} // namespace isacsim::scenario

#endif
