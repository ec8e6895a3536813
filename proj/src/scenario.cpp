#include "isacsim/scenario.hpp"

#include "isacsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <ostream>
#include <stdexcept>

namespace isacsim::scenario {

double environmental_complexity(double velocity_kmh, double velocity_cap_kmh) {
    if (velocity_kmh < 0.0) throw std::domain_error("environmental_complexity: negative velocity");
    if (!(velocity_cap_kmh > 0.0)) {
        throw std::domain_error("environmental_complexity: cap must be positive");
    }
    if (velocity_kmh > velocity_cap_kmh) {
        static bool warned = false;
        if (!warned) {
            std::cerr << "warning: velocity above cap, clamping for complexity model\n";
            warned = true;
        }
        velocity_kmh = velocity_cap_kmh;
    }
    const double rho = velocity_cap_kmh / 1.96;
    const double v2 = velocity_kmh * velocity_kmh;
    const double cap2 = velocity_cap_kmh * velocity_cap_kmh;
    return std::exp((v2 - cap2) / (2.0 * rho * rho));
}

double comm_channel_gain(double distance_m, double carrier_ghz) {
    if (!(distance_m > 0.0)) throw std::domain_error("comm_channel_gain: distance must be positive");
    if (!(carrier_ghz > 0.0)) throw std::domain_error("comm_channel_gain: carrier must be positive");
    const double pathloss_db =
        32.4 + 20.0 * std::log10(distance_m) + 20.0 * std::log10(carrier_ghz);
    return std::pow(10.0, -pathloss_db / 10.0);
}

double mos_oracle(MosPrinciple principle, double latency_s, double quality, Rng& rng) {
    if (latency_s < 0.0) throw std::domain_error("mos_oracle: negative latency");
    if (!(quality > 0.0) || !(quality < 1.0)) {
        throw std::domain_error("mos_oracle: quality outside (0,1)");
    }
    double mean = 0.0;
    double variance = 1.0;
    switch (principle) {
        case MosPrinciple::Latency:
            mean = 5.0 - 0.4 * latency_s;
            variance = 8.0;
            break;
        case MosPrinciple::Quality:
            mean = 1.0 + 4.0 * quality;
            variance = 1.0;
            break;
        case MosPrinciple::Combined:
            mean = 1.0 + 4.0 * quality - 0.4 * latency_s;
            variance = 0.8;
            break;
    }
    return stats::sample_truncated_normal(rng, mean, std::sqrt(variance), 1.0, 5.0);
}

namespace {

// Swipe rates per video category; categories with faster swiping produce
// higher behavioral dynamics.
double category_swipe_rate(const SimConfig& config, int category, int category_count) {
    const double t = category_count > 1
                         ? static_cast<double>(category) / (category_count - 1)
                         : 0.0;
    return config.swipe_rate_min_hz +
           t * (config.swipe_rate_max_hz - config.swipe_rate_min_hz);
}

// Knuth-style Poisson sampler; deterministic with our uniform stream.
int sample_poisson(Rng& rng, double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    int count = 0;
    double product = rng.uniform();
    while (product > limit) {
        ++count;
        product *= rng.uniform();
    }
    return count;
}

MosPrinciple sample_principle(const SimConfig& config, Rng& rng) {
    const double total = config.principle_weights[0] + config.principle_weights[1] +
                         config.principle_weights[2];
    if (!(total > 0.0)) return MosPrinciple::Latency;
    double u = rng.uniform() * total;
    for (int i = 0; i < 3; ++i) {
        if (u < config.principle_weights[static_cast<std::size_t>(i)]) {
            return static_cast<MosPrinciple>(i);
        }
        u -= config.principle_weights[static_cast<std::size_t>(i)];
    }
    return MosPrinciple::Combined;
}

struct Waypoint {
    double x = 0.0, y = 0.0;
};

Waypoint random_point(const SimConfig& config, Rng& rng) {
    const double cx = 0.5 * (config.bs_a_m[0] + config.bs_b_m[0]);
    const double cy = 0.5 * (config.bs_a_m[1] + config.bs_b_m[1]);
    return {cx + rng.uniform(-config.area_half_extent_m, config.area_half_extent_m),
            cy + rng.uniform(-config.area_half_extent_m, config.area_half_extent_m)};
}

} // namespace

std::vector<UserProfile> generate_users(const SimConfig& config, Rng rng) {
    if (config.users < 1) throw std::invalid_argument("generate_users: need at least one user");
    constexpr int kCategories = 8;
    std::vector<UserProfile> users(static_cast<std::size_t>(config.users));
    for (int i = 0; i < config.users; ++i) {
        UserProfile& u = users[static_cast<std::size_t>(i)];
        u.id = i;
        u.velocity_kmh = rng.uniform(config.velocity_min_kmh, config.velocity_max_kmh);
        u.category = static_cast<int>(rng.uniform_index(kCategories));
        u.swipe_rate_hz = category_swipe_rate(config, u.category, kCategories);
        u.principle = sample_principle(config, rng);
        u.env_complexity = environmental_complexity(u.velocity_kmh, config.velocity_cap_kmh);
    }
    return users;
}

double sensing_noise_power(const SimConfig& config) {
    return config.noise_psd_w_per_hz * config.bandwidth_total_hz;
}

sensing::SensingChannel sensing_channel_at(const SimConfig& config, const SlotUserState& state) {
    sensing::SensingChannel channel;
    channel.distance_m = state.distance_m;
    channel.wavelength_m = units::carrier_wavelength_m(
        config.carrier_hz[static_cast<std::size_t>(state.serving_bs)]);
    channel.rcs_m2 = config.rcs_m2;
    channel.array_gain = config.array_gain;
    channel.tx_beam_gain = config.tx_beam_gain;
    channel.rx_beam_gain = config.rx_beam_gain;
    channel.rx_antennas = config.rx_antennas;
    channel.noise_power_w = sensing_noise_power(config);
    channel.gain = state.sensing_gain > 0.0 ? state.sensing_gain
                                            : sensing::channel_gain(channel);
    return channel;
}

EpisodeData generate_episode(const SimConfig& config, const std::vector<UserProfile>& users,
                             std::uint64_t seed, int episode) {
    EpisodeData data;
    const int slots = config.slots_per_episode;
    data.slots.assign(static_cast<std::size_t>(slots), {});

    const std::uint64_t episode_salt =
        Rng::splitmix(static_cast<std::uint64_t>(episode + 2) * 0x9e3779b97f4a7c15ULL);
    Rng base(Rng::splitmix(seed ^ episode_salt));
    std::vector<Rng> streams;
    streams.reserve(users.size());
    for (std::size_t u = 0; u < users.size(); ++u) {
        streams.push_back(base.fork(1000 + u));
    }

    struct Mobile {
        Waypoint position, target;
        double behavior = 0.0;
    };
    std::vector<Mobile> mobiles(users.size());
    for (std::size_t u = 0; u < users.size(); ++u) {
        mobiles[u].position = random_point(config, streams[u]);
        mobiles[u].target = random_point(config, streams[u]);
    }

    for (int n = 0; n < slots; ++n) {
        auto& row = data.slots[static_cast<std::size_t>(n)];
        row.resize(users.size());
        for (std::size_t u = 0; u < users.size(); ++u) {
            Mobile& m = mobiles[u];
            Rng& rng = streams[u];

            // Straight-line waypoint motion at the user's fixed speed.
            double step = units::kmh_to_mps(users[u].velocity_kmh) * config.slot_duration_s;
            while (step > 0.0) {
                const double dx = m.target.x - m.position.x;
                const double dy = m.target.y - m.position.y;
                const double dist = std::hypot(dx, dy);
                if (dist <= step) {
                    m.position = m.target;
                    m.target = random_point(config, rng);
                    step -= dist;
                    if (dist == 0.0) break;
                } else {
                    m.position.x += step * dx / dist;
                    m.position.y += step * dy / dist;
                    step = 0.0;
                }
            }

            SlotUserState& s = row[u];
            s.position_x_m = m.position.x;
            s.position_y_m = m.position.y;
            const double da = std::hypot(m.position.x - config.bs_a_m[0],
                                         m.position.y - config.bs_a_m[1]);
            const double db = std::hypot(m.position.x - config.bs_b_m[0],
                                         m.position.y - config.bs_b_m[1]);
            s.serving_bs = da <= db ? 0 : 1;
            s.distance_m = std::max(1.0, std::min(da, db));
            s.comm_gain = comm_channel_gain(
                s.distance_m, config.carrier_hz[static_cast<std::size_t>(s.serving_bs)] / 1e9);
            s.sensing_gain = sensing::channel_gain(sensing::SensingChannel{
                s.distance_m,
                units::carrier_wavelength_m(config.carrier_hz[static_cast<std::size_t>(s.serving_bs)]),
                config.rcs_m2, config.array_gain, config.tx_beam_gain, config.rx_beam_gain,
                config.rx_antennas, sensing_noise_power(config), 0.0});

            s.file_size_mb = rng.log_uniform(config.file_size_min_mb, config.file_size_max_mb);

            const int swipes = sample_poisson(rng, users[u].swipe_rate_hz * config.slot_duration_s);
            m.behavior = (1.0 - config.behavior_smoothing) * m.behavior +
                         config.behavior_smoothing * static_cast<double>(swipes);
            s.behavior_dynamics = m.behavior;
        }
    }
    return data;
}

double calibrate_behavior_max(const SimConfig& config, const std::vector<UserProfile>& users,
                              std::uint64_t seed) {
    const EpisodeData warmup = generate_episode(config, users, seed, -1);
    std::vector<double> values;
    values.reserve(warmup.slots.size() * users.size());
    for (const auto& row : warmup.slots) {
        for (const auto& s : row) values.push_back(s.behavior_dynamics);
    }
    if (values.empty()) return 1.0;
    std::sort(values.begin(), values.end());
    const auto index = static_cast<std::size_t>(0.99 * (values.size() - 1));
    return std::max(values[index], 1e-6);
}

void write_users_csv(std::ostream& out, const std::vector<UserProfile>& users) {
    out << "id,velocity_kmh,category,swipe_rate_hz,mos_principle,env_complexity\n";
    char buf[160];
    for (const auto& u : users) {
        std::snprintf(buf, sizeof buf, "%d,%.9g,%d,%.9g,%d,%.9g\n", u.id, u.velocity_kmh,
                      u.category, u.swipe_rate_hz, static_cast<int>(u.principle),
                      u.env_complexity);
        out << buf;
    }
}

void write_slots_csv(std::ostream& out, const EpisodeData& episode) {
    out << "slot,user,x_m,y_m,distance_m,serving_bs,comm_gain,sensing_gain,file_size_mb,"
           "behavior\n";
    char buf[320];
    for (std::size_t n = 0; n < episode.slots.size(); ++n) {
        const auto& row = episode.slots[n];
        for (std::size_t u = 0; u < row.size(); ++u) {
            const SlotUserState& s = row[u];
            std::snprintf(buf, sizeof buf, "%zu,%zu,%.9g,%.9g,%.9g,%d,%.12g,%.12g,%.9g,%.9g\n",
                          n, u, s.position_x_m, s.position_y_m, s.distance_m, s.serving_bs,
                          s.comm_gain, s.sensing_gain, s.file_size_mb, s.behavior_dynamics);
            out << buf;
        }
    }
}

} // namespace isacsim::scenario
