#include "isacsim/scenario.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

using namespace isacsim;
using namespace isacsim::scenario;

TEST_CASE("environmental complexity") {
    CHECK(environmental_complexity(80.0, 80.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(environmental_complexity(0.0, 80.0) ==
          doctest::Approx(std::exp(-1.96 * 1.96 / 2.0)).epsilon(1e-12));
    CHECK(environmental_complexity(0.0, 80.0) == doctest::Approx(0.146489).epsilon(1e-4));

    double prev = 0.0;
    for (double v = 0.0; v <= 80.0; v += 5.0) {
        const double e = environmental_complexity(v, 80.0);
        CHECK(e > prev);
        CHECK(e <= 1.0);
        prev = e;
    }

    // Above the cap: clamped to the cap's value.
    CHECK(environmental_complexity(120.0, 80.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(environmental_complexity(-1.0, 80.0), std::domain_error);
}

TEST_CASE("communication pathloss") {
    // 1 m at 1 GHz leaves only the constant term.
    CHECK(comm_channel_gain(1.0, 1.0) ==
          doctest::Approx(std::pow(10.0, -3.24)).epsilon(1e-12));

    // +20 dB per distance decade.
    const double g1 = comm_channel_gain(10.0, 2.0);
    const double g2 = comm_channel_gain(100.0, 2.0);
    CHECK(g1 / g2 == doctest::Approx(100.0).epsilon(1e-9));

    // 100 m at 28 GHz: 32.4 + 40 + 28.94 dB.
    const double expected_db = 32.4 + 40.0 + 20.0 * std::log10(28.0);
    CHECK(comm_channel_gain(100.0, 28.0) ==
          doctest::Approx(std::pow(10.0, -expected_db / 10.0)).epsilon(1e-9));
    CHECK_THROWS_AS(comm_channel_gain(0.0, 28.0), std::domain_error);
}

TEST_CASE("mos oracle sampling") {
    Rng rng(100);
    // All samples live on [1, 5].
    for (int i = 0; i < 2000; ++i) {
        const double m = mos_oracle(MosPrinciple::Combined, rng.uniform(0.0, 5.0),
                                    rng.uniform(0.1, 0.9), rng);
        CHECK(m >= 1.0);
        CHECK(m <= 5.0);
    }

    // Quality principle: sample mean matches the analytic truncated mean.
    const double q = 0.6;
    const double mean = 1.0 + 4.0 * q;
    const double expected = stats::truncated_normal_mean(mean, 1.0, 1.0, 5.0);
    double acc = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) acc += mos_oracle(MosPrinciple::Quality, 0.0, q, rng);
    CHECK(std::abs(acc / draws - expected) <= 0.05);

    // Latency principle at zero latency: upper truncation pulls the mean
    // below the untruncated value of 5.
    acc = 0.0;
    for (int i = 0; i < draws; ++i) acc += mos_oracle(MosPrinciple::Latency, 0.0, 0.5, rng);
    CHECK(acc / draws < 5.0);
    CHECK(acc / draws > 3.0);

    CHECK_THROWS_AS(mos_oracle(MosPrinciple::Quality, 0.0, 1.5, rng), std::domain_error);
}

TEST_CASE("scenario generation is deterministic and respects bounds") {
    SimConfig cfg;
    cfg.users = 6;
    cfg.slots_per_episode = 25;

    const auto users_a = generate_users(cfg, Rng(42));
    const auto users_b = generate_users(cfg, Rng(42));
    REQUIRE(users_a.size() == 6);
    for (std::size_t i = 0; i < users_a.size(); ++i) {
        CHECK(users_a[i].velocity_kmh == users_b[i].velocity_kmh);
        CHECK(users_a[i].category == users_b[i].category);
        CHECK(users_a[i].velocity_kmh >= cfg.velocity_min_kmh);
        CHECK(users_a[i].velocity_kmh <= cfg.velocity_max_kmh);
        CHECK(users_a[i].env_complexity > 0.0);
        CHECK(users_a[i].env_complexity <= 1.0);
    }

    const EpisodeData ep_a = generate_episode(cfg, users_a, 7, 0);
    const EpisodeData ep_b = generate_episode(cfg, users_a, 7, 0);
    const EpisodeData ep_c = generate_episode(cfg, users_a, 7, 1);
    REQUIRE(ep_a.slots.size() == 25);
    bool any_differs = false;
    for (std::size_t n = 0; n < ep_a.slots.size(); ++n) {
        for (std::size_t u = 0; u < users_a.size(); ++u) {
            CHECK(ep_a.slots[n][u].distance_m == ep_b.slots[n][u].distance_m);
            CHECK(ep_a.slots[n][u].file_size_mb == ep_b.slots[n][u].file_size_mb);
            CHECK(ep_a.slots[n][u].file_size_mb >= cfg.file_size_min_mb);
            CHECK(ep_a.slots[n][u].file_size_mb <= cfg.file_size_max_mb);
            CHECK(ep_a.slots[n][u].comm_gain > 0.0);
            CHECK(ep_a.slots[n][u].sensing_gain > 0.0);
            any_differs = any_differs ||
                          ep_a.slots[n][u].distance_m != ep_c.slots[n][u].distance_m;
        }
    }
    CHECK(any_differs); // different episodes move differently

    // Single-user population works.
    SimConfig solo = cfg;
    solo.users = 1;
    const auto one = generate_users(solo, Rng(1));
    CHECK(one.size() == 1);
}

TEST_CASE("behavior ceiling calibration") {
    SimConfig cfg;
    cfg.users = 5;
    cfg.slots_per_episode = 50;
    const auto users = generate_users(cfg, Rng(3));
    const double ceiling = calibrate_behavior_max(cfg, users, 3);
    CHECK(ceiling > 0.0);

    // The warmup trace mostly sits below the ceiling.
    const EpisodeData warmup = generate_episode(cfg, users, 3, -1);
    int above = 0, total = 0;
    for (const auto& row : warmup.slots) {
        for (const auto& s : row) {
            ++total;
            if (s.behavior_dynamics > ceiling) ++above;
        }
    }
    CHECK(above <= total / 50);
}

TEST_CASE("scenario csv export") {
    SimConfig cfg;
    cfg.users = 3;
    cfg.slots_per_episode = 4;
    const auto users = generate_users(cfg, Rng(11));
    const EpisodeData ep = generate_episode(cfg, users, 11, 0);

    std::ostringstream users_csv, slots_csv;
    write_users_csv(users_csv, users);
    write_slots_csv(slots_csv, ep);

    CHECK(users_csv.str().find("id,velocity_kmh") == 0);
    CHECK(slots_csv.str().find("slot,user") == 0);
    // One header plus one row per user / per slot-user pair.
    int lines = 0;
    for (const char c : users_csv.str()) lines += c == '\n';
    CHECK(lines == 4);
    lines = 0;
    for (const char c : slots_csv.str()) lines += c == '\n';
    CHECK(lines == 13);
}
