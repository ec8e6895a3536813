#include "isacsim/sensing.hpp"

#include "isacsim/rng.hpp"
#include "isacsim/units.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>
#include <numbers>

using namespace isacsim;
using namespace isacsim::sensing;

namespace {

// Independent long-double evaluation with different grouping.
long double eff_bw_sq_oracle(long double bandwidth, long double pulse_width) {
    const long double pi = std::numbers::pi_v<long double>;
    return (bandwidth / pulse_width) / (2.0L * pi * pi);
}

long double gain_oracle(long double rcs, long double wavelength, long double d,
                        long double kappa, long double tx, long double rx, int antennas,
                        long double noise) {
    const long double pi = std::numbers::pi_v<long double>;
    const long double pathloss = rcs * wavelength * wavelength /
                                 ((4.0L * pi) * (4.0L * pi) * (4.0L * pi) * d * d * d * d);
    return pathloss * kappa * kappa * kappa * kappa * (tx * rx) * (tx * rx) /
           (static_cast<long double>(antennas) * noise);
}

} // namespace

TEST_CASE("effective bandwidth squared") {
    const double t = 1.0;
    CHECK(effective_bandwidth_sq(2.0 * std::numbers::pi * std::numbers::pi * t, t) ==
          doctest::Approx(1.0).epsilon(1e-12));

    const double value = effective_bandwidth_sq(4.0e8, 2.5e-9);
    const double expected = static_cast<double>(eff_bw_sq_oracle(4.0e8L, 2.5e-9L));
    CHECK(std::abs(value - expected) <= 1e-9 * expected);
    CHECK(value == doctest::Approx(8.1057e15).epsilon(1e-4));

    CHECK(effective_bandwidth_sq(8.0e8, 2.5e-9) ==
          doctest::Approx(2.0 * value).epsilon(1e-12));

    CHECK_THROWS_AS(effective_bandwidth_sq(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(effective_bandwidth_sq(1.0, -1.0), std::domain_error);
}

TEST_CASE("sensing channel gain cancellation and scaling laws") {
    SensingChannel c;
    c.distance_m = 1.0;
    c.wavelength_m = 1.0;
    c.array_gain = 1.0;
    c.tx_beam_gain = 1.0;
    c.rx_beam_gain = 1.0;
    c.rx_antennas = 4;
    c.noise_power_w = 2.0;
    // rcs chosen so the pathloss variance equals antennas * noise.
    c.rcs_m2 = std::pow(4.0 * std::numbers::pi, 3) * 4.0 * 2.0;
    CHECK(channel_gain(c) == doctest::Approx(1.0).epsilon(1e-12));

    SensingChannel base = with_gain(SensingChannel{});
    SensingChannel doubled = base;
    doubled.distance_m *= 2.0;
    CHECK(channel_gain(doubled) == doctest::Approx(base.gain / 16.0).epsilon(1e-12));

    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        SensingChannel a = SensingChannel{};
        a.distance_m = rng.uniform(10.0, 500.0);
        a.wavelength_m = rng.uniform(0.005, 0.05);
        a.array_gain = rng.uniform(0.3, 1.5);
        a.noise_power_w = rng.uniform(1e-14, 1e-11);
        const double g = channel_gain(a);

        SensingChannel b = a;
        b.wavelength_m *= 3.0;
        CHECK(channel_gain(b) == doctest::Approx(9.0 * g).epsilon(1e-12));

        SensingChannel d = a;
        d.array_gain *= 2.0;
        CHECK(channel_gain(d) == doctest::Approx(16.0 * g).epsilon(1e-12));
    }

    SensingChannel zero = SensingChannel{};
    zero.distance_m = 0.0;
    CHECK_THROWS_AS(channel_gain(zero), std::domain_error);
}

TEST_CASE("sensing channel gain against an independent arithmetic chain") {
    // 28 GHz carrier, 100 m range, noise PSD -174 dBm/Hz over 400 MHz.
    SensingChannel c;
    c.distance_m = 100.0;
    c.wavelength_m = units::carrier_wavelength_m(28.0e9);
    c.rcs_m2 = 5.0;
    c.array_gain = 0.8;
    c.tx_beam_gain = 1.0;
    c.rx_beam_gain = 1.0;
    c.rx_antennas = 32;
    c.noise_power_w = units::dbm_per_hz_to_w_per_hz(-174.0) * 4.0e8;

    const double expected = static_cast<double>(
        gain_oracle(5.0L, static_cast<long double>(c.wavelength_m), 100.0L, 0.8L, 1.0L, 1.0L,
                    32, static_cast<long double>(c.noise_power_w)));
    const double got = channel_gain(c);
    CHECK(std::abs(got - expected) <= 1e-12 * expected);
    CHECK(got == doctest::Approx(2.32e-5).epsilon(0.01));
}

TEST_CASE("crb formulas") {
    CHECK(crb_distance(1.0, 1.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(crb_velocity(1.0e-12, 1.0, 1.0e-3, 1.0e-20) ==
          doctest::Approx(0.01).epsilon(1e-12));

    const double p = 0.37;
    const double g = 3.2e-5;
    const double bw_sq = 8.1e15;
    CHECK(crb_distance(2.0 * p, g, bw_sq, 1.0) ==
          doctest::Approx(0.5 * crb_distance(p, g, bw_sq, 1.0)).epsilon(1e-12));
    CHECK(crb_velocity(2.0 * p, g, 1e-3, 1e-20) ==
          doctest::Approx(0.5 * crb_velocity(p, g, 1e-3, 1e-20)).epsilon(1e-12));
    CHECK(crb_azimuth(2.0 * p, g, 1.3e-3, 1e-13) ==
          doctest::Approx(0.5 * crb_azimuth(p, g, 1.3e-3, 1e-13)).epsilon(1e-12));

    // Distance CRB falls linearly in bandwidth through the effective
    // bandwidth; velocity and azimuth never see it.
    const double crb1 = crb_distance(p, g, effective_bandwidth_sq(1e8, 2.5e-9), 1.0);
    const double crb2 = crb_distance(p, g, effective_bandwidth_sq(2e8, 2.5e-9), 1.0);
    CHECK(crb2 == doctest::Approx(0.5 * crb1).epsilon(1e-12));

    CHECK_THROWS_AS(crb_distance(0.0, 1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(crb_velocity(1.0, 0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("feasibility minima invert the ceilings") {
    WaveformParams waveform; // defaults: 2.5 ns, 1 ms, 0.076 deg
    SensingChannel channel = with_gain(SensingChannel{});
    CrbThresholds thresholds;
    thresholds.alpha = {0.01, 0.01, 0.01};

    const auto minima = feasibility_minima(channel, thresholds, waveform);
    CHECK(minima.power_min_w > 0.0);
    CHECK(minima.power_bandwidth_min > 0.0);

    // At the exact minima every binding CRB equals its ceiling.
    const double p = minima.power_min_w;
    const double b = minima.power_bandwidth_min / p;
    const double bw_sq = effective_bandwidth_sq(b, waveform.pulse_width_s);
    const double crb1 = crb_distance(p, channel.gain, bw_sq, thresholds.lambda[0]);
    const double crb2 = crb_velocity(p, channel.gain, waveform.effective_time_s,
                                     thresholds.lambda[1]);
    const double crb3 = crb_azimuth(p, channel.gain, waveform.beamwidth_rad,
                                    thresholds.lambda[2]);
    CHECK(std::abs(crb1 - thresholds.alpha[0]) <= 1e-12 * thresholds.alpha[0]);
    const double binding = std::max(crb2, crb3);
    CHECK(std::abs(binding - 0.01) <= 1e-12 * 0.01);
    CHECK(crb2 <= 0.01 * (1.0 + 1e-12));
    CHECK(crb3 <= 0.01 * (1.0 + 1e-12));

    // A slightly richer allocation satisfies everything.
    CHECK(crb_distance(p * 1.01, channel.gain, bw_sq, thresholds.lambda[0]) <= 0.01);

    CrbThresholds relaxed;
    const double inf = std::numeric_limits<double>::infinity();
    relaxed.alpha = {inf, inf, inf};
    const auto vac = feasibility_minima(channel, relaxed, waveform);
    CHECK(vac.power_min_w == 0.0);
    CHECK(vac.power_bandwidth_min == 0.0);
}

TEST_CASE("velocity constraint inversion example") {
    WaveformParams waveform;
    waveform.effective_time_s = 1.0e-3;
    SensingChannel channel;
    channel.gain = 1.0;
    CrbThresholds thresholds;
    thresholds.alpha = {std::numeric_limits<double>::infinity(), 0.01,
                        std::numeric_limits<double>::infinity()};
    thresholds.lambda = {1.0, 1.0e-20, 1.0e-13};
    const auto minima = feasibility_minima(channel, thresholds, waveform);
    CHECK(minima.power_min_w == doctest::Approx(1.0e-12).epsilon(1e-12));
}
