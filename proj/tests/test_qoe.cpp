#include "isacsim/qoe.hpp"

#include "isacsim/units.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>

using namespace isacsim;
using namespace isacsim::qoe;

TEST_CASE("transmission rate") {
    // B = 1 Hz with unit per-Hz SNR: log2(2) = 1 bit/s.
    CHECK(transmission_rate(1.0, 1.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(transmission_rate(1.0e6, 0.0, 1e-9, 1e-20) == 0.0);
    CHECK(transmission_rate(0.0, 5.0, 1e-9, 1e-20) == 0.0);

    // SNR per Hz chosen so 1 + x = 1024: rate = B * 10.
    const double b = 1.0e6;
    const double noise = 1.0e-20;
    const double p_gain = 1023.0 * b * noise;
    CHECK(transmission_rate(b, 1.0, p_gain, noise) == doctest::Approx(1.0e7).epsilon(1e-12));

    // Monotone in power and bandwidth.
    double prev = 0.0;
    for (double p = 0.5; p <= 8.0; p *= 2.0) {
        const double r = transmission_rate(1e6, p, 1e-10, 1e-20);
        CHECK(r > prev);
        prev = r;
    }
    prev = 0.0;
    for (double bw = 1e5; bw <= 1.6e6; bw *= 2.0) {
        const double r = transmission_rate(bw, 1.0, 1e-10, 1e-20);
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("content quality") {
    CHECK(content_quality(0.5, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(content_quality(1.0, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(content_quality(1.0e6, 2.0) > 0.999999);
    CHECK_THROWS_AS(content_quality(0.0, 2.0), std::domain_error);
}

TEST_CASE("service latency") {
    ServiceDemand d;
    d.file_size_bits = units::mb_to_bits(1.0);
    d.cycles_per_bit = units::cycles_per_mb_to_per_bit(1.0e7);
    CHECK(service_latency(d, 1.0e9, 8.0e6) == doctest::Approx(1.01).epsilon(1e-12));

    // Homogeneity: doubling both resources halves the latency.
    const double l1 = service_latency(d, 1.0e9, 8.0e6);
    const double l2 = service_latency(d, 2.0e9, 1.6e7);
    CHECK(l2 == doctest::Approx(0.5 * l1).epsilon(1e-12));

    CHECK(std::isinf(service_latency(d, 0.0, 8.0e6)));
    CHECK(std::isinf(service_latency(d, 1.0e9, 0.0)));

    ServiceDemand tenth;
    tenth.file_size_bits = 1.0;
    tenth.cycles_per_bit = 0.1;
    CHECK(service_latency(tenth, 1.0, 10.0) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("impact function") {
    UserContext mid{0.5, 0.5, 1.0, 1.0};
    CHECK(impact(mid) == doctest::Approx(0.85).epsilon(1e-12));

    UserContext zero{0.0, 0.0, 1.0, 1.0};
    const double at_zero = 1.0 - 0.3 / (1.0 + std::exp(5.0));
    CHECK(impact(zero) == doctest::Approx(at_zero).epsilon(1e-12));
    CHECK(impact(zero) == doctest::Approx(0.99799214).epsilon(1e-6));

    UserContext one{1.0, 1.0, 1.0, 1.0};
    const double at_one = 1.0 - 0.3 / (1.0 + std::exp(-5.0));
    CHECK(impact(one) == doctest::Approx(at_one).epsilon(1e-12));
    CHECK(impact(one) == doctest::Approx(0.70200785).epsilon(1e-6));

    // Clipping keeps values above the cap at the cap.
    UserContext over{10.0, 10.0, 1.0, 1.0};
    CHECK(impact(over) == doctest::Approx(at_one).epsilon(1e-12));

    // Strictly decreasing in the normalized sum, range within (0.7, 1).
    double prev = 1.1;
    for (double s = 0.0; s <= 2.0; s += 0.05) {
        UserContext c{s / 2.0, s / 2.0, 1.0, 1.0};
        const double v = impact(c);
        CHECK(v < prev);
        CHECK(v > 0.7);
        CHECK(v < 1.0);
        prev = v;
    }
}

TEST_CASE("qos families") {
    ServiceDemand d;
    d.file_size_bits = units::mb_to_bits(1.0);
    d.cycles_per_bit = units::cycles_per_mb_to_per_bit(1.0e7);

    QoeModelSpec linear;
    linear.structure = QosStructure::Linear;
    linear.omega = {1.0, 1.0, 0.0};
    // latency = 0.2 s: pick compute/rate so both halves are 0.1 s.
    const double compute = 1.0e7 / 0.1;
    const double rate = units::mb_to_bits(1.0) / 0.1;
    CHECK(qos(linear, d, compute, rate) ==
          doctest::Approx(2.0 / 3.0 - 0.2).epsilon(1e-12));

    QoeModelSpec no_latency = linear;
    no_latency.omega = {0.7, 0.0, 0.0};
    CHECK(qos(no_latency, d, compute, rate) ==
          doctest::Approx(0.7 * 2.0 / 3.0).epsilon(1e-12));

    QoeModelSpec ratio;
    ratio.structure = QosStructure::Ratio;
    ratio.omega = {0.0, 0.0, 1.0};
    ratio.quality_shape = 2.0;
    // quality 0.5 at 0.5 MB (unit shape-size product), latency 0.5 s.
    ServiceDemand half;
    half.file_size_bits = units::mb_to_bits(0.5);
    half.cycles_per_bit = units::cycles_per_mb_to_per_bit(1.0e7);
    const double c2 = 0.5e7 / 0.25;
    const double r2 = units::mb_to_bits(0.5) / 0.25;
    CHECK(qos(ratio, half, c2, r2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("qoe composition") {
    QoeModelSpec spec;
    spec.omega = {1.0, 1.0, 0.0};
    UserContext ctx{0.5, 0.5, 1.0, 1.0};
    ServiceDemand d;
    d.file_size_bits = units::mb_to_bits(2.0);
    d.cycles_per_bit = 1.25;
    Allocation a{1.0e6, 0.5, 1.0e9};
    const double gain = 1e-10;
    const double noise = 1e-20;

    const double rate = transmission_rate(a.bandwidth_hz, a.power_w, gain, noise);
    const double expected = qos(spec, d, a.compute_cps, rate) * impact(ctx);
    CHECK(qoe_value(spec, ctx, d, a, gain, noise) ==
          doctest::Approx(expected).epsilon(1e-12));

    // Zero qos annihilates the product for any context.
    QoeModelSpec zero;
    zero.omega = {0.0, 0.0, 0.0};
    CHECK(qoe_value(zero, ctx, d, a, gain, noise) == 0.0);

    // Monotone in compute and rate for both families.
    QoeModelSpec ratio;
    ratio.structure = QosStructure::Ratio;
    ratio.omega = {0.0, 0.0, 2.0};
    double prev_lin = -std::numeric_limits<double>::infinity();
    double prev_ratio = -std::numeric_limits<double>::infinity();
    for (double c = 1e8; c <= 1.7e9; c *= 2.0) {
        const double r = transmission_rate(1e6, 1.0, gain, noise);
        const double ql = qos(spec, d, c, r);
        const double qr = qos(ratio, d, c, r);
        CHECK(ql > prev_lin);
        CHECK(qr > prev_ratio);
        prev_lin = ql;
        prev_ratio = qr;
    }
}
