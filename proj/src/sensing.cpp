#include "isacsim/sensing.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isacsim::sensing {

namespace {
constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::domain_error(std::string("sensing: ") + what + " must be positive");
}
} // namespace

double effective_bandwidth_sq(double bandwidth_hz, double pulse_width_s) {
    require_positive(bandwidth_hz, "bandwidth");
    require_positive(pulse_width_s, "pulse width");
    return bandwidth_hz / (2.0 * kPi * kPi * pulse_width_s);
}

double pathloss_variance(double rcs_m2, double wavelength_m, double distance_m) {
    require_positive(distance_m, "distance");
    require_positive(wavelength_m, "wavelength");
    const double four_pi_cubed = std::pow(4.0 * kPi, 3);
    const double d2 = distance_m * distance_m;
    return rcs_m2 * wavelength_m * wavelength_m / (four_pi_cubed * d2 * d2);
}

double channel_gain(const SensingChannel& c) {
    require_positive(c.distance_m, "distance");
    require_positive(c.wavelength_m, "wavelength");
    require_positive(c.noise_power_w, "noise power");
    if (c.rx_antennas <= 0) throw std::domain_error("sensing: rx antenna count must be positive");
    const double sigma2 = pathloss_variance(c.rcs_m2, c.wavelength_m, c.distance_m);
    const double kappa2 = c.array_gain * c.array_gain;
    const double eps = c.tx_beam_gain * c.tx_beam_gain * c.rx_beam_gain * c.rx_beam_gain;
    return sigma2 * kappa2 * kappa2 * eps / (static_cast<double>(c.rx_antennas) * c.noise_power_w);
}

SensingChannel with_gain(SensingChannel channel) {
    channel.gain = channel_gain(channel);
    return channel;
}

namespace {
double crb_common(double power_w, double gain, const char* which) {
    if (!(power_w > 0.0) || !(gain > 0.0)) {
        throw std::domain_error(std::string("sensing: ") + which +
                                " CRB is unbounded for non-positive power or gain");
    }
    return power_w * gain * gain;
}
} // namespace

double crb_distance(double power_w, double gain, double eff_bandwidth_sq, double lambda1) {
    require_positive(eff_bandwidth_sq, "effective bandwidth");
    require_positive(lambda1, "lambda1");
    return lambda1 / (crb_common(power_w, gain, "distance") * eff_bandwidth_sq);
}

double crb_velocity(double power_w, double gain, double effective_time_s, double lambda2) {
    require_positive(effective_time_s, "effective time");
    require_positive(lambda2, "lambda2");
    return lambda2 / (crb_common(power_w, gain, "velocity") * effective_time_s * effective_time_s);
}

double crb_azimuth(double power_w, double gain, double beamwidth_rad, double lambda3) {
    require_positive(beamwidth_rad, "beamwidth");
    require_positive(lambda3, "lambda3");
    return lambda3 * beamwidth_rad / crb_common(power_w, gain, "azimuth");
}

FeasibilityMinima feasibility_minima(const SensingChannel& channel,
                                     const CrbThresholds& thresholds,
                                     const WaveformParams& waveform) {
    const double gain = channel.gain > 0.0 ? channel.gain : channel_gain(channel);
    const double gain_sq = gain * gain;

    FeasibilityMinima out;
    const double inf = std::numeric_limits<double>::infinity();

    // Velocity and azimuth ceilings depend on power alone.
    double p_velocity = 0.0;
    if (thresholds.alpha[1] < inf) {
        p_velocity = thresholds.lambda[1] /
                     (thresholds.alpha[1] * gain_sq * waveform.effective_time_s * waveform.effective_time_s);
    }
    double p_azimuth = 0.0;
    if (thresholds.alpha[2] < inf) {
        p_azimuth = thresholds.lambda[2] * waveform.beamwidth_rad / (thresholds.alpha[2] * gain_sq);
    }
    out.power_min_w = std::max(p_velocity, p_azimuth);

    // The distance ceiling couples power and bandwidth through the effective
    // bandwidth, leaving a hyperbolic constraint on the product.
    if (thresholds.alpha[0] < inf) {
        out.power_bandwidth_min = thresholds.lambda[0] * 2.0 * kPi * kPi * waveform.pulse_width_s /
                                  (thresholds.alpha[0] * gain_sq);
    }
    return out;
}

} // namespace isacsim::sensing
