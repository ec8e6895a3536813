#ifndef ISACSIM_SENSING_HPP
#define ISACSIM_SENSING_HPP

#include <array>

namespace isacsim::sensing {

// Transmit waveform geometry. All three quantities are fixed system
// parameters; the effective time duration in particular is not derived from
// dwell-time allocation.
struct WaveformParams {
    double pulse_width_s = 2.5e-9;
    double effective_time_s = 1.0e-3;
    double beamwidth_rad = 1.3264502315156903e-3; // null-to-null, 0.076 deg
};

// Downlink sensing channel of one user. `gain` is derived from the other
// fields via channel_gain(); callers that mutate geometry must recompute it.
struct SensingChannel {
    double distance_m = 100.0;
    double wavelength_m = 0.0107068735;
    double rcs_m2 = 5.0;
    double array_gain = 0.8;
    double tx_beam_gain = 1.0;
    double rx_beam_gain = 1.0;
    int rx_antennas = 32;
    double noise_power_w = 1.0e-12; // sigma_r^2 of the gain formula (PSD x band)
    double gain = 0.0;
};

// CRB ceilings (alpha) and requirement weights (lambda), indexed
// distance=0, velocity=1, azimuth=2.
struct CrbThresholds {
    std::array<double, 3> alpha{0.01, 0.01, 0.01};
    std::array<double, 3> lambda{1.0, 1.0e-20, 1.0e-13};
};

// |B_RMS|^2 = B / (2 pi^2 T_pulse).
double effective_bandwidth_sq(double bandwidth_hz, double pulse_width_s);

// Radar-equation pathloss variance: rcs * wavelength^2 / ((4 pi)^3 d^4).
double pathloss_variance(double rcs_m2, double wavelength_m, double distance_m);

// Dimensionless sensing channel gain; ignores `channel.gain`.
double channel_gain(const SensingChannel& channel);

// Returns a copy of `channel` with the gain field recomputed.
SensingChannel with_gain(SensingChannel channel);

double crb_distance(double power_w, double gain, double eff_bandwidth_sq, double lambda1);
double crb_velocity(double power_w, double gain, double effective_time_s, double lambda2);
double crb_azimuth(double power_w, double gain, double beamwidth_rad, double lambda3);

// Minimal per-user resources implied by the three CRB ceilings. Any
// allocation with power >= power_min_w and power * bandwidth >=
// power_bandwidth_min satisfies all three constraints.
struct FeasibilityMinima {
    double power_min_w = 0.0;
    double power_bandwidth_min = 0.0; // W * Hz
};

FeasibilityMinima feasibility_minima(const SensingChannel& channel,
                                     const CrbThresholds& thresholds,
                                     const WaveformParams& waveform);

} // namespace isacsim::sensing

#endif
