#ifndef ISACSIM_QOE_HPP
#define ISACSIM_QOE_HPP

#include <array>

namespace isacsim::qoe {

// The two QoS structure families: a weighted linear combination of content
// quality and service latency, and a quality/latency ratio.
enum class QosStructure { Linear, Ratio };

struct QoeModelSpec {
    QosStructure structure = QosStructure::Linear;
    // omega[0], omega[1] weight quality and latency in the linear family;
    // omega[2] scales the ratio family. Unused entries stay zero.
    std::array<double, 3> omega{1.0, 1.0, 0.0};
    double quality_shape = 2.0; // per-MB saturation shape
};

// Behavioral/environmental context entering the impact function.
struct UserContext {
    double behavior_dynamics = 0.0;
    double env_complexity = 0.0;
    double behavior_max = 1.0;
    double env_max = 1.0;
};

struct ServiceDemand {
    double file_size_bits = 8.0e6;
    double cycles_per_bit = 1.25; // config accepts cycles/MB
};

struct Allocation {
    double bandwidth_hz = 0.0;
    double power_w = 0.0;
    double compute_cps = 0.0;
};

// Shannon rate in bits/s; noise_psd in W/Hz. Returns 0 for zero bandwidth
// (a zero-bandwidth user is treated as unserved).
double transmission_rate(double bandwidth_hz, double power_w, double comm_gain, double noise_psd);

// Saturating content quality in (0,1); file size in MB.
double content_quality(double file_size_mb, double quality_shape);

// Compute + transmission latency in seconds; returns +inf when either
// resource is absent (allocation infeasible).
double service_latency(const ServiceDemand& demand, double compute_cps, double rate_bps);

// Sigmoid context factor in (0.7, 1.0); normalized inputs are clipped at 1.
double impact(const UserContext& context);

double qos(const QoeModelSpec& spec, const ServiceDemand& demand, double compute_cps,
           double rate_bps);

// Full composition: qos(allocation-induced rate) * impact(context).
double qoe_value(const QoeModelSpec& spec, const UserContext& context,
                 const ServiceDemand& demand, const Allocation& allocation,
                 double comm_gain, double noise_psd);

} // namespace isacsim::qoe

#endif
