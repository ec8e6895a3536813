#include "isacsim/qoe.hpp"

#include "isacsim/units.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace isacsim::qoe {

double transmission_rate(double bandwidth_hz, double power_w, double comm_gain, double noise_psd) {
    if (bandwidth_hz < 0.0 || power_w < 0.0) {
        throw std::domain_error("transmission_rate: negative bandwidth or power");
    }
    if (!(noise_psd > 0.0)) throw std::domain_error("transmission_rate: noise PSD must be positive");
    if (bandwidth_hz == 0.0) return 0.0;
    const double snr = power_w * comm_gain / (bandwidth_hz * noise_psd);
    return bandwidth_hz * std::log2(1.0 + snr);
}

double content_quality(double file_size_mb, double quality_shape) {
    if (!(file_size_mb > 0.0)) throw std::domain_error("content_quality: file size must be positive");
    if (!(quality_shape > 0.0)) throw std::domain_error("content_quality: shape must be positive");
    const double s = quality_shape * file_size_mb;
    return s / (1.0 + s);
}

double service_latency(const ServiceDemand& demand, double compute_cps, double rate_bps) {
    if (!(demand.file_size_bits > 0.0)) throw std::domain_error("service_latency: file size must be positive");
    if (compute_cps <= 0.0 || rate_bps <= 0.0) return std::numeric_limits<double>::infinity();
    return demand.cycles_per_bit * demand.file_size_bits / compute_cps +
           demand.file_size_bits / rate_bps;
}

double impact(const UserContext& context) {
    if (!(context.behavior_max > 0.0) || !(context.env_max > 0.0)) {
        throw std::domain_error("impact: normalization ceilings must be positive");
    }
    const double h = std::min(context.behavior_dynamics / context.behavior_max, 1.0);
    const double e = std::min(context.env_complexity / context.env_max, 1.0);
    return 1.0 - 0.3 / (1.0 + std::exp(-5.0 * (h + e - 1.0)));
}

double qos(const QoeModelSpec& spec, const ServiceDemand& demand, double compute_cps,
           double rate_bps) {
    const double quality = content_quality(units::bits_to_mb(demand.file_size_bits), spec.quality_shape);
    const double latency = service_latency(demand, compute_cps, rate_bps);
    if (spec.structure == QosStructure::Linear) {
        return spec.omega[0] * quality - spec.omega[1] * latency;
    }
    if (latency == 0.0) throw std::domain_error("qos: ratio structure undefined at zero latency");
    return spec.omega[2] * quality / latency;
}

double qoe_value(const QoeModelSpec& spec, const UserContext& context,
                 const ServiceDemand& demand, const Allocation& allocation,
                 double comm_gain, double noise_psd) {
    const double rate = transmission_rate(allocation.bandwidth_hz, allocation.power_w,
                                          comm_gain, noise_psd);
    return qos(spec, demand, allocation.compute_cps, rate) * impact(context);
}

} // namespace isacsim::qoe
