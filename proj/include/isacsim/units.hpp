#ifndef ISACSIM_UNITS_HPP
#define ISACSIM_UNITS_HPP

#include <cmath>
#include <numbers>

namespace isacsim::units {

// One megabyte = 1e6 bytes = 8e6 bits. File sizes are stored in bits for
// rate math and converted back to MB wherever a quantity is calibrated
// per-MB (content quality shape, computing density).
inline constexpr double kBitsPerMegabyte = 8.0e6;

inline constexpr double mb_to_bits(double mb) { return mb * kBitsPerMegabyte; }
inline constexpr double bits_to_mb(double bits) { return bits / kBitsPerMegabyte; }

// cycles/MB -> cycles/bit
inline constexpr double cycles_per_mb_to_per_bit(double c) { return c / kBitsPerMegabyte; }

inline double dbm_per_hz_to_w_per_hz(double dbm_per_hz) {
    return std::pow(10.0, (dbm_per_hz - 30.0) / 10.0);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

inline constexpr double kmh_to_mps(double kmh) { return kmh / 3.6; }

inline constexpr double speed_of_light_mps = 299792458.0;

inline constexpr double carrier_wavelength_m(double carrier_hz) {
    return speed_of_light_mps / carrier_hz;
}

} // namespace isacsim::units

#endif
