#ifndef ISACSIM_DCC_HPP
#define ISACSIM_DCC_HPP

#include <span>

namespace isacsim::agent {

// Distance correlation coefficient of two equal-length scalar series,
// in [0, 1]. Pairwise absolute-difference matrices are double-centered and
// the coefficient is the normalized distance covariance.
// Throws std::invalid_argument on length mismatch or M < 2, and
// std::domain_error when either series has zero distance variance.
double distance_correlation(std::span<const double> x, std::span<const double> y);

// Distance variance of a single series ((1/M^2) sum of squared
// double-centered distances); zero iff the series is constant.
double distance_variance(std::span<const double> x);

} // namespace isacsim::agent

#endif
