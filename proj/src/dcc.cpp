#include "isacsim/dcc.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace isacsim::agent {

namespace {

// Double-centered pairwise |x_i - x_j| matrix, row-major.
std::vector<double> centered_distance_matrix(std::span<const double> x) {
    const std::size_t m = x.size();
    std::vector<double> a(m * m);
    std::vector<double> row_mean(m, 0.0);
    double grand_mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double d = std::abs(x[i] - x[j]);
            a[i * m + j] = d;
            row_mean[i] += d;
        }
        row_mean[i] /= static_cast<double>(m);
        grand_mean += row_mean[i];
    }
    grand_mean /= static_cast<double>(m);
    // Symmetric input, so column means equal row means.
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            a[i * m + j] += grand_mean - row_mean[i] - row_mean[j];
        }
    }
    return a;
}

double mean_product(const std::vector<double>& a, const std::vector<double>& b, std::size_t m) {
    double s = 0.0;
    for (std::size_t k = 0; k < m * m; ++k) s += a[k] * b[k];
    return s / static_cast<double>(m * m);
}

} // namespace

double distance_variance(std::span<const double> x) {
    if (x.size() < 2) throw std::invalid_argument("distance_variance: need at least 2 samples");
    const auto a = centered_distance_matrix(x);
    return mean_product(a, a, x.size());
}

double distance_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("distance_correlation: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("distance_correlation: need at least 2 samples");
    const std::size_t m = x.size();
    const auto a = centered_distance_matrix(x);
    const auto b = centered_distance_matrix(y);
    const double vxx = mean_product(a, a, m);
    const double vyy = mean_product(b, b, m);
    if (vxx <= 0.0 || vyy <= 0.0) {
        throw std::domain_error("distance_correlation: zero distance variance");
    }
    // Sample distance covariance is nonnegative in exact arithmetic; guard
    // against rounding producing a tiny negative.
    const double vxy = std::max(mean_product(a, b, m), 0.0);
    return std::sqrt(std::sqrt(vxy * vxy / (vxx * vyy)));
}

} // namespace isacsim::agent
