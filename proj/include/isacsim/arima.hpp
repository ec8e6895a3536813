#ifndef ISACSIM_ARIMA_HPP
#define ISACSIM_ARIMA_HPP

#include <span>
#include <vector>

namespace isacsim::agent {

struct ArimaOrders {
    int ar = 2;   // p
    int diff = 1; // w, restricted to {1, 2}
    int ma = 1;   // q
};

// ARIMA(p, w, q) with conditional-least-squares estimation on the
// differenced series. Residuals are kept for the moving-average recursion.
class ArimaModel {
public:
    // Throws std::invalid_argument when the series is too short
    // (length must exceed p + q + w + 2) or orders are out of range.
    // Singular normal equations fall back to an AR-only fit, then to a
    // zero-coefficient model (pure inverse differencing).
    static ArimaModel fit(std::span<const double> series, ArimaOrders orders);

    // One-step-ahead forecast of the original series: forecast the
    // differenced series with future shocks set to zero, then invert the
    // differencing.
    double predict_next(std::span<const double> series) const;

    const ArimaOrders& orders() const { return orders_; }
    const std::vector<double>& ar_coefficients() const { return phi_; }
    const std::vector<double>& ma_coefficients() const { return theta_; }
    const std::vector<double>& residuals() const { return residuals_; }
    bool ma_dropped() const { return ma_dropped_; }

    // w-fold differencing; exposed for tests and the prediction pipeline.
    static std::vector<double> difference(std::span<const double> series, int order);

private:
    ArimaOrders orders_;
    std::vector<double> phi_;
    std::vector<double> theta_;
    std::vector<double> residuals_; // shocks of the differenced series used in fit
    bool ma_dropped_ = false;
};

// Range-normalized complement of the one-step MAE of `model` over the last
// `heldout` points of `series`; in [0, 1]. A constant held-out segment gives
// 1 for exact predictions and 0 otherwise.
double prediction_accuracy(const ArimaModel& model, std::span<const double> series,
                           int heldout);

} // namespace isacsim::agent

#endif
