#include "isacsim/arima.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isacsim::agent {

namespace {

// Shock sequence of an ARMA model on the differenced series, with
// pre-sample shocks and observations conditioned to zero.
std::vector<double> arma_residuals(std::span<const double> z, const std::vector<double>& phi,
                                   const std::vector<double>& theta) {
    const int n = static_cast<int>(z.size());
    const int p = static_cast<int>(phi.size());
    const int q = static_cast<int>(theta.size());
    std::vector<double> eps(n, 0.0);
    for (int t = 0; t < n; ++t) {
        double pred = 0.0;
        for (int i = 1; i <= p; ++i) {
            if (t - i >= 0) pred += phi[i - 1] * z[t - i];
        }
        for (int j = 1; j <= q; ++j) {
            if (t - j >= 0) pred += theta[j - 1] * eps[t - j];
        }
        eps[t] = z[t] - pred;
    }
    return eps;
}

// Least squares with an explicit rank check; returns false when the design
// is rank-deficient.
bool solve_ls(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
              Eigen::VectorXd& out) {
    if (design.rows() < design.cols()) return false;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < design.cols()) return false;
    out = qr.solve(target);
    return out.allFinite();
}

} // namespace

std::vector<double> ArimaModel::difference(std::span<const double> series, int order) {
    std::vector<double> z(series.begin(), series.end());
    for (int k = 0; k < order; ++k) {
        if (z.size() < 2) throw std::invalid_argument("arima: series too short to difference");
        std::vector<double> d(z.size() - 1);
        for (std::size_t i = 0; i + 1 < z.size(); ++i) d[i] = z[i + 1] - z[i];
        z = std::move(d);
    }
    return z;
}

ArimaModel ArimaModel::fit(std::span<const double> series, ArimaOrders orders) {
    if (orders.ar < 0 || orders.ma < 0) throw std::invalid_argument("arima: negative order");
    if (orders.diff != 1 && orders.diff != 2) {
        throw std::invalid_argument("arima: differencing order must be 1 or 2");
    }
    const int min_len = orders.ar + orders.ma + orders.diff + 3;
    if (static_cast<int>(series.size()) < min_len) {
        throw std::invalid_argument("arima: series too short for requested orders");
    }

    ArimaModel model;
    model.orders_ = orders;

    const std::vector<double> z = difference(series, orders.diff);
    const int n = static_cast<int>(z.size());
    const int p = orders.ar;
    const int q = orders.ma;

    auto fit_ar_only = [&](std::vector<double>& phi_out) -> bool {
        if (p == 0) {
            phi_out.clear();
            return true;
        }
        const int rows = n - p;
        if (rows <= 0) return false;
        Eigen::MatrixXd design(rows, p);
        Eigen::VectorXd target(rows);
        for (int t = p; t < n; ++t) {
            for (int i = 1; i <= p; ++i) design(t - p, i - 1) = z[t - i];
            target(t - p) = z[t];
        }
        Eigen::VectorXd sol;
        if (!solve_ls(design, target, sol)) return false;
        phi_out.assign(sol.data(), sol.data() + p);
        return true;
    };

    bool ok = false;
    if (q > 0) {
        // Two-stage conditional least squares: a long autoregression supplies
        // shock estimates, then the ARMA coefficients come from one linear
        // regression on lagged values and lagged shocks.
        const int long_order = std::min(std::max(p + q + 2, 4), std::max(1, n / 3));
        std::vector<double> long_phi;
        std::vector<double> eps_hat;
        {
            Eigen::MatrixXd design(std::max(0, n - long_order), long_order);
            Eigen::VectorXd target(std::max(0, n - long_order));
            for (int t = long_order; t < n; ++t) {
                for (int i = 1; i <= long_order; ++i) design(t - long_order, i - 1) = z[t - i];
                target(t - long_order) = z[t];
            }
            Eigen::VectorXd sol;
            if (design.rows() > 0 && solve_ls(design, target, sol)) {
                long_phi.assign(sol.data(), sol.data() + long_order);
                eps_hat = arma_residuals(z, long_phi, {});
            }
        }
        if (!eps_hat.empty()) {
            const int start = std::max(p, q);
            const int rows = n - start;
            if (rows > p + q) {
                Eigen::MatrixXd design(rows, p + q);
                Eigen::VectorXd target(rows);
                for (int t = start; t < n; ++t) {
                    for (int i = 1; i <= p; ++i) design(t - start, i - 1) = z[t - i];
                    for (int j = 1; j <= q; ++j) design(t - start, p + j - 1) = eps_hat[t - j];
                    target(t - start) = z[t];
                }
                Eigen::VectorXd sol;
                if (solve_ls(design, target, sol)) {
                    model.phi_.assign(sol.data(), sol.data() + p);
                    model.theta_.assign(sol.data() + p, sol.data() + p + q);
                    ok = true;
                }
            }
        }
    }
    if (!ok) {
        std::vector<double> phi;
        if (fit_ar_only(phi)) {
            model.phi_ = std::move(phi);
            model.theta_.assign(q, 0.0);
            model.ma_dropped_ = q > 0;
            ok = true;
        }
    }
    if (!ok) {
        // Degenerate design (e.g. an exactly constant differenced series):
        // a zero-coefficient model reduces prediction to inverse differencing.
        model.phi_.assign(p, 0.0);
        model.theta_.assign(q, 0.0);
        model.ma_dropped_ = q > 0;
    }
    model.residuals_ = arma_residuals(z, model.phi_, model.theta_);
    return model;
}

double ArimaModel::predict_next(std::span<const double> series) const {
    const int w = orders_.diff;
    if (static_cast<int>(series.size()) < w + 1) {
        throw std::invalid_argument("arima: series too short to predict");
    }
    const std::vector<double> z = difference(series, w);
    const std::vector<double> eps = arma_residuals(z, phi_, theta_);
    const int n = static_cast<int>(z.size());

    double zhat = 0.0;
    for (int i = 1; i <= static_cast<int>(phi_.size()); ++i) {
        if (n - i >= 0 && n - i < n) zhat += phi_[i - 1] * z[n - i];
    }
    for (int j = 1; j <= static_cast<int>(theta_.size()); ++j) {
        if (n - j >= 0 && n - j < n) zhat += theta_[j - 1] * eps[n - j];
    }

    const double last = series[series.size() - 1];
    if (w == 1) return zhat + last;
    const double second_last = series[series.size() - 2];
    return zhat + 2.0 * last - second_last;
}

double prediction_accuracy(const ArimaModel& model, std::span<const double> series,
                           int heldout) {
    const int n = static_cast<int>(series.size());
    if (heldout <= 0 || heldout >= n) {
        throw std::invalid_argument("prediction_accuracy: held-out count out of range");
    }
    const int first = n - heldout;
    if (first < model.orders().diff + 1) {
        throw std::invalid_argument("prediction_accuracy: not enough history before held-out range");
    }
    double mae = 0.0;
    double lo = series[first];
    double hi = series[first];
    for (int t = first; t < n; ++t) {
        const double pred = model.predict_next(series.subspan(0, t));
        mae += std::abs(pred - series[t]);
        lo = std::min(lo, series[t]);
        hi = std::max(hi, series[t]);
    }
    mae /= static_cast<double>(heldout);
    const double range = hi - lo;
    if (range <= 0.0) return mae == 0.0 ? 1.0 : 0.0;
    return std::max(0.0, 1.0 - mae / range);
}

} // namespace isacsim::agent
