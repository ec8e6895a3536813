#include "isacsim/da.hpp"

#include "isacsim/dcc.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace isacsim::agent {

double collection_frequency(const CollectionPolicy& policy, DataAttribute attribute,
                            double accuracy) {
    if (accuracy < 0.0 || accuracy > 1.0) {
        throw std::domain_error("collection_frequency: accuracy outside [0,1]");
    }
    const int i = static_cast<int>(attribute);
    return policy.base_rate_hz[i] * std::exp(-policy.attenuation[i] * accuracy);
}

FactorSelection select_qos_factors(std::span<const DaWindow> windows, double threshold) {
    if (windows.size() < 2) {
        throw std::invalid_argument("select_qos_factors: need at least 2 windows");
    }
    std::vector<double> latency, quality, mos;
    latency.reserve(windows.size());
    quality.reserve(windows.size());
    mos.reserve(windows.size());
    for (const auto& w : windows) {
        latency.push_back(w.mean_latency_s);
        quality.push_back(w.mean_quality);
        mos.push_back(w.mean_mos);
    }

    FactorSelection sel;
    bool latency_ok = false;
    bool quality_ok = false;
    try {
        sel.latency_score = distance_correlation(latency, mos);
        latency_ok = true;
    } catch (const std::domain_error&) {
    }
    try {
        sel.quality_score = distance_correlation(quality, mos);
        quality_ok = true;
    } catch (const std::domain_error&) {
    }
    if (!latency_ok && !quality_ok) {
        throw std::domain_error("select_qos_factors: no informative factor");
    }
    sel.latency_selected = latency_ok && sel.latency_score >= threshold;
    sel.quality_selected = quality_ok && sel.quality_score >= threshold;
    if (!sel.latency_selected && !sel.quality_selected) {
        if (latency_ok && (!quality_ok || sel.latency_score >= sel.quality_score)) {
            sel.latency_selected = true;
        } else {
            sel.quality_selected = true;
        }
    }
    return sel;
}

FittedQoe fit_qoe_model(std::span<const DaWindow> windows, const FactorSelection& factors,
                        double behavior_max, double env_max, const FittedQoe* previous) {
    if (windows.size() < 6) {
        throw std::invalid_argument("fit_qoe_model: need at least 6 windows");
    }
    const int n = static_cast<int>(windows.size());

    // Target is MOS with the context impact divided out, so the fitted QoS
    // composes multiplicatively with the impact function.
    Eigen::VectorXd target(n);
    Eigen::VectorXd q(n), lat(n);
    for (int i = 0; i < n; ++i) {
        qoe::UserContext ctx;
        ctx.behavior_dynamics = windows[i].mean_behavior;
        ctx.env_complexity = windows[i].mean_env;
        ctx.behavior_max = behavior_max;
        ctx.env_max = env_max;
        target(i) = windows[i].mean_mos / qoe::impact(ctx);
        q(i) = windows[i].mean_quality;
        lat(i) = windows[i].mean_latency_s;
    }

    const bool use_quality = factors.quality_selected;
    const bool use_latency = factors.latency_selected;

    // Linear family: nonnegative weights on [quality, -latency], restricted
    // to the selected factors.
    int cols = (use_quality ? 1 : 0) + (use_latency ? 1 : 0);
    bool linear_ok = cols > 0;
    std::array<double, 3> omega_linear{0.0, 0.0, 0.0};
    double mse_linear = std::numeric_limits<double>::infinity();
    if (linear_ok) {
        Eigen::MatrixXd design(n, cols);
        int c = 0;
        if (use_quality) design.col(c++) = q;
        if (use_latency) design.col(c++) = -lat;
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
        qr.setThreshold(1e-10);
        if (qr.rank() < cols) {
            linear_ok = false;
        } else {
            Eigen::VectorXd w = qr.solve(target);
            c = 0;
            if (use_quality) omega_linear[0] = std::max(0.0, w(c++));
            if (use_latency) omega_linear[1] = std::max(0.0, w(c++));
            Eigen::VectorXd fit = Eigen::VectorXd::Zero(n);
            fit += omega_linear[0] * q - omega_linear[1] * lat;
            mse_linear = (fit - target).squaredNorm() / n;
        }
    }

    // Ratio family: closed-form scale on quality/latency.
    bool ratio_ok = true;
    double omega_ratio = 0.0;
    double mse_ratio = std::numeric_limits<double>::infinity();
    {
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) {
            if (lat(i) <= 0.0) {
                ratio_ok = false;
                break;
            }
            x(i) = q(i) / lat(i);
        }
        if (ratio_ok) {
            const double xx = x.squaredNorm();
            if (xx <= 1e-20) {
                ratio_ok = false;
            } else {
                omega_ratio = std::max(0.0, x.dot(target) / xx);
                mse_ratio = (omega_ratio * x - target).squaredNorm() / n;
            }
        }
    }

    if (!linear_ok && !ratio_ok) {
        FittedQoe kept = previous ? *previous : FittedQoe{};
        kept.stale = true;
        return kept;
    }

    FittedQoe out;
    out.fitted = true;
    out.last_update_window = windows[windows.size() - 1].index;
    if (!ratio_ok || (linear_ok && mse_linear <= mse_ratio)) {
        out.spec.structure = qoe::QosStructure::Linear;
        out.spec.omega = omega_linear;
        out.fit_mse = mse_linear;
    } else {
        out.spec.structure = qoe::QosStructure::Ratio;
        out.spec.omega = {0.0, 0.0, omega_ratio};
        out.fit_mse = mse_ratio;
    }
    return out;
}

bool update_trigger(std::span<const double> observed_mos,
                    std::span<const double> model_mos, double error_threshold,
                    double mos_floor) {
    if (observed_mos.empty() || observed_mos.size() != model_mos.size()) {
        throw std::invalid_argument("update_trigger: empty or mismatched inputs");
    }
    double err = 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < observed_mos.size(); ++i) {
        err += std::abs(observed_mos[i] - model_mos[i]);
        mean += observed_mos[i];
    }
    err /= static_cast<double>(observed_mos.size());
    mean /= static_cast<double>(observed_mos.size());
    return err > error_threshold || mean < mos_floor;
}

UserClusters cluster_users(std::span<const FittedQoe> models) {
    UserClusters clusters;
    for (int i = 0; i < static_cast<int>(models.size()); ++i) {
        if (models[i].spec.structure == qoe::QosStructure::Linear) {
            clusters.linear_users.push_back(i);
        } else {
            clusters.ratio_users.push_back(i);
        }
    }
    return clusters;
}

void save_da_history(std::ostream& out,
                     std::span<const std::vector<DaWindow>> per_user_windows) {
    out << "user,window,mean_latency_s,mean_quality,mean_behavior,mean_env,mean_mos\n";
    char buf[256];
    for (std::size_t u = 0; u < per_user_windows.size(); ++u) {
        for (const auto& w : per_user_windows[u]) {
            std::snprintf(buf, sizeof buf, "%zu,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", u, w.index,
                          w.mean_latency_s, w.mean_quality, w.mean_behavior, w.mean_env,
                          w.mean_mos);
            out << buf;
        }
    }
}

std::vector<std::vector<DaWindow>> load_da_history(std::istream& in) {
    std::vector<std::vector<DaWindow>> result;
    std::string line;
    if (!std::getline(in, line)) return result;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        auto next = [&]() -> double {
            if (!std::getline(row, field, ',')) {
                throw std::runtime_error("da history: malformed row: " + line);
            }
            return std::stod(field);
        };
        const auto user = static_cast<std::size_t>(next());
        DaWindow w;
        w.index = static_cast<int>(next());
        w.mean_latency_s = next();
        w.mean_quality = next();
        w.mean_behavior = next();
        w.mean_env = next();
        w.mean_mos = next();
        if (result.size() <= user) result.resize(user + 1);
        result[user].push_back(w);
    }
    return result;
}

// ---------------------------------------------------------------------------

UserAgent::UserAgent(const DaConfig& config) : config_(config) {
    model_.spec = qoe::QoeModelSpec{}; // generic linear model until first fit
}

bool UserAgent::collect_due(DataAttribute attribute, double slot_duration_s) {
    const int i = static_cast<int>(attribute);
    const double rate = collection_frequency(config_.collection, attribute, accuracy_[i]);
    collect_carry_[i] += rate * slot_duration_s;
    if (collect_carry_[i] < 1.0) return false;
    // One recorded value per slot; overhead is charged per sample event, so
    // rates above one per slot still pay for every sample.
    const double samples = std::floor(collect_carry_[i]);
    collect_carry_[i] -= samples;
    pending_overhead_bits_ += config_.collection.overhead_bits * samples;
    return true;
}

double UserAgent::collection_rate_hz(DataAttribute attribute) const {
    return collection_frequency(config_.collection, attribute,
                                accuracy_[static_cast<int>(attribute)]);
}

double UserAgent::consume_overhead_bits() {
    const double bits = pending_overhead_bits_;
    pending_overhead_bits_ = 0.0;
    return bits;
}

void UserAgent::record_behavior(double behavior_dynamics) {
    behavior_sum_ += behavior_dynamics;
    ++behavior_samples_;
    behavior_estimate_ = behavior_dynamics;
}

void UserAgent::record_environment(double env_complexity) {
    env_sum_ += env_complexity;
    ++env_samples_;
    env_estimate_ = env_complexity;
}

void UserAgent::record_performance(double latency_s, double quality, double mos) {
    latency_sum_ += latency_s;
    quality_sum_ += quality;
    mos_sum_ += mos;
    ++perf_samples_;
}

void UserAgent::end_slot(double behavior_max, double env_max) {
    ++slot_in_window_;
    if (slot_in_window_ >= config_.window_slots) {
        close_window(behavior_max, env_max);
        slot_in_window_ = 0;
    }
}

void UserAgent::close_window(double behavior_max, double env_max) {
    const int index = next_window_index_++;
    // A window without performance samples carries no MOS evidence and is
    // dropped; the model simply goes stale until collection resumes.
    if (perf_samples_ > 0) {
        DaWindow w;
        w.index = index;
        w.mean_latency_s = latency_sum_ / perf_samples_;
        w.mean_quality = quality_sum_ / perf_samples_;
        w.mean_mos = mos_sum_ / perf_samples_;
        w.mean_behavior = behavior_samples_ > 0 ? behavior_sum_ / behavior_samples_
                                                : behavior_estimate_;
        w.mean_env = env_samples_ > 0 ? env_sum_ / env_samples_ : env_estimate_;
        windows_.push_back(w);
        if (static_cast<int>(windows_.size()) > config_.max_history_windows) {
            windows_.erase(windows_.begin());
        }
    }
    behavior_samples_ = env_samples_ = perf_samples_ = 0;
    behavior_sum_ = env_sum_ = latency_sum_ = quality_sum_ = mos_sum_ = 0.0;

    if (static_cast<int>(windows_.size()) < config_.min_fit_windows) return;

    try {
        factors_ = select_qos_factors(windows_, config_.factor_threshold);
        have_factors_ = true;
    } catch (const std::domain_error&) {
        // Degenerate history; keep previous factors if any.
    }
    if (!have_factors_) return;

    bool refit = !model_.fitted;
    if (model_.fitted) {
        const int horizon = std::min<int>(config_.trigger_window,
                                          static_cast<int>(windows_.size()));
        std::vector<double> observed, predicted;
        for (int i = static_cast<int>(windows_.size()) - horizon;
             i < static_cast<int>(windows_.size()); ++i) {
            const DaWindow& w = windows_[i];
            qoe::UserContext ctx{w.mean_behavior, w.mean_env, behavior_max, env_max};
            const double quality = std::clamp(w.mean_quality, 1e-9, 1.0);
            double model_qos;
            if (model_.spec.structure == qoe::QosStructure::Linear) {
                model_qos = model_.spec.omega[0] * quality -
                            model_.spec.omega[1] * w.mean_latency_s;
            } else {
                model_qos = w.mean_latency_s > 0.0
                                ? model_.spec.omega[2] * quality / w.mean_latency_s
                                : 0.0;
            }
            observed.push_back(w.mean_mos);
            predicted.push_back(model_qos * qoe::impact(ctx));
        }
        refit = update_trigger(observed, predicted, config_.update_error_threshold,
                               config_.mos_floor);
    }
    if (refit) {
        model_ = fit_qoe_model(windows_, factors_, behavior_max, env_max, &model_);
    }

    refresh_predictions();
}

void UserAgent::refresh_predictions() {
    const int n = static_cast<int>(windows_.size());
    if (n < config_.arima_min_series) return;

    auto series_of = [&](DataAttribute attr) {
        std::vector<double> s(n);
        for (int i = 0; i < n; ++i) {
            switch (attr) {
                case DataAttribute::Behavior: s[i] = windows_[i].mean_behavior; break;
                case DataAttribute::Environment: s[i] = windows_[i].mean_env; break;
                case DataAttribute::Performance: s[i] = windows_[i].mean_latency_s; break;
            }
        }
        return s;
    };

    for (int a = 0; a < kAttributeCount; ++a) {
        const auto attr = static_cast<DataAttribute>(a);
        const std::vector<double> series = series_of(attr);
        try {
            const ArimaModel model = ArimaModel::fit(series, config_.arima_orders);
            const int heldout = std::min(config_.arima_heldout, n / 3);
            if (heldout > 0) {
                accuracy_[a] = prediction_accuracy(model, series, heldout);
            }
            const double predicted = model.predict_next(series);
            if (attr == DataAttribute::Behavior && std::isfinite(predicted)) {
                behavior_estimate_ = std::max(0.0, predicted);
            } else if (attr == DataAttribute::Environment && std::isfinite(predicted)) {
                env_estimate_ = std::clamp(predicted, 0.0, 1.0);
            }
        } catch (const std::invalid_argument&) {
            // Not enough history for this attribute yet.
        }
    }
}

} // namespace isacsim::agent
