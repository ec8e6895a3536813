#ifndef ISACSIM_DA_HPP
#define ISACSIM_DA_HPP

#include "isacsim/arima.hpp"
#include "isacsim/qoe.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace isacsim::agent {

// Aggregates collected over one large time duration (a window of slots).
struct DaWindow {
    int index = 0;
    double mean_latency_s = 0.0;
    double mean_quality = 0.0;
    double mean_behavior = 0.0;
    double mean_env = 0.0;
    double mean_mos = 0.0;
};

// The three collected data attributes.
enum class DataAttribute { Behavior = 0, Performance = 1, Environment = 2 };
inline constexpr int kAttributeCount = 3;

struct CollectionPolicy {
    // Standard collection frequency per attribute (Hz) and the attenuation
    // rate applied against prediction accuracy.
    std::array<double, kAttributeCount> base_rate_hz{2.0, 1.0, 0.5};
    std::array<double, kAttributeCount> attenuation{2.4, 1.8, 0.9};
    double overhead_bits = 4096.0; // downlink cost charged per collected sample
};

// Adaptive collection frequency for one attribute given current prediction
// accuracy in [0, 1].
double collection_frequency(const CollectionPolicy& policy, DataAttribute attribute,
                            double accuracy);

struct FactorSelection {
    double latency_score = 0.0;
    double quality_score = 0.0;
    bool latency_selected = false;
    bool quality_selected = false;
};

// Distance-correlation screening of the candidate QoS factors against the
// MOS sequence. Degenerate (constant) factors are skipped; if nothing
// clears the threshold the strongest informative factor is kept.
// Throws std::domain_error when no factor is informative.
FactorSelection select_qos_factors(std::span<const DaWindow> windows, double threshold);

struct FittedQoe {
    qoe::QoeModelSpec spec;
    double fit_mse = 0.0;
    int last_update_window = -1;
    bool stale = false; // set when a refit was skipped on a rank-deficient design
    bool fitted = false;
};

// Fits both structure families to the window history (target: MOS divided
// by the context impact) and keeps the lower-MSE one. `previous` is
// returned flagged stale when the design is rank-deficient.
FittedQoe fit_qoe_model(std::span<const DaWindow> windows, const FactorSelection& factors,
                        double behavior_max, double env_max,
                        const FittedQoe* previous = nullptr);

// True when the rolling mean absolute gap between observed and
// model-predicted MOS exceeds `error_threshold` (strictly), or the rolling
// observed MOS mean falls below `mos_floor`.
bool update_trigger(std::span<const double> observed_mos,
                    std::span<const double> model_mos, double error_threshold,
                    double mos_floor);

// Group indices by model structure: first Linear, then Ratio.
struct UserClusters {
    std::vector<int> linear_users;
    std::vector<int> ratio_users;
};
UserClusters cluster_users(std::span<const FittedQoe> models);

// Delimited-text export/import of per-user window histories for replays.
void save_da_history(std::ostream& out,
                     std::span<const std::vector<DaWindow>> per_user_windows);
std::vector<std::vector<DaWindow>> load_da_history(std::istream& in);

// ---------------------------------------------------------------------------
// Online per-user pipeline state driven by the simulation loop.

struct DaConfig {
    CollectionPolicy collection;
    int window_slots = 10;           // slots per large time duration
    int min_fit_windows = 6;
    int max_history_windows = 96;
    double factor_threshold = 0.3;
    double update_error_threshold = 0.5;
    double mos_floor = 2.0;
    int trigger_window = 4;          // rolling horizon for the update trigger
    ArimaOrders arima_orders{2, 1, 1};
    int arima_min_series = 10;       // windows needed before ARIMA kicks in
    int arima_heldout = 3;
};

// One user's digital agent: accumulates samples into windows, learns the
// QoE model, predicts user status per attribute, and adapts collection.
class UserAgent {
public:
    explicit UserAgent(const DaConfig& config);

    // Slot-level entry points. `collect_*` report whether that attribute is
    // sampled this slot (deterministic fractional-rate accumulator), and
    // charge the configured overhead.
    bool collect_due(DataAttribute attribute, double slot_duration_s);

    void record_behavior(double behavior_dynamics);
    void record_environment(double env_complexity);
    void record_performance(double latency_s, double quality, double mos);

    // Closes the current window if the slot count reached the window length;
    // runs factor selection / fitting / prediction updates as needed.
    void end_slot(double behavior_max, double env_max);

    const FittedQoe& model() const { return model_; }
    const std::vector<DaWindow>& windows() const { return windows_; }
    double accuracy(DataAttribute attribute) const {
        return accuracy_[static_cast<int>(attribute)];
    }
    double collection_rate_hz(DataAttribute attribute) const;
    // Bits charged for collection since the last call; resets the counter.
    double consume_overhead_bits();

    // Latest (possibly predicted) user-status view for state assembly.
    double behavior_estimate() const { return behavior_estimate_; }
    double env_estimate() const { return env_estimate_; }

    const DaConfig& config() const { return config_; }

private:
    void close_window(double behavior_max, double env_max);
    void refresh_predictions();

    DaConfig config_;
    std::vector<DaWindow> windows_;
    FittedQoe model_;
    std::array<double, kAttributeCount> accuracy_{0.0, 0.0, 0.0};
    std::array<double, kAttributeCount> collect_carry_{0.0, 0.0, 0.0};

    // Current-window accumulators.
    int slot_in_window_ = 0;
    int next_window_index_ = 0;
    int behavior_samples_ = 0;
    int env_samples_ = 0;
    int perf_samples_ = 0;
    double behavior_sum_ = 0.0;
    double env_sum_ = 0.0;
    double latency_sum_ = 0.0;
    double quality_sum_ = 0.0;
    double mos_sum_ = 0.0;

    double pending_overhead_bits_ = 0.0;
    double behavior_estimate_ = 0.0;
    double env_estimate_ = 0.0;
    bool have_factors_ = false;
    FactorSelection factors_;
};

} // namespace isacsim::agent

#endif
