#ifndef ISACSIM_RL_HPP
#define ISACSIM_RL_HPP

#include "isacsim/mlp.hpp"
#include "isacsim/replay.hpp"
#include "isacsim/sca.hpp"

#include <array>
#include <iosfwd>
#include <optional>

namespace isacsim::rl {

inline constexpr int kGroupCount = 2;
inline constexpr int kFeaturesPerGroup = 9;
inline constexpr int kStateDim = kGroupCount * kFeaturesPerGroup; // 18
inline constexpr int kActionDim = 6; // (bandwidth, power, compute) x 2 groups

// Raw per-group aggregates feeding the state vector.
struct GroupSummary {
    double mean_behavior = 0.0;
    double mean_env = 0.0;
    double mean_sensing_gain = 0.0;
    double mean_comm_gain = 0.0;
    double mean_file_mb = 0.0;
    std::array<double, 3> mean_omega{0.0, 0.0, 0.0};
    double size_fraction = 0.0; // group size / total users
    bool empty = true;
};

// Min-max normalization ranges for the state features.
struct StateRanges {
    double behavior_max = 1.0;
    double env_max = 1.0;
    double sensing_gain_max = 1e-3;
    double comm_gain_max = 1e-9;
    double file_mb_min = 0.1;
    double file_mb_max = 10.0;
    double omega_max = 20.0;
};

// 18-feature state: per group, the normalized means plus the group size
// share. Empty groups map to all-zero features.
Eigen::VectorXd observe_state(const std::array<GroupSummary, kGroupCount>& groups,
                              const StateRanges& ranges);

// Proportional split of each budget across the two groups; an all-zero
// component pair falls back to an equal split. Shares sum to the total
// exactly.
std::array<sca::GroupBudget, kGroupCount> normalize_action(const Eigen::VectorXd& action,
                                                           const sca::GroupBudget& totals);

struct AgentConfig {
    std::vector<int> hidden{256, 128, 64};
    double discount = 0.9;
    double learning_rate = 1e-4;
    double epsilon_start = 0.2;
    double epsilon_final = 0.01;
    int target_sync_period = 100;
    std::size_t replay_capacity = 6000;
    int batch_size = 128;
    double priority_exponent = 0.6;
    double priority_floor = 1e-3;
    bool taylor_correction = true;
    bool momentum = false;
    double momentum_beta = 0.9;
};

struct UpdateStats {
    double mean_abs_td_error = 0.0;
    int skipped = 0; // transitions dropped for non-finite gradients
};

// Deterministic actor-critic with the first-order action-gradient
// correction folded into the temporal-difference target.
class TaylorTdAgent {
public:
    TaylorTdAgent(const AgentConfig& config, Rng init_rng);

    Eigen::VectorXd select_action(const Eigen::VectorXd& state, double epsilon, Rng& rng) const;

    double td_error(const Transition& transition) const;

    void remember(Transition transition);
    // Samples a prioritized batch and applies one critic + actor step.
    // Returns nothing useful before the memory holds a full batch.
    std::optional<UpdateStats> train_step(Rng& rng);
    UpdateStats update_batch(const std::vector<std::size_t>& indices);

    void sync_targets();
    // Steps since the last sync; the trainer syncs every config period.
    int steps_since_sync() const { return steps_since_sync_; }

    const AgentConfig& config() const { return config_; }
    const Mlp& actor() const { return actor_; }
    const Mlp& critic() const { return critic_; }
    Mlp& actor() { return actor_; }
    Mlp& critic() { return critic_; }
    const Mlp& target_actor() const { return target_actor_; }
    const Mlp& target_critic() const { return target_critic_; }
    ReplayMemory& memory() { return memory_; }
    const ReplayMemory& memory() const { return memory_; }

    // Gradient of the critic output with respect to the action entries.
    Eigen::VectorXd critic_action_gradient(const Eigen::VectorXd& state,
                                           const Eigen::VectorXd& action) const;
    double critic_value(const Eigen::VectorXd& state, const Eigen::VectorXd& action) const;

    void save(std::ostream& out) const;
    void load(std::istream& in);

private:
    AgentConfig config_;
    Mlp actor_, critic_, target_actor_, target_critic_;
    ReplayMemory memory_;
    std::vector<Mlp::Layer> actor_velocity_, critic_velocity_;
    int steps_since_sync_ = 0;
};

// Linear exploration schedule from start to final over `total_steps`.
double epsilon_at(const AgentConfig& config, int step, int total_steps);

} // namespace isacsim::rl

#endif
