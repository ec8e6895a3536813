#include "isacsim/rl.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace isacsim::rl {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double normalized(double value, double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    return clamp01((value - lo) / (hi - lo));
}

} // namespace

Eigen::VectorXd observe_state(const std::array<GroupSummary, kGroupCount>& groups,
                              const StateRanges& ranges) {
    Eigen::VectorXd state = Eigen::VectorXd::Zero(kStateDim);
    for (int g = 0; g < kGroupCount; ++g) {
        const GroupSummary& s = groups[static_cast<std::size_t>(g)];
        if (s.empty) continue;
        const int base = g * kFeaturesPerGroup;
        state(base + 0) = normalized(s.mean_behavior, 0.0, ranges.behavior_max);
        state(base + 1) = normalized(s.mean_env, 0.0, ranges.env_max);
        state(base + 2) = normalized(s.mean_sensing_gain, 0.0, ranges.sensing_gain_max);
        state(base + 3) = normalized(s.mean_comm_gain, 0.0, ranges.comm_gain_max);
        state(base + 4) = normalized(s.mean_file_mb, ranges.file_mb_min, ranges.file_mb_max);
        state(base + 5) = normalized(s.mean_omega[0], 0.0, ranges.omega_max);
        state(base + 6) = normalized(s.mean_omega[1], 0.0, ranges.omega_max);
        state(base + 7) = normalized(s.mean_omega[2], 0.0, ranges.omega_max);
        state(base + 8) = clamp01(s.size_fraction);
    }
    return state;
}

std::array<sca::GroupBudget, kGroupCount> normalize_action(const Eigen::VectorXd& action,
                                                           const sca::GroupBudget& totals) {
    if (action.size() != kActionDim) throw std::invalid_argument("normalize_action: bad action size");
    std::array<sca::GroupBudget, kGroupCount> budgets;
    const std::array<double, 3> total{totals.bandwidth_hz, totals.power_w, totals.compute_cps};
    for (int r = 0; r < 3; ++r) {
        const double a0 = std::max(0.0, action(r));
        const double a1 = std::max(0.0, action(3 + r));
        const double sum = a0 + a1;
        const double share0 = sum > 0.0 ? a0 / sum : 0.5;
        double v0 = total[static_cast<std::size_t>(r)] * share0;
        double v1 = total[static_cast<std::size_t>(r)] - v0; // exact partition
        switch (r) {
            case 0: budgets[0].bandwidth_hz = v0; budgets[1].bandwidth_hz = v1; break;
            case 1: budgets[0].power_w = v0; budgets[1].power_w = v1; break;
            case 2: budgets[0].compute_cps = v0; budgets[1].compute_cps = v1; break;
        }
    }
    return budgets;
}

double epsilon_at(const AgentConfig& config, int step, int total_steps) {
    if (total_steps <= 1) return config.epsilon_final;
    const double t = std::clamp(static_cast<double>(step) / (total_steps - 1), 0.0, 1.0);
    return config.epsilon_start + (config.epsilon_final - config.epsilon_start) * t;
}

TaylorTdAgent::TaylorTdAgent(const AgentConfig& config, Rng init_rng)
    : config_(config), memory_(config.replay_capacity, config.priority_exponent) {
    std::vector<int> actor_widths{kStateDim};
    actor_widths.insert(actor_widths.end(), config.hidden.begin(), config.hidden.end());
    actor_widths.push_back(kActionDim);
    std::vector<int> critic_widths{kStateDim + kActionDim};
    critic_widths.insert(critic_widths.end(), config.hidden.begin(), config.hidden.end());
    critic_widths.push_back(1);

    Rng actor_rng = init_rng.fork(1);
    Rng critic_rng = init_rng.fork(2);
    actor_ = Mlp(actor_widths, OutputActivation::Sigmoid, actor_rng);
    critic_ = Mlp(critic_widths, OutputActivation::Identity, critic_rng);
    target_actor_ = actor_;
    target_critic_ = critic_;
}

Eigen::VectorXd TaylorTdAgent::select_action(const Eigen::VectorXd& state, double epsilon,
                                             Rng& rng) const {
    if (epsilon < 0.0 || epsilon > 1.0) throw std::domain_error("select_action: epsilon outside [0,1]");
    if (rng.uniform() < epsilon) {
        Eigen::VectorXd a(kActionDim);
        for (int i = 0; i < kActionDim; ++i) a(i) = rng.uniform();
        return a;
    }
    Eigen::VectorXd a = actor_.forward(state);
    for (int i = 0; i < kActionDim; ++i) a(i) = clamp01(a(i));
    return a;
}

double TaylorTdAgent::critic_value(const Eigen::VectorXd& state,
                                   const Eigen::VectorXd& action) const {
    Eigen::VectorXd input(state.size() + action.size());
    input << state, action;
    return critic_.forward(input)(0);
}

Eigen::VectorXd TaylorTdAgent::critic_action_gradient(const Eigen::VectorXd& state,
                                                      const Eigen::VectorXd& action) const {
    Eigen::VectorXd input(state.size() + action.size());
    input << state, action;
    Mlp::Trace trace;
    critic_.forward(input, trace);
    auto grads = critic_.zero_like();
    Eigen::VectorXd upstream = Eigen::VectorXd::Ones(1);
    const Eigen::VectorXd input_grad = critic_.backward(trace, upstream, grads);
    return input_grad.tail(action.size());
}

double TaylorTdAgent::td_error(const Transition& t) const {
    double target = t.reward;
    if (!t.terminal) {
        const Eigen::VectorXd next_action = target_actor_.forward(t.next_state);
        Eigen::VectorXd input(t.next_state.size() + next_action.size());
        input << t.next_state, next_action;
        target += config_.discount * target_critic_.forward(input)(0);
    }
    return target - critic_value(t.state, t.action);
}

void TaylorTdAgent::remember(Transition transition) {
    transition.priority = std::max(memory_.max_priority(), config_.priority_floor);
    memory_.push(std::move(transition));
}

std::optional<UpdateStats> TaylorTdAgent::train_step(Rng& rng) {
    if (memory_.size() < static_cast<std::size_t>(config_.batch_size)) return std::nullopt;
    const auto indices = memory_.sample(static_cast<std::size_t>(config_.batch_size), rng);
    return update_batch(indices);
}

UpdateStats TaylorTdAgent::update_batch(const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw std::invalid_argument("update_batch: empty batch");
    UpdateStats stats;
    auto critic_grads = critic_.zero_like();
    auto actor_grads = actor_.zero_like();
    int used = 0;

    for (const std::size_t index : indices) {
        const Transition& t = memory_.at(index);
        const double delta = td_error(t);

        // First-order correction: displacement between the current policy
        // and the stored behavior action, paired with dQ/da at the stored
        // action.
        double correction = 0.0;
        if (config_.taylor_correction) {
            const Eigen::VectorXd policy_action = actor_.forward(t.state);
            const Eigen::VectorXd action_grad = critic_action_gradient(t.state, t.action);
            correction = action_grad.dot(policy_action - t.action);
        }
        const double residual = delta + correction;

        Eigen::VectorXd input(t.state.size() + t.action.size());
        input << t.state, t.action;
        Mlp::Trace critic_trace;
        critic_.forward(input, critic_trace);
        // Semi-gradient of 0.5 * residual^2 with the target held fixed.
        Eigen::VectorXd upstream(1);
        upstream(0) = -residual;

        auto critic_step = critic_.zero_like();
        critic_.backward(critic_trace, upstream, critic_step);

        // Deterministic policy gradient through the current critic.
        Mlp::Trace actor_trace;
        const Eigen::VectorXd policy_action = actor_.forward(t.state, actor_trace);
        const Eigen::VectorXd q_grad = critic_action_gradient(t.state, policy_action);
        auto actor_step = actor_.zero_like();
        actor_.backward(actor_trace, -q_grad, actor_step); // ascend Q

        bool finite = std::isfinite(residual);
        for (const auto& layer : critic_step) {
            finite = finite && layer.weight.allFinite() && layer.bias.allFinite();
        }
        for (const auto& layer : actor_step) {
            finite = finite && layer.weight.allFinite() && layer.bias.allFinite();
        }
        if (!finite) {
            ++stats.skipped;
            continue;
        }
        for (std::size_t l = 0; l < critic_grads.size(); ++l) {
            critic_grads[l].weight += critic_step[l].weight;
            critic_grads[l].bias += critic_step[l].bias;
        }
        for (std::size_t l = 0; l < actor_grads.size(); ++l) {
            actor_grads[l].weight += actor_step[l].weight;
            actor_grads[l].bias += actor_step[l].bias;
        }
        ++used;
        stats.mean_abs_td_error += std::abs(delta);
        memory_.set_priority(index, std::abs(delta) + config_.priority_floor);
    }

    if (used > 0) {
        const double inv = 1.0 / used;
        for (auto& layer : critic_grads) {
            layer.weight *= inv;
            layer.bias *= inv;
        }
        for (auto& layer : actor_grads) {
            layer.weight *= inv;
            layer.bias *= inv;
        }
        const double beta = config_.momentum ? config_.momentum_beta : 0.0;
        critic_.apply_gradient(critic_grads, config_.learning_rate, beta, &critic_velocity_);
        actor_.apply_gradient(actor_grads, config_.learning_rate, beta, &actor_velocity_);
        stats.mean_abs_td_error /= used;
    }
    ++steps_since_sync_;
    return stats;
}

void TaylorTdAgent::sync_targets() {
    target_actor_.copy_weights_from(actor_);
    target_critic_.copy_weights_from(critic_);
    steps_since_sync_ = 0;
}

void TaylorTdAgent::save(std::ostream& out) const {
    out << "taylor-td-agent v1\n";
    actor_.save(out);
    critic_.save(out);
    target_actor_.save(out);
    target_critic_.save(out);
}

void TaylorTdAgent::load(std::istream& in) {
    std::string a, b;
    in >> a >> b;
    if (a != "taylor-td-agent" || b != "v1") {
        throw std::runtime_error("agent: bad checkpoint header");
    }
    actor_ = Mlp::load(in);
    critic_ = Mlp::load(in);
    target_actor_ = Mlp::load(in);
    target_critic_ = Mlp::load(in);
}

} // namespace isacsim::rl
