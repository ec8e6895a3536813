#include "isacsim/simulate.hpp"

#include "isacsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace isacsim::sim {

namespace {

constexpr double kRelTol = 1e-9;
// Reported QoE is clamped below so a starved allocation (zero rate or
// compute) cannot drive run means to -inf.
constexpr double kQoeFloor = -10.0;

double overhead_bandwidth(double bits, const SimConfig& config) {
    return bits / config.slot_duration_s / config.collection_spectral_eff;
}

double clamp_qoe(double value) {
    if (!std::isfinite(value)) return kQoeFloor;
    return std::max(value, kQoeFloor);
}

} // namespace

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::Proposed: return "proposed";
        case Scheme::RoundRobin: return "round-robin";
        case Scheme::Greedy: return "greedy";
    }
    return "unknown";
}

Scheme parse_scheme(const std::string& name) {
    if (name == "proposed") return Scheme::Proposed;
    if (name == "round-robin" || name == "roundrobin") return Scheme::RoundRobin;
    if (name == "greedy") return Scheme::Greedy;
    throw std::invalid_argument("unknown scheme: " + name);
}

double RunMetrics::mean_qoe() const {
    if (slots.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& s : slots) sum += s.mean_qoe;
    return sum / static_cast<double>(slots.size());
}

Runner::Runner(const SimConfig& config, std::uint64_t seed)
    : config_(config),
      seed_(seed),
      users_(scenario::generate_users(config, Rng(Rng::splitmix(seed ^ 0xA11CE5ULL)))),
      agent_(config.agent, Rng(Rng::splitmix(seed ^ 0xAC708ULL))) {
    behavior_max_ = scenario::calibrate_behavior_max(config_, users_, seed);
    ranges_ = config_.state_ranges;
    ranges_.behavior_max = behavior_max_;
    ranges_.env_max = 1.0;
    ranges_.file_mb_min = config_.file_size_min_mb;
    ranges_.file_mb_max = config_.file_size_max_mb;
    reset_digital_agents();
}

void Runner::reset_digital_agents() {
    das_.clear();
    das_.reserve(users_.size());
    for (std::size_t i = 0; i < users_.size(); ++i) das_.emplace_back(config_.da);
    da_read_count_ = 0;
}

std::vector<std::vector<agent::DaWindow>> Runner::da_histories() const {
    std::vector<std::vector<agent::DaWindow>> out;
    out.reserve(das_.size());
    for (const auto& da : das_) out.push_back(da.windows());
    return out;
}

sca::UserInstance Runner::instance_for(int user, const scenario::SlotUserState& state,
                                       bool da_view) const {
    ++da_read_count_;
    const auto u = static_cast<std::size_t>(user);
    sca::UserInstance inst;
    inst.model = das_[u].model().spec;
    inst.model.quality_shape = config_.quality_shape;
    if (da_view) {
        inst.context.behavior_dynamics = das_[u].behavior_estimate();
        inst.context.env_complexity = das_[u].env_estimate();
    } else {
        inst.context.behavior_dynamics = state.behavior_dynamics;
        inst.context.env_complexity = users_[u].env_complexity;
    }
    inst.context.behavior_max = behavior_max_;
    inst.context.env_max = 1.0;
    inst.demand.file_size_bits = units::mb_to_bits(state.file_size_mb);
    inst.demand.cycles_per_bit =
        units::cycles_per_mb_to_per_bit(config_.compute_density_cycles_per_mb);
    inst.comm_gain = state.comm_gain;
    inst.noise_psd = config_.noise_psd_w_per_hz;
    inst.minima = sensing::feasibility_minima(scenario::sensing_channel_at(config_, state),
                                              config_.thresholds, config_.waveform);
    return inst;
}

double Runner::reported_qoe(int user, const scenario::SlotUserState& state,
                            const qoe::Allocation& allocation, bool generic) const {
    const auto u = static_cast<std::size_t>(user);
    const qoe::ServiceDemand demand{
        units::mb_to_bits(state.file_size_mb),
        units::cycles_per_mb_to_per_bit(config_.compute_density_cycles_per_mb)};
    const double rate = qoe::transmission_rate(allocation.bandwidth_hz, allocation.power_w,
                                               state.comm_gain, config_.noise_psd_w_per_hz);
    if (generic) {
        // Without digital agents the network scores users with the generic
        // fixed model and a unit impact factor.
        qoe::QoeModelSpec spec;
        spec.quality_shape = config_.quality_shape;
        return clamp_qoe(qoe::qos(spec, demand, allocation.compute_cps, rate));
    }
    ++da_read_count_;
    qoe::QoeModelSpec spec = das_[u].model().spec;
    spec.quality_shape = config_.quality_shape;
    const qoe::UserContext ctx{state.behavior_dynamics, users_[u].env_complexity, behavior_max_,
                               1.0};
    return clamp_qoe(qoe::qos(spec, demand, allocation.compute_cps, rate) * qoe::impact(ctx));
}

std::array<rl::GroupSummary, rl::kGroupCount> Runner::summarize_groups(
    const agent::UserClusters& clusters,
    const std::vector<scenario::SlotUserState>& row) const {
    ++da_read_count_;
    std::array<rl::GroupSummary, rl::kGroupCount> out;
    const std::array<const std::vector<int>*, 2> groups{&clusters.linear_users,
                                                        &clusters.ratio_users};
    const double total = static_cast<double>(users_.size());
    for (int g = 0; g < rl::kGroupCount; ++g) {
        const auto& members = *groups[static_cast<std::size_t>(g)];
        rl::GroupSummary& s = out[static_cast<std::size_t>(g)];
        if (members.empty()) continue;
        s.empty = false;
        s.size_fraction = static_cast<double>(members.size()) / total;
        for (const int m : members) {
            const auto u = static_cast<std::size_t>(m);
            s.mean_behavior += das_[u].behavior_estimate();
            s.mean_env += das_[u].env_estimate();
            s.mean_sensing_gain += row[u].sensing_gain;
            s.mean_comm_gain += row[u].comm_gain;
            s.mean_file_mb += row[u].file_size_mb;
            const auto& omega = das_[u].model().spec.omega;
            for (std::size_t j = 0; j < 3; ++j) s.mean_omega[j] += omega[j];
        }
        const double inv = 1.0 / static_cast<double>(members.size());
        s.mean_behavior *= inv;
        s.mean_env *= inv;
        s.mean_sensing_gain *= inv;
        s.mean_comm_gain *= inv;
        s.mean_file_mb *= inv;
        for (auto& w : s.mean_omega) w *= inv;
    }
    return out;
}

void Runner::record_slot(RunMetrics& metrics, const SlotOutcome& outcome,
                         const std::vector<scenario::SlotUserState>& row, int episode,
                         int slot) {
    SlotRecord rec;
    rec.episode = episode;
    rec.slot = slot;
    rec.mean_qoe = outcome.reward;
    rec.overhead_bandwidth_hz = outcome.overhead_bandwidth_hz;
    rec.feasible = outcome.feasible;

    double bw = 0.0, pw = 0.0, cp = 0.0;
    int satisfied = 0;
    const double slack = 1.0 + kRelTol;
    for (std::size_t u = 0; u < outcome.allocations.size(); ++u) {
        const auto& a = outcome.allocations[u];
        bw += a.bandwidth_hz;
        pw += a.power_w;
        cp += a.compute_cps;

        bool ok = a.power_w > 0.0 && a.bandwidth_hz > 0.0;
        if (ok) {
            const double gain = row[u].sensing_gain;
            const double bw_sq =
                sensing::effective_bandwidth_sq(a.bandwidth_hz, config_.waveform.pulse_width_s);
            ok = sensing::crb_distance(a.power_w, gain, bw_sq, config_.thresholds.lambda[0]) <=
                     config_.thresholds.alpha[0] * slack &&
                 sensing::crb_velocity(a.power_w, gain, config_.waveform.effective_time_s,
                                       config_.thresholds.lambda[1]) <=
                     config_.thresholds.alpha[1] * slack &&
                 sensing::crb_azimuth(a.power_w, gain, config_.waveform.beamwidth_rad,
                                      config_.thresholds.lambda[2]) <=
                     config_.thresholds.alpha[2] * slack;
        }
        if (ok) ++satisfied;
    }
    rec.bandwidth_used_hz = bw;
    rec.power_used_w = pw;
    rec.compute_used_cps = cp;
    rec.crb_satisfaction = outcome.allocations.empty()
                               ? 1.0
                               : static_cast<double>(satisfied) /
                                     static_cast<double>(outcome.allocations.size());

    // Conservation instrumentation: budget sums must hold in every slot and
    // scheme; CRB ceilings must hold whenever the slot is flagged feasible.
    if (bw + outcome.overhead_bandwidth_hz > config_.bandwidth_total_hz * slack ||
        pw > config_.power_total_w * slack || cp > config_.compute_total_cps * slack) {
        ++metrics.conservation_violations;
    }
    if (rec.feasible && rec.crb_satisfaction < 1.0) {
        ++metrics.conservation_violations;
    }
    metrics.slots.push_back(rec);
    metrics.user_qoe.push_back(outcome.user_qoe);
}

Runner::SlotOutcome Runner::run_slot_proposed(const std::vector<scenario::SlotUserState>& row,
                                              double epsilon, Rng& explore_rng, Rng& mos_rng,
                                              RunMetrics& metrics) {
    const int k = static_cast<int>(users_.size());
    SlotOutcome out;
    out.allocations.assign(static_cast<std::size_t>(k), {});
    out.user_qoe.assign(static_cast<std::size_t>(k), 0.0);

    // Collection decisions first; recording is deferred until the group has
    // paid for the upload.
    std::vector<std::array<bool, agent::kAttributeCount>> due(static_cast<std::size_t>(k));
    std::vector<double> overhead_bits(static_cast<std::size_t>(k), 0.0);
    for (int u = 0; u < k; ++u) {
        const auto su = static_cast<std::size_t>(u);
        for (int a = 0; a < agent::kAttributeCount; ++a) {
            due[su][static_cast<std::size_t>(a)] =
                das_[su].collect_due(static_cast<agent::DataAttribute>(a),
                                     config_.slot_duration_s);
        }
        overhead_bits[su] = das_[su].consume_overhead_bits();
    }

    std::vector<agent::FittedQoe> models;
    models.reserve(static_cast<std::size_t>(k));
    for (const auto& da : das_) models.push_back(da.model());
    const agent::UserClusters clusters = agent::cluster_users(models);

    out.state = rl::observe_state(summarize_groups(clusters, row), ranges_);
    out.action = agent_.select_action(out.state, epsilon, explore_rng);
    auto budgets = rl::normalize_action(
        out.action,
        {config_.bandwidth_total_hz, config_.power_total_w, config_.compute_total_cps});

    const std::array<const std::vector<int>*, 2> groups{&clusters.linear_users,
                                                        &clusters.ratio_users};
    std::array<bool, 2> collected{true, true};
    for (int g = 0; g < 2; ++g) {
        double bits = 0.0;
        for (const int u : *groups[static_cast<std::size_t>(g)]) {
            bits += overhead_bits[static_cast<std::size_t>(u)];
        }
        const double cost = overhead_bandwidth(bits, config_);
        auto& budget = budgets[static_cast<std::size_t>(g)];
        if (cost <= 0.5 * budget.bandwidth_hz) {
            budget.bandwidth_hz -= cost;
            out.overhead_bandwidth_hz += cost;
        } else {
            // The group cannot afford the upload this slot; samples are lost
            // and nothing is charged.
            collected[static_cast<std::size_t>(g)] = false;
        }
    }

    out.feasible = true;
    for (int g = 0; g < 2; ++g) {
        const auto& members = *groups[static_cast<std::size_t>(g)];
        if (members.empty()) continue;
        std::vector<sca::UserInstance> instances;
        instances.reserve(members.size());
        for (const int u : members) {
            instances.push_back(instance_for(u, row[static_cast<std::size_t>(u)], true));
        }
        const sca::SolveResult result =
            sca::solve_group(budgets[static_cast<std::size_t>(g)], instances, config_.solver);
        if (!result.feasible) out.feasible = false;
        if (result.degraded) ++metrics.solver_failures;
        for (std::size_t i = 0; i < members.size(); ++i) {
            out.allocations[static_cast<std::size_t>(members[i])] = result.allocations[i];
        }
    }

    // Measured QoE under the fitted models and the true slot context; the
    // reward is its mean over all users.
    double reward = 0.0;
    for (int u = 0; u < k; ++u) {
        const auto su = static_cast<std::size_t>(u);
        const double value = reported_qoe(u, row[su], out.allocations[su], false);
        out.user_qoe[su] = value;
        reward += value;
    }
    out.reward = reward / k;

    for (int g = 0; g < 2; ++g) {
        if (!collected[static_cast<std::size_t>(g)]) continue;
        for (const int u : *groups[static_cast<std::size_t>(g)]) {
            const auto su = static_cast<std::size_t>(u);
            auto& da = das_[su];
            if (due[su][0]) da.record_behavior(row[su].behavior_dynamics);
            if (due[su][2]) da.record_environment(users_[su].env_complexity);
            if (due[su][1]) {
                const auto& alloc = out.allocations[su];
                const double rate =
                    qoe::transmission_rate(alloc.bandwidth_hz, alloc.power_w, row[su].comm_gain,
                                           config_.noise_psd_w_per_hz);
                const qoe::ServiceDemand demand{
                    units::mb_to_bits(row[su].file_size_mb),
                    units::cycles_per_mb_to_per_bit(config_.compute_density_cycles_per_mb)};
                const double latency = qoe::service_latency(demand, alloc.compute_cps, rate);
                const double quality =
                    qoe::content_quality(row[su].file_size_mb, config_.quality_shape);
                if (std::isfinite(latency)) {
                    const double mos = scenario::mos_oracle(users_[su].principle, latency,
                                                            quality, mos_rng);
                    da.record_performance(latency, quality, mos);
                }
            }
        }
    }
    for (auto& da : das_) da.end_slot(behavior_max_, 1.0);
    return out;
}

Runner::SlotOutcome Runner::run_slot_round_robin(
    const std::vector<scenario::SlotUserState>& row, RunMetrics& metrics) {
    (void)metrics;
    const int k = static_cast<int>(users_.size());
    SlotOutcome out;
    out.allocations.assign(static_cast<std::size_t>(k), {});
    out.user_qoe.assign(static_cast<std::size_t>(k), 0.0);
    double reward = 0.0;
    for (int u = 0; u < k; ++u) {
        const auto su = static_cast<std::size_t>(u);
        auto& a = out.allocations[su];
        a.bandwidth_hz = config_.bandwidth_total_hz / k;
        a.power_w = config_.power_total_w / k;
        a.compute_cps = config_.compute_total_cps / k;
        const double value = reported_qoe(u, row[su], a, true);
        out.user_qoe[su] = value;
        reward += value;
    }
    out.reward = reward / k;
    out.feasible = false; // no sensing-aware admission; CRBs are not asserted
    return out;
}

Runner::SlotOutcome Runner::run_slot_greedy(const std::vector<scenario::SlotUserState>& row,
                                            Rng& mos_rng, RunMetrics& metrics) {
    (void)metrics;
    const int k = static_cast<int>(users_.size());
    SlotOutcome out;
    out.allocations.assign(static_cast<std::size_t>(k), {});
    out.user_qoe.assign(static_cast<std::size_t>(k), 0.0);

    std::vector<std::array<bool, agent::kAttributeCount>> due(static_cast<std::size_t>(k));
    double total_bits = 0.0;
    for (int u = 0; u < k; ++u) {
        const auto su = static_cast<std::size_t>(u);
        for (int a = 0; a < agent::kAttributeCount; ++a) {
            due[su][static_cast<std::size_t>(a)] = das_[su].collect_due(
                static_cast<agent::DataAttribute>(a), config_.slot_duration_s);
        }
        total_bits += das_[su].consume_overhead_bits();
    }
    bool collected = true;
    double available_bw = config_.bandwidth_total_hz;
    {
        const double cost = overhead_bandwidth(total_bits, config_);
        if (cost <= 0.5 * available_bw) {
            available_bw -= cost;
            out.overhead_bandwidth_hz = cost;
        } else {
            collected = false;
        }
    }

    std::vector<sca::UserInstance> instances;
    instances.reserve(static_cast<std::size_t>(k));
    for (int u = 0; u < k; ++u) {
        instances.push_back(instance_for(u, row[static_cast<std::size_t>(u)], true));
    }
    const sca::GroupBudget budget{available_bw, config_.power_total_w,
                                  config_.compute_total_cps};

    const auto feas = sca::feasibility_check(budget, instances);
    out.feasible = feas.feasible;

    std::vector<qoe::Allocation> alloc(static_cast<std::size_t>(k));
    double bw_left = 0.0, pw_left = 0.0, cp_left = 0.0;
    if (!feas.feasible) {
        alloc = sca::projected_minimum_allocation(budget, instances);
    } else {
        // Sensing minima first: the cheapest power meeting the per-user
        // floor, with the induced bandwidth floor on top.
        double bw_sum = 0.0, pw_sum = 0.0;
        const double fair_bw = budget.bandwidth_hz / k;
        for (int u = 0; u < k; ++u) {
            const auto su = static_cast<std::size_t>(u);
            double p = feas.power_min_w[su];
            if (feas.power_bandwidth_min[su] > 0.0 && fair_bw > 0.0) {
                p = std::max(p, feas.power_bandwidth_min[su] / fair_bw);
            }
            alloc[su].power_w = p;
            alloc[su].bandwidth_hz =
                p > 0.0 ? feas.power_bandwidth_min[su] / p : 0.0;
            bw_sum += alloc[su].bandwidth_hz;
            pw_sum += alloc[su].power_w;
        }
        if (bw_sum > budget.bandwidth_hz || pw_sum > budget.power_w) {
            // Tight instance: fall back to the feasibility assignment.
            bw_sum = pw_sum = 0.0;
            for (int u = 0; u < k; ++u) {
                const auto su = static_cast<std::size_t>(u);
                alloc[su].power_w = feas.power_assigned_w[su];
                alloc[su].bandwidth_hz = feas.bandwidth_needed_hz[su];
                bw_sum += alloc[su].bandwidth_hz;
                pw_sum += alloc[su].power_w;
            }
        }
        bw_left = std::max(0.0, budget.bandwidth_hz - bw_sum);
        pw_left = std::max(0.0, budget.power_w - pw_sum);
        cp_left = budget.compute_cps;

        // Seed every user with a sliver of each resource so marginal gains
        // are finite.
        const double bw_seed = bw_left * 1e-6 / k;
        const double pw_seed = pw_left * 1e-6 / k;
        const double cp_seed = cp_left * 1e-6 / k;
        for (int u = 0; u < k; ++u) {
            const auto su = static_cast<std::size_t>(u);
            alloc[su].bandwidth_hz += bw_seed;
            alloc[su].power_w += pw_seed;
            alloc[su].compute_cps += cp_seed;
        }
        bw_left *= 1.0 - 1e-6;
        pw_left *= 1.0 - 1e-6;
        cp_left *= 1.0 - 1e-6;

        const int quanta = std::max(1, config_.greedy_quanta);
        const double bw_q = bw_left / quanta;
        const double pw_q = pw_left / quanta;
        const double cp_q = cp_left / quanta;
        auto value_of = [&](int u, const qoe::Allocation& a) {
            const auto& inst = instances[static_cast<std::size_t>(u)];
            const double v = qoe::qoe_value(inst.model, inst.context, inst.demand, a,
                                            inst.comm_gain, inst.noise_psd);
            return std::isfinite(v) ? v : kQoeFloor;
        };
        std::vector<double> current(static_cast<std::size_t>(k));
        for (int u = 0; u < k; ++u) {
            current[static_cast<std::size_t>(u)] = value_of(u, alloc[static_cast<std::size_t>(u)]);
        }

        int bw_tokens = bw_q > 0.0 ? quanta : 0;
        int pw_tokens = pw_q > 0.0 ? quanta : 0;
        int cp_tokens = cp_q > 0.0 ? quanta : 0;
        while (bw_tokens + pw_tokens + cp_tokens > 0) {
            int best_user = -1;
            int best_resource = -1;
            double best_gain = -std::numeric_limits<double>::infinity();
            for (int u = 0; u < k; ++u) {
                const auto su = static_cast<std::size_t>(u);
                for (int r = 0; r < 3; ++r) {
                    if ((r == 0 && bw_tokens == 0) || (r == 1 && pw_tokens == 0) ||
                        (r == 2 && cp_tokens == 0)) {
                        continue;
                    }
                    qoe::Allocation trial = alloc[su];
                    if (r == 0) trial.bandwidth_hz += bw_q;
                    if (r == 1) trial.power_w += pw_q;
                    if (r == 2) trial.compute_cps += cp_q;
                    const double gain = value_of(u, trial) - current[su];
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_user = u;
                        best_resource = r;
                    }
                }
            }
            if (best_user < 0) break;
            const auto su = static_cast<std::size_t>(best_user);
            if (best_resource == 0) {
                alloc[su].bandwidth_hz += bw_q;
                --bw_tokens;
            } else if (best_resource == 1) {
                alloc[su].power_w += pw_q;
                --pw_tokens;
            } else {
                alloc[su].compute_cps += cp_q;
                --cp_tokens;
            }
            current[su] = value_of(best_user, alloc[su]);
        }
    }
    out.allocations = std::move(alloc);

    double reward = 0.0;
    for (int u = 0; u < k; ++u) {
        const auto su = static_cast<std::size_t>(u);
        const double value = reported_qoe(u, row[su], out.allocations[su], false);
        out.user_qoe[su] = value;
        reward += value;
    }
    out.reward = reward / k;

    if (collected) {
        for (int u = 0; u < k; ++u) {
            const auto su = static_cast<std::size_t>(u);
            auto& da = das_[su];
            if (due[su][0]) da.record_behavior(row[su].behavior_dynamics);
            if (due[su][2]) da.record_environment(users_[su].env_complexity);
            if (due[su][1]) {
                const auto& a = out.allocations[su];
                const double rate = qoe::transmission_rate(
                    a.bandwidth_hz, a.power_w, row[su].comm_gain, config_.noise_psd_w_per_hz);
                const qoe::ServiceDemand demand{
                    units::mb_to_bits(row[su].file_size_mb),
                    units::cycles_per_mb_to_per_bit(config_.compute_density_cycles_per_mb)};
                const double latency = qoe::service_latency(demand, a.compute_cps, rate);
                const double quality =
                    qoe::content_quality(row[su].file_size_mb, config_.quality_shape);
                if (std::isfinite(latency)) {
                    const double mos = scenario::mos_oracle(users_[su].principle, latency,
                                                            quality, mos_rng);
                    da.record_performance(latency, quality, mos);
                }
            }
        }
    }
    for (auto& da : das_) da.end_slot(behavior_max_, 1.0);
    return out;
}

RunMetrics Runner::train() {
    RunMetrics metrics;
    reset_digital_agents();
    Rng explore_rng(Rng::splitmix(seed_ ^ 0xE4B10ULL));
    Rng mos_rng(Rng::splitmix(seed_ ^ 0x305EULL));
    Rng replay_rng(Rng::splitmix(seed_ ^ 0x3EA1ULL));

    const int total_steps = config_.episodes * config_.slots_per_episode;
    int step_counter = 0;

    struct Pending {
        Eigen::VectorXd state;
        Eigen::VectorXd action;
        double reward = 0.0;
        bool valid = false;
    } pending;

    for (int ep = 0; ep < config_.episodes; ++ep) {
        const scenario::EpisodeData data =
            scenario::generate_episode(config_, users_, seed_, ep);
        pending.valid = false;
        for (int n = 0; n < config_.slots_per_episode; ++n) {
            const double eps = rl::epsilon_at(config_.agent, step_counter, total_steps);
            SlotOutcome out = run_slot_proposed(data.slots[static_cast<std::size_t>(n)], eps,
                                                explore_rng, mos_rng, metrics);
            record_slot(metrics, out, data.slots[static_cast<std::size_t>(n)], ep, n);

            if (pending.valid) {
                agent_.remember(
                    {pending.state, pending.action, pending.reward, out.state, false, 1.0});
            }
            pending = {out.state, out.action, out.reward, true};

            double mean_abs_td = 0.0;
            if (const auto stats = agent_.train_step(replay_rng)) {
                mean_abs_td = stats->mean_abs_td_error;
            }
            if (agent_.steps_since_sync() >= config_.agent.target_sync_period) {
                agent_.sync_targets();
            }
            metrics.rewards.push_back({ep, n, out.reward, eps, mean_abs_td});
            ++step_counter;
        }
        if (pending.valid) {
            agent_.remember({pending.state, pending.action, pending.reward,
                             Eigen::VectorXd::Zero(rl::kStateDim), true, 1.0});
            pending.valid = false;
        }
    }
    return metrics;
}

RunMetrics Runner::evaluate(Scheme scheme, int episodes) {
    RunMetrics metrics;
    reset_digital_agents();
    Rng explore_rng(Rng::splitmix(seed_ ^ 0xEEE7ULL));
    Rng mos_rng(Rng::splitmix(seed_ ^ 0x9059ULL));
    const long reads_before = da_read_count_;

    for (int ep = 0; ep < episodes; ++ep) {
        const scenario::EpisodeData data =
            scenario::generate_episode(config_, users_, seed_, 100000 + ep);
        for (int n = 0; n < config_.slots_per_episode; ++n) {
            const auto& row = data.slots[static_cast<std::size_t>(n)];
            SlotOutcome out;
            switch (scheme) {
                case Scheme::Proposed:
                    out = run_slot_proposed(row, 0.0, explore_rng, mos_rng, metrics);
                    break;
                case Scheme::RoundRobin:
                    out = run_slot_round_robin(row, metrics);
                    break;
                case Scheme::Greedy:
                    out = run_slot_greedy(row, mos_rng, metrics);
                    break;
            }
            record_slot(metrics, out, row, ep, n);
        }
    }
    if (scheme == Scheme::RoundRobin) {
        metrics.baseline_da_reads = da_read_count_ - reads_before;
    }
    return metrics;
}

// ---------------------------------------------------------------------------

SweepAxis parse_axis(const std::string& name) {
    if (name == "users") return SweepAxis::Users;
    if (name == "bandwidth") return SweepAxis::Bandwidth;
    if (name == "compute") return SweepAxis::Compute;
    if (name == "alpha1") return SweepAxis::Alpha1;
    if (name == "alpha2") return SweepAxis::Alpha2;
    if (name == "alpha3") return SweepAxis::Alpha3;
    if (name == "nu1") return SweepAxis::Nu1;
    if (name == "nu2") return SweepAxis::Nu2;
    if (name == "nu3") return SweepAxis::Nu3;
    throw std::invalid_argument("unknown sweep axis: " + name);
}

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Users: return "users";
        case SweepAxis::Bandwidth: return "bandwidth";
        case SweepAxis::Compute: return "compute";
        case SweepAxis::Alpha1: return "alpha1";
        case SweepAxis::Alpha2: return "alpha2";
        case SweepAxis::Alpha3: return "alpha3";
        case SweepAxis::Nu1: return "nu1";
        case SweepAxis::Nu2: return "nu2";
        case SweepAxis::Nu3: return "nu3";
    }
    return "unknown";
}

SimConfig apply_axis(SimConfig config, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::Users: config.users = static_cast<int>(value); break;
        case SweepAxis::Bandwidth: config.bandwidth_total_hz = value; break;
        case SweepAxis::Compute: config.compute_total_cps = value; break;
        case SweepAxis::Alpha1: config.thresholds.alpha[0] = value; break;
        case SweepAxis::Alpha2: config.thresholds.alpha[1] = value; break;
        case SweepAxis::Alpha3: config.thresholds.alpha[2] = value; break;
        case SweepAxis::Nu1: config.da.collection.attenuation[0] = value; break;
        case SweepAxis::Nu2: config.da.collection.attenuation[1] = value; break;
        case SweepAxis::Nu3: config.da.collection.attenuation[2] = value; break;
    }
    return config;
}

std::vector<SweepRow> run_sweep(const SimConfig& base, SweepAxis axis,
                                const std::vector<double>& values,
                                const std::vector<Scheme>& schemes) {
    std::vector<SweepRow> rows;
    const int seeds = std::max(1, base.sweep_seeds);

    std::vector<rl::TaylorTdAgent> trained;
    const bool needs_proposed =
        std::find(schemes.begin(), schemes.end(), Scheme::Proposed) != schemes.end();
    if (needs_proposed && !base.sweep_retrain) {
        for (int s = 0; s < seeds; ++s) {
            Runner runner(base, base.seed + static_cast<std::uint64_t>(s));
            runner.train();
            trained.push_back(runner.agent());
        }
    }

    for (const double value : values) {
        const SimConfig cfg = apply_axis(base, axis, value);
        for (const Scheme scheme : schemes) {
            std::vector<double> per_seed;
            per_seed.reserve(static_cast<std::size_t>(seeds));
            for (int s = 0; s < seeds; ++s) {
                Runner runner(cfg, cfg.seed + static_cast<std::uint64_t>(s));
                if (scheme == Scheme::Proposed) {
                    if (base.sweep_retrain) {
                        runner.train();
                    } else {
                        runner.set_agent(trained[static_cast<std::size_t>(s)]);
                    }
                }
                per_seed.push_back(runner.evaluate(scheme, cfg.eval_episodes).mean_qoe());
            }
            SweepRow row;
            row.axis = axis;
            row.value = value;
            row.scheme = scheme;
            row.seeds = seeds;
            double mean = 0.0;
            for (const double v : per_seed) mean += v;
            mean /= static_cast<double>(per_seed.size());
            double var = 0.0;
            for (const double v : per_seed) var += (v - mean) * (v - mean);
            row.mean_qoe = mean;
            row.std_qoe =
                per_seed.size() > 1 ? std::sqrt(var / static_cast<double>(per_seed.size() - 1))
                                    : 0.0;
            rows.push_back(row);
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------

void write_reward_curve_csv(std::ostream& out, const RunMetrics& metrics) {
    out << "episode,step,reward,epsilon,mean_abs_td\n";
    char buf[160];
    for (const auto& r : metrics.rewards) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.9g,%.9g,%.9g\n", r.episode, r.slot, r.reward,
                      r.epsilon, r.mean_abs_td);
        out << buf;
    }
}

void write_qoe_per_slot_csv(std::ostream& out, const RunMetrics& metrics, Scheme scheme) {
    out << "episode,slot,scheme,mean_qoe,crb_satisfaction,bandwidth_used_hz,power_used_w,"
           "compute_used_cps,overhead_bandwidth_hz,feasible\n";
    char buf[320];
    const std::string name = scheme_name(scheme);
    for (const auto& s : metrics.slots) {
        std::snprintf(buf, sizeof buf, "%d,%d,%s,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%d\n", s.episode,
                      s.slot, name.c_str(), s.mean_qoe, s.crb_satisfaction, s.bandwidth_used_hz,
                      s.power_used_w, s.compute_used_cps, s.overhead_bandwidth_hz,
                      s.feasible ? 1 : 0);
        out << buf;
    }
}

void write_qoe_cdf_csv(std::ostream& out,
                       const std::vector<std::pair<Scheme, const RunMetrics*>>& runs) {
    out << "scheme,qoe,cum_prob\n";
    char buf[160];
    for (const auto& [scheme, metrics] : runs) {
        std::vector<double> values;
        for (const auto& row : metrics->user_qoe) {
            values.insert(values.end(), row.begin(), row.end());
        }
        std::sort(values.begin(), values.end());
        const std::string name = scheme_name(scheme);
        for (std::size_t i = 0; i < values.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%s,%.9g,%.9g\n", name.c_str(), values[i],
                          static_cast<double>(i + 1) / static_cast<double>(values.size()));
            out << buf;
        }
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "axis,value,scheme,mean_qoe,std_qoe,seeds\n";
    char buf[200];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%.9g,%s,%.9g,%.9g,%d\n", axis_name(r.axis).c_str(),
                      r.value, scheme_name(r.scheme).c_str(), r.mean_qoe, r.std_qoe, r.seeds);
        out << buf;
    }
}

} // namespace isacsim::sim
