#ifndef ISACSIM_SIMULATE_HPP
#define ISACSIM_SIMULATE_HPP

#include "isacsim/da.hpp"
#include "isacsim/rl.hpp"
#include "isacsim/scenario.hpp"
#include "isacsim/sca.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace isacsim::sim {

enum class Scheme { Proposed, RoundRobin, Greedy };

std::string scheme_name(Scheme scheme);
Scheme parse_scheme(const std::string& name);

struct SlotRecord {
    int episode = 0;
    int slot = 0;
    double mean_qoe = 0.0;
    double crb_satisfaction = 0.0; // fraction of users meeting all three ceilings
    double bandwidth_used_hz = 0.0;
    double power_used_w = 0.0;
    double compute_used_cps = 0.0;
    double overhead_bandwidth_hz = 0.0;
    bool feasible = true;
};

struct RewardRecord {
    int episode = 0;
    int slot = 0;
    double reward = 0.0;
    double epsilon = 0.0;
    double mean_abs_td = 0.0;
};

struct RunMetrics {
    std::vector<SlotRecord> slots;
    std::vector<RewardRecord> rewards;         // proposed training only
    std::vector<std::vector<double>> user_qoe; // per slot, per user
    long conservation_violations = 0;
    long solver_failures = 0;
    long baseline_da_reads = 0; // scheme-isolation instrumentation

    double mean_qoe() const;
};

// One self-contained run of a scheme on (config, seed): owns the user
// population, the per-user digital agents, and (for the proposed scheme)
// the group-level RL agent.
class Runner {
public:
    Runner(const SimConfig& config, std::uint64_t seed);

    // Full proposed-scheme training loop; returns the reward curve and
    // per-slot metrics.
    RunMetrics train();

    // Frozen-policy evaluation (epsilon = 0); digital agents run live.
    RunMetrics evaluate(Scheme scheme, int episodes);

    rl::TaylorTdAgent& agent() { return agent_; }
    const rl::TaylorTdAgent& agent() const { return agent_; }
    void set_agent(const rl::TaylorTdAgent& agent) { agent_ = agent; }

    const std::vector<scenario::UserProfile>& users() const { return users_; }
    double behavior_max() const { return behavior_max_; }
    const SimConfig& config() const { return config_; }

    // Window histories of the per-user digital agents after a run.
    std::vector<std::vector<agent::DaWindow>> da_histories() const;

private:
    struct SlotOutcome {
        std::vector<qoe::Allocation> allocations;
        std::vector<double> user_qoe;
        double reward = 0.0;
        double overhead_bandwidth_hz = 0.0;
        bool feasible = true;
        Eigen::VectorXd state;  // proposed only
        Eigen::VectorXd action; // proposed only
    };

    SlotOutcome run_slot_proposed(const std::vector<scenario::SlotUserState>& row,
                                  double epsilon, Rng& explore_rng, Rng& mos_rng,
                                  RunMetrics& metrics);
    SlotOutcome run_slot_round_robin(const std::vector<scenario::SlotUserState>& row,
                                     RunMetrics& metrics);
    SlotOutcome run_slot_greedy(const std::vector<scenario::SlotUserState>& row, Rng& mos_rng,
                                RunMetrics& metrics);

    void reset_digital_agents();
    sca::UserInstance instance_for(int user, const scenario::SlotUserState& state,
                                   bool da_view) const;
    double reported_qoe(int user, const scenario::SlotUserState& state,
                        const qoe::Allocation& allocation, bool generic) const;
    void record_slot(RunMetrics& metrics, const SlotOutcome& outcome,
                     const std::vector<scenario::SlotUserState>& row, int episode, int slot);
    std::array<rl::GroupSummary, rl::kGroupCount> summarize_groups(
        const agent::UserClusters& clusters,
        const std::vector<scenario::SlotUserState>& row) const;

    SimConfig config_;
    std::uint64_t seed_;
    std::vector<scenario::UserProfile> users_;
    double behavior_max_ = 1.0;
    rl::TaylorTdAgent agent_;
    std::vector<agent::UserAgent> das_;
    rl::StateRanges ranges_;
    // Scheme-isolation instrumentation: incremented by every DA read.
    mutable long da_read_count_ = 0;
};

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepAxis { Users, Bandwidth, Compute, Alpha1, Alpha2, Alpha3, Nu1, Nu2, Nu3 };

SweepAxis parse_axis(const std::string& name);
std::string axis_name(SweepAxis axis);
SimConfig apply_axis(SimConfig config, SweepAxis axis, double value);

struct SweepRow {
    SweepAxis axis;
    double value = 0.0;
    Scheme scheme = Scheme::Proposed;
    double mean_qoe = 0.0;
    double std_qoe = 0.0; // over seeds
    int seeds = 0;
};

// Evaluates every (value, scheme) pair over config.sweep_seeds derived
// seeds. The proposed agent is trained once per seed at the base config
// unless config.sweep_retrain is set.
std::vector<SweepRow> run_sweep(const SimConfig& base, SweepAxis axis,
                                const std::vector<double>& values,
                                const std::vector<Scheme>& schemes);

// ---------------------------------------------------------------------------
// CSV outputs (byte-stable for a fixed config and seed)

void write_reward_curve_csv(std::ostream& out, const RunMetrics& metrics);
void write_qoe_per_slot_csv(std::ostream& out, const RunMetrics& metrics, Scheme scheme);
void write_qoe_cdf_csv(std::ostream& out,
                       const std::vector<std::pair<Scheme, const RunMetrics*>>& runs);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

} // namespace isacsim::sim

#endif
