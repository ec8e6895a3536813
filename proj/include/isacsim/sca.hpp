#ifndef ISACSIM_SCA_HPP
#define ISACSIM_SCA_HPP

#include "isacsim/convex.hpp"
#include "isacsim/qoe.hpp"
#include "isacsim/sensing.hpp"

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

namespace isacsim::sca {

struct GroupBudget {
    double bandwidth_hz = 0.0;
    double power_w = 0.0;
    double compute_cps = 0.0;
};

// Everything the user-level solver needs to know about one user.
struct UserInstance {
    qoe::QoeModelSpec model;
    qoe::UserContext context;
    qoe::ServiceDemand demand;
    double comm_gain = 0.0;  // |h|^2
    double noise_psd = 1e-20;
    sensing::FeasibilityMinima minima;
};

struct SolverConfig {
    double tol_outer = 1e-4;
    int max_outer = 20;
    // Bilinear CRB handling: false = direct convex product floor,
    // true = McCormick relaxation with boxes from the previous iterate.
    bool mccormick_path = false;
    double mccormick_box_spread = 0.5; // previous iterate +/- 50%
    opt::SolverOptions inner;
    // Relative interior margin used when constructing feasible points.
    double interior_margin = 1e-6;
};

// Expansion point of the rate linearization for one user.
struct LinearizationPoint {
    double bandwidth_hz = 0.0;
    double power_w = 0.0;
    double compute_cps = 0.0;
    double rate_bps = 0.0;
    double multiplier = 0.0; // quadratic-transform auxiliary, ratio path only
};

// Affine surrogate of 1/R in (bandwidth, power): constant +
// per_bandwidth * B + per_power * P. Exact in value and gradient at the
// expansion point, and a global lower bound of the true 1/R.
struct RateSurrogate {
    double constant = 0.0;
    double per_bandwidth = 0.0;
    double per_power = 0.0;

    double at(double bandwidth_hz, double power_w) const {
        return constant + per_bandwidth * bandwidth_hz + per_power * power_w;
    }
};

RateSurrogate linearize_inv_rate(const LinearizationPoint& point, double comm_gain,
                                 double noise_psd);

struct McCormickBounds {
    double power_lo = 0.0, power_hi = 0.0;
    double bandwidth_lo = 0.0, bandwidth_hi = 0.0;
};

// Slack of the four envelope inequalities at (power, bandwidth, product);
// all nonnegative iff the point satisfies the relaxation.
std::array<double, 4> mccormick_envelope(const McCormickBounds& bounds, double power,
                                         double bandwidth, double product);

struct QuadraticTransformStep {
    double surrogate = 0.0;
    double multiplier_next = 0.0;
};

// One step of the quadratic transform for a ratio numerator / latency:
// surrogate value at the given multiplier and the maximizing multiplier.
QuadraticTransformStep quadratic_transform_step(double ratio_numerator, double latency_value,
                                                double multiplier);

struct FeasibilityReport {
    bool feasible = false;
    std::vector<double> power_min_w;
    std::vector<double> power_bandwidth_min;
    std::vector<double> power_assigned_w;    // minima plus equal share of leftover
    std::vector<double> bandwidth_needed_hz; // product floor at the assigned power
    std::vector<int> binding_users;          // users whose minima bind the budgets
};

FeasibilityReport feasibility_check(const GroupBudget& budget,
                                    std::span<const UserInstance> users);

struct SolveResult {
    std::vector<qoe::Allocation> allocations;
    double objective = 0.0; // true (non-surrogate) mean QoE at the final point
    int outer_iterations = 0;
    double kkt_residual = 0.0;
    bool feasible = false;
    bool degraded = false;
    std::vector<double> objective_trace; // true objective per outer iteration
};

// User-level allocation for a homogeneous group. The additive solver
// handles the linear QoS family; the fractional solver alternates
// quadratic-transform multiplier updates with convex solves.
SolveResult solve_group_additive(const GroupBudget& budget, std::span<const UserInstance> users,
                                 const SolverConfig& config);
SolveResult solve_group_fractional(const GroupBudget& budget,
                                   std::span<const UserInstance> users,
                                   const SolverConfig& config);

// Dispatch on the group's (homogeneous) model structure.
SolveResult solve_group(const GroupBudget& budget, std::span<const UserInstance> users,
                        const SolverConfig& config);

// True mean QoE of a set of allocations under the users' models.
double group_objective(std::span<const UserInstance> users,
                       std::span<const qoe::Allocation> allocations);

// Best-effort allocation when the feasibility check fails: per-user minima
// scaled onto the budgets. Never exceeds the budgets; CRB ceilings may be
// violated (the caller flags the slot).
std::vector<qoe::Allocation> projected_minimum_allocation(const GroupBudget& budget,
                                                          std::span<const UserInstance> users);

// Delimited-text instance dump/load for offline solver debugging.
void save_instance(std::ostream& out, const GroupBudget& budget,
                   std::span<const UserInstance> users);
struct LoadedInstance {
    GroupBudget budget;
    std::vector<UserInstance> users;
};
LoadedInstance load_instance(std::istream& in);

} // namespace isacsim::sca

#endif
