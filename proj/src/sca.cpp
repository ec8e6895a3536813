#include "isacsim/sca.hpp"

#include "isacsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace isacsim::sca {

namespace {
constexpr double kLn2 = std::numbers::ln2;
constexpr double kFloorFraction = 1e-6; // per-variable share floor
} // namespace

RateSurrogate linearize_inv_rate(const LinearizationPoint& point, double comm_gain,
                                 double noise_psd) {
    if (!(point.rate_bps > 0.0)) {
        throw std::domain_error("linearize_inv_rate: expansion rate must be positive");
    }
    if (!(point.bandwidth_hz > 0.0)) {
        throw std::domain_error("linearize_inv_rate: expansion bandwidth must be positive");
    }
    const double a = comm_gain / noise_psd;
    const double x = a * point.power_w / point.bandwidth_hz;
    const double denom = (1.0 + x) * kLn2;
    // Affine expansion of the rate itself; tangent to R at the point.
    const double per_b = std::log2(1.0 + x) - x / denom;
    const double per_p = a / denom;
    const double r = point.rate_bps;
    RateSurrogate s;
    s.constant = 2.0 / r;
    s.per_bandwidth = -per_b / (r * r);
    s.per_power = -per_p / (r * r);
    return s;
}

std::array<double, 4> mccormick_envelope(const McCormickBounds& bounds, double power,
                                         double bandwidth, double product) {
    if (bounds.power_lo > bounds.power_hi || bounds.bandwidth_lo > bounds.bandwidth_hi ||
        bounds.power_lo < 0.0 || bounds.bandwidth_lo < 0.0) {
        throw std::invalid_argument("mccormick_envelope: invalid bounds");
    }
    return {
        product - (power * bounds.bandwidth_lo + bandwidth * bounds.power_lo -
                   bounds.power_lo * bounds.bandwidth_lo),
        power * bounds.bandwidth_hi - product,
        bandwidth * bounds.power_hi - product,
        product,
    };
}

QuadraticTransformStep quadratic_transform_step(double ratio_numerator, double latency_value,
                                                double multiplier) {
    if (!(latency_value > 0.0)) {
        throw std::domain_error("quadratic_transform_step: latency must be positive");
    }
    if (ratio_numerator < 0.0) {
        throw std::domain_error("quadratic_transform_step: numerator must be nonnegative");
    }
    const double root = std::sqrt(ratio_numerator);
    QuadraticTransformStep step;
    step.surrogate = 2.0 * multiplier * root - multiplier * multiplier * latency_value;
    step.multiplier_next = root / latency_value;
    return step;
}

FeasibilityReport feasibility_check(const GroupBudget& budget,
                                    std::span<const UserInstance> users) {
    const int k = static_cast<int>(users.size());
    FeasibilityReport report;
    report.power_min_w.resize(k);
    report.power_bandwidth_min.resize(k);
    report.power_assigned_w.resize(k);
    report.bandwidth_needed_hz.resize(k);
    if (k == 0) {
        report.feasible = true;
        return report;
    }

    double power_sum = 0.0;
    for (int i = 0; i < k; ++i) {
        report.power_min_w[i] = users[i].minima.power_min_w;
        report.power_bandwidth_min[i] = users[i].minima.power_bandwidth_min;
        power_sum += report.power_min_w[i];
    }
    if (power_sum > budget.power_w) {
        report.feasible = false;
        for (int i = 0; i < k; ++i) {
            if (report.power_min_w[i] > budget.power_w / k) report.binding_users.push_back(i);
        }
        return report;
    }

    // Assign each user its power minimum plus an equal share of the leftover,
    // then check that the induced bandwidth floors fit the budget.
    const double leftover = (budget.power_w - power_sum) / k;
    double bandwidth_sum = 0.0;
    for (int i = 0; i < k; ++i) {
        report.power_assigned_w[i] = report.power_min_w[i] + leftover;
        report.bandwidth_needed_hz[i] =
            report.power_assigned_w[i] > 0.0
                ? report.power_bandwidth_min[i] / report.power_assigned_w[i]
                : (report.power_bandwidth_min[i] > 0.0
                       ? std::numeric_limits<double>::infinity()
                       : 0.0);
        bandwidth_sum += report.bandwidth_needed_hz[i];
    }
    report.feasible = bandwidth_sum <= budget.bandwidth_hz;
    if (!report.feasible) {
        for (int i = 0; i < k; ++i) {
            if (report.bandwidth_needed_hz[i] > budget.bandwidth_hz / k) {
                report.binding_users.push_back(i);
            }
        }
    }
    return report;
}

double group_objective(std::span<const UserInstance> users,
                       std::span<const qoe::Allocation> allocations) {
    if (users.empty()) return 0.0;
    if (users.size() != allocations.size()) {
        throw std::invalid_argument("group_objective: size mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < users.size(); ++i) {
        sum += qoe::qoe_value(users[i].model, users[i].context, users[i].demand,
                              allocations[i], users[i].comm_gain, users[i].noise_psd);
    }
    return sum / static_cast<double>(users.size());
}

std::vector<qoe::Allocation> projected_minimum_allocation(const GroupBudget& budget,
                                                          std::span<const UserInstance> users) {
    const int k = static_cast<int>(users.size());
    std::vector<qoe::Allocation> out(k);
    if (k == 0) return out;

    double power_sum = 0.0;
    for (const auto& u : users) power_sum += u.minima.power_min_w;
    const double power_scale = power_sum > budget.power_w ? budget.power_w / power_sum : 1.0;
    const double power_extra =
        power_sum > budget.power_w ? 0.0 : (budget.power_w - power_sum) / k;
    for (int i = 0; i < k; ++i) {
        out[i].power_w = users[i].minima.power_min_w * power_scale + power_extra;
    }

    double bw_sum = 0.0;
    std::vector<double> needed(k, 0.0);
    for (int i = 0; i < k; ++i) {
        needed[i] = out[i].power_w > 0.0 ? users[i].minima.power_bandwidth_min / out[i].power_w
                                         : 0.0;
        bw_sum += needed[i];
    }
    const double bw_scale = bw_sum > budget.bandwidth_hz ? budget.bandwidth_hz / bw_sum : 1.0;
    const double bw_extra =
        bw_sum > budget.bandwidth_hz ? 0.0 : (budget.bandwidth_hz - bw_sum) / k;
    for (int i = 0; i < k; ++i) {
        out[i].bandwidth_hz = needed[i] * bw_scale + bw_extra;
        out[i].compute_cps = budget.compute_cps / k;
    }
    return out;
}

namespace {

struct NormalizedProblem {
    int user_count = 0;
    GroupBudget budget;
    std::vector<double> power_floor;   // normalized lower bounds on p
    std::vector<double> product_floor; // normalized p*b floors
    double var_floor = kFloorFraction;
};

Eigen::VectorXd initial_point(const NormalizedProblem& np, double margin, bool& interior_ok) {
    const int k = np.user_count;
    Eigen::VectorXd x(3 * k);
    interior_ok = true;

    double pmin_sum = 0.0;
    for (int i = 0; i < k; ++i) pmin_sum += std::max(np.power_floor[i], np.var_floor);
    if (pmin_sum >= 1.0 - 2.0 * margin) {
        interior_ok = false;
        pmin_sum = std::min(pmin_sum, 1.0);
    }
    const double p_extra = std::max(0.0, (1.0 - margin - pmin_sum) / k);
    for (int i = 0; i < k; ++i) {
        x(k + i) = std::max(np.power_floor[i], np.var_floor) * (1.0 + margin) + p_extra;
    }

    double bneed_sum = 0.0;
    std::vector<double> bneed(k, np.var_floor);
    for (int i = 0; i < k; ++i) {
        bneed[i] = std::max(np.var_floor, np.product_floor[i] / x(k + i) * (1.0 + margin));
        bneed_sum += bneed[i];
    }
    if (bneed_sum >= 1.0 - 2.0 * margin) interior_ok = false;
    const double b_extra = std::max(0.0, (1.0 - margin - bneed_sum) / k);
    for (int i = 0; i < k; ++i) x(i) = bneed[i] + b_extra;

    for (int i = 0; i < k; ++i) x(2 * k + i) = (1.0 - margin) / k;
    return x;
}

std::vector<qoe::Allocation> denormalize(const NormalizedProblem& np, const Eigen::VectorXd& x) {
    std::vector<qoe::Allocation> out(np.user_count);
    for (int i = 0; i < np.user_count; ++i) {
        out[i].bandwidth_hz = x(i) * np.budget.bandwidth_hz;
        out[i].power_w = x(np.user_count + i) * np.budget.power_w;
        out[i].compute_cps = x(2 * np.user_count + i) * np.budget.compute_cps;
    }
    return out;
}

// Linear-latency weight of each user in the convex subproblem: impact *
// latency weight for the additive family, multiplier^2 for the fractional
// family.
struct SubproblemWeights {
    std::vector<double> latency_weight;
    std::vector<RateSurrogate> inv_rate; // in normalized variables
};

SubproblemWeights build_weights(const NormalizedProblem& np,
                                std::span<const UserInstance> users,
                                const Eigen::VectorXd& x, bool fractional,
                                std::vector<double>& multipliers) {
    const int k = np.user_count;
    SubproblemWeights w;
    w.latency_weight.resize(k);
    w.inv_rate.resize(k);
    for (int i = 0; i < k; ++i) {
        const double bandwidth = x(i) * np.budget.bandwidth_hz;
        const double power = x(k + i) * np.budget.power_w;
        const double compute = x(2 * k + i) * np.budget.compute_cps;
        const double rate = qoe::transmission_rate(bandwidth, power, users[i].comm_gain,
                                                   users[i].noise_psd);
        LinearizationPoint point{bandwidth, power, compute, rate, 0.0};
        const RateSurrogate s = linearize_inv_rate(point, users[i].comm_gain,
                                                   users[i].noise_psd);
        // Rescale the affine surrogate onto normalized variables.
        w.inv_rate[i].constant = s.constant;
        w.inv_rate[i].per_bandwidth = s.per_bandwidth * np.budget.bandwidth_hz;
        w.inv_rate[i].per_power = s.per_power * np.budget.power_w;

        if (fractional) {
            const double quality = qoe::content_quality(
                units::bits_to_mb(users[i].demand.file_size_bits),
                users[i].model.quality_shape);
            const double numerator =
                qoe::impact(users[i].context) * users[i].model.omega[2] * quality;
            const double latency = qoe::service_latency(users[i].demand, compute, rate);
            const auto step = quadratic_transform_step(numerator, latency, multipliers[i]);
            multipliers[i] = step.multiplier_next;
            w.latency_weight[i] = multipliers[i] * multipliers[i];
        } else {
            w.latency_weight[i] = qoe::impact(users[i].context) * users[i].model.omega[1];
        }
    }
    return w;
}

opt::ConvexProblem build_subproblem(const NormalizedProblem& np,
                                    std::span<const UserInstance> users,
                                    const SubproblemWeights& weights,
                                    const Eigen::VectorXd& x, bool mccormick,
                                    double box_spread) {
    const int k = np.user_count;
    const int n = mccormick ? 4 * k : 3 * k;
    opt::ConvexProblem problem;
    problem.dimension = n;

    // Objective: sum of per-user latency surrogates (quality terms are
    // constant within a slot). Coefficients on (b, p) are linear; compute
    // enters through A / c.
    struct Terms {
        Eigen::VectorXd linear;
        std::vector<double> inv_c; // coefficient on 1/c per user
    };
    auto terms = std::make_shared<Terms>();
    terms->linear = Eigen::VectorXd::Zero(n);
    terms->inv_c.resize(k);
    const double inv_k = 1.0 / static_cast<double>(k);
    for (int i = 0; i < k; ++i) {
        const double wgt = inv_k * weights.latency_weight[i];
        const double file_bits = users[i].demand.file_size_bits;
        terms->linear(i) = wgt * file_bits * weights.inv_rate[i].per_bandwidth;
        terms->linear(k + i) = wgt * file_bits * weights.inv_rate[i].per_power;
        terms->inv_c[i] =
            wgt * users[i].demand.cycles_per_bit * file_bits / np.budget.compute_cps;
    }

    const int kk = k;
    problem.value = [terms, kk](const Eigen::VectorXd& v) {
        double acc = terms->linear.dot(v);
        for (int i = 0; i < kk; ++i) acc += terms->inv_c[i] / v(2 * kk + i);
        return acc;
    };
    problem.gradient = [terms, kk](const Eigen::VectorXd& v, Eigen::VectorXd& g) {
        g = terms->linear;
        for (int i = 0; i < kk; ++i) {
            const double c = v(2 * kk + i);
            g(2 * kk + i) -= terms->inv_c[i] / (c * c);
        }
    };
    problem.hessian = [terms, kk](const Eigen::VectorXd& v, Eigen::MatrixXd& h) {
        h.setZero(v.size(), v.size());
        for (int i = 0; i < kk; ++i) {
            const double c = v(2 * kk + i);
            h(2 * kk + i, 2 * kk + i) = 2.0 * terms->inv_c[i] / (c * c * c);
        }
    };

    auto sum_constraint = [&](int offset) {
        opt::LinearConstraint lc;
        lc.coeff = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < k; ++i) lc.coeff(offset + i) = 1.0;
        lc.rhs = 1.0;
        problem.linear.push_back(std::move(lc));
    };
    sum_constraint(0);
    sum_constraint(k);
    sum_constraint(2 * k);

    auto lower_bound = [&](int index, double bound) {
        opt::LinearConstraint lc;
        lc.coeff = Eigen::VectorXd::Zero(n);
        lc.coeff(index) = -1.0;
        lc.rhs = -bound;
        problem.linear.push_back(std::move(lc));
    };
    auto upper_bound = [&](int index, double bound) {
        opt::LinearConstraint lc;
        lc.coeff = Eigen::VectorXd::Zero(n);
        lc.coeff(index) = 1.0;
        lc.rhs = bound;
        problem.linear.push_back(std::move(lc));
    };

    for (int i = 0; i < k; ++i) {
        lower_bound(2 * k + i, np.var_floor);
        lower_bound(k + i, std::max(np.var_floor, np.power_floor[i]));
        lower_bound(i, np.var_floor);
    }

    if (!mccormick) {
        for (int i = 0; i < k; ++i) {
            if (np.product_floor[i] > 0.0) {
                problem.product_floors.push_back({i, k + i, np.product_floor[i]});
            }
        }
        problem.start = x;
        return problem;
    }

    // McCormick path: auxiliary product variables with envelope constraints
    // and boxes around the previous iterate.
    problem.start = Eigen::VectorXd(n);
    problem.start.head(3 * k) = x;
    for (int i = 0; i < k; ++i) {
        const double b_prev = x(i);
        const double p_prev = x(k + i);
        const double b_lo = std::max(np.var_floor * 0.5, (1.0 - box_spread) * b_prev);
        const double b_hi = std::min(1.0, (1.0 + box_spread) * b_prev);
        const double p_lo = std::max(np.var_floor * 0.5, (1.0 - box_spread) * p_prev);
        const double p_hi = std::min(1.0, (1.0 + box_spread) * p_prev);
        lower_bound(i, b_lo);
        upper_bound(i, b_hi);
        lower_bound(k + i, std::max(p_lo, np.power_floor[i]));
        upper_bound(k + i, p_hi);

        const int yi = 3 * k + i;
        problem.start(yi) = b_prev * p_prev;
        lower_bound(yi, std::max(0.0, np.product_floor[i]));
        // y >= p*b_lo + b*p_lo - p_lo*b_lo
        opt::LinearConstraint under;
        under.coeff = Eigen::VectorXd::Zero(n);
        under.coeff(k + i) = b_lo;
        under.coeff(i) = p_lo;
        under.coeff(yi) = -1.0;
        under.rhs = p_lo * b_lo;
        problem.linear.push_back(std::move(under));
        // y <= p*b_hi
        opt::LinearConstraint over_p;
        over_p.coeff = Eigen::VectorXd::Zero(n);
        over_p.coeff(yi) = 1.0;
        over_p.coeff(k + i) = -b_hi;
        over_p.rhs = 0.0;
        problem.linear.push_back(std::move(over_p));
        // y <= b*p_hi
        opt::LinearConstraint over_b;
        over_b.coeff = Eigen::VectorXd::Zero(n);
        over_b.coeff(yi) = 1.0;
        over_b.coeff(i) = -p_hi;
        over_b.rhs = 0.0;
        problem.linear.push_back(std::move(over_b));
    }
    return problem;
}

// Restores the true product floors after a McCormick solve by spending
// bandwidth (then power) slack. Returns false when the candidate cannot be
// repaired, in which case the caller keeps the previous iterate.
bool repair_product_floors(const NormalizedProblem& np, Eigen::VectorXd& x, double margin) {
    const int k = np.user_count;
    double b_sum = 0.0, p_sum = 0.0;
    for (int i = 0; i < k; ++i) {
        b_sum += x(i);
        p_sum += x(k + i);
    }
    for (int i = 0; i < k; ++i) {
        const double bound = np.product_floor[i];
        if (bound <= 0.0) continue;
        const double target = bound * (1.0 + margin);
        if (x(i) * x(k + i) >= target) continue;

        double need_b = target / x(k + i) - x(i);
        const double b_slack = 1.0 - margin - b_sum;
        const double db = std::clamp(need_b, 0.0, std::max(0.0, b_slack));
        x(i) += db;
        b_sum += db;
        if (x(i) * x(k + i) >= bound) continue;

        double need_p = target / x(i) - x(k + i);
        const double p_slack = 1.0 - margin - p_sum;
        const double dp = std::clamp(need_p, 0.0, std::max(0.0, p_slack));
        x(k + i) += dp;
        p_sum += dp;
        if (x(i) * x(k + i) < bound) return false;
    }
    return true;
}

SolveResult solve_impl(const GroupBudget& budget, std::span<const UserInstance> users,
                       const SolverConfig& config, bool fractional) {
    SolveResult result;
    const int k = static_cast<int>(users.size());
    if (k == 0) {
        result.feasible = true;
        return result;
    }
    for (const auto& u : users) {
        const bool is_ratio = u.model.structure == qoe::QosStructure::Ratio;
        if (is_ratio != fractional) {
            throw std::invalid_argument("solve_group: mixed model structures in one group");
        }
    }

    const auto feasibility = feasibility_check(budget, users);
    if (!feasibility.feasible) {
        result.allocations = projected_minimum_allocation(budget, users);
        result.objective = group_objective(users, result.allocations);
        result.objective_trace.push_back(result.objective);
        result.feasible = false;
        return result;
    }

    NormalizedProblem np;
    np.user_count = k;
    np.budget = budget;
    np.power_floor.resize(k);
    np.product_floor.resize(k);
    for (int i = 0; i < k; ++i) {
        np.power_floor[i] = users[i].minima.power_min_w / budget.power_w;
        np.product_floor[i] =
            users[i].minima.power_bandwidth_min / (budget.power_w * budget.bandwidth_hz);
    }

    bool interior_ok = true;
    Eigen::VectorXd x = initial_point(np, config.interior_margin, interior_ok);
    if (!interior_ok) {
        // Feasible set too thin for the interior method; report the
        // projection point itself.
        result.allocations = projected_minimum_allocation(budget, users);
        result.objective = group_objective(users, result.allocations);
        result.objective_trace.push_back(result.objective);
        result.feasible = true;
        result.degraded = true;
        return result;
    }

    std::vector<double> multipliers(k, 0.0);
    auto true_objective = [&](const Eigen::VectorXd& point) {
        const auto allocations = denormalize(np, point);
        return group_objective(users, allocations);
    };

    double current = true_objective(x);
    result.objective_trace.push_back(current);

    for (int outer = 0; outer < config.max_outer; ++outer) {
        const SubproblemWeights weights =
            build_weights(np, users, x, fractional, multipliers);
        const opt::ConvexProblem subproblem = build_subproblem(
            np, users, weights, x, config.mccormick_path, config.mccormick_box_spread);
        const opt::SolveInfo info = opt::inner_convex_solve(subproblem, config.inner);
        result.kkt_residual = info.kkt_residual;
        ++result.outer_iterations;
        if (info.solver_failure) {
            result.degraded = true;
            break;
        }

        Eigen::VectorXd candidate = info.x.head(3 * k);
        if (config.mccormick_path &&
            !repair_product_floors(np, candidate, config.interior_margin)) {
            break;
        }

        // Backtracking toward the subproblem solution keeps the true
        // objective non-decreasing; the surrogate gradient matches the true
        // gradient at the expansion point, so an improving step exists
        // unless the point is already stationary.
        double gamma = 1.0;
        bool improved = false;
        Eigen::VectorXd trial;
        double trial_value = current;
        for (int ls = 0; ls < 24; ++ls) {
            trial = x + gamma * (candidate - x);
            trial_value = true_objective(trial);
            if (trial_value > current) {
                improved = true;
                break;
            }
            gamma *= 0.5;
        }
        if (!improved) break;

        x = trial;
        const double previous = current;
        current = trial_value;
        result.objective_trace.push_back(current);
        if (std::abs(current - previous) <= config.tol_outer * std::max(1.0, std::abs(current))) {
            break;
        }
    }

    result.allocations = denormalize(np, x);
    result.objective = current;
    result.feasible = true;
    return result;
}

} // namespace

SolveResult solve_group_additive(const GroupBudget& budget, std::span<const UserInstance> users,
                                 const SolverConfig& config) {
    return solve_impl(budget, users, config, false);
}

SolveResult solve_group_fractional(const GroupBudget& budget,
                                   std::span<const UserInstance> users,
                                   const SolverConfig& config) {
    return solve_impl(budget, users, config, true);
}

SolveResult solve_group(const GroupBudget& budget, std::span<const UserInstance> users,
                        const SolverConfig& config) {
    if (users.empty()) {
        SolveResult r;
        r.feasible = true;
        return r;
    }
    const bool fractional = users[0].model.structure == qoe::QosStructure::Ratio;
    return fractional ? solve_group_fractional(budget, users, config)
                      : solve_group_additive(budget, users, config);
}

void save_instance(std::ostream& out, const GroupBudget& budget,
                   std::span<const UserInstance> users) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "budget,%.17g,%.17g,%.17g\n", budget.bandwidth_hz,
                  budget.power_w, budget.compute_cps);
    out << buf;
    for (const auto& u : users) {
        std::snprintf(buf, sizeof buf,
                      "user,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%.17g,%.17g,%.17g,%.17g\n",
                      u.model.structure == qoe::QosStructure::Ratio ? 1 : 0, u.model.omega[0],
                      u.model.omega[1], u.model.omega[2], u.model.quality_shape,
                      u.context.behavior_dynamics, u.context.env_complexity,
                      u.context.behavior_max, u.context.env_max, u.demand.file_size_bits,
                      u.demand.cycles_per_bit, u.comm_gain, u.noise_psd,
                      u.minima.power_min_w, u.minima.power_bandwidth_min);
        out << buf;
    }
}

LoadedInstance load_instance(std::istream& in) {
    LoadedInstance loaded;
    std::string line;
    bool have_budget = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string tag;
        std::getline(row, tag, ',');
        std::string field;
        auto next = [&]() -> double {
            if (!std::getline(row, field, ',')) {
                throw std::runtime_error("instance: malformed row: " + line);
            }
            return std::stod(field);
        };
        if (tag == "budget") {
            loaded.budget.bandwidth_hz = next();
            loaded.budget.power_w = next();
            loaded.budget.compute_cps = next();
            have_budget = true;
        } else if (tag == "user") {
            UserInstance u;
            u.model.structure =
                next() != 0.0 ? qoe::QosStructure::Ratio : qoe::QosStructure::Linear;
            u.model.omega[0] = next();
            u.model.omega[1] = next();
            u.model.omega[2] = next();
            u.model.quality_shape = next();
            u.context.behavior_dynamics = next();
            u.context.env_complexity = next();
            u.context.behavior_max = next();
            u.context.env_max = next();
            u.demand.file_size_bits = next();
            u.demand.cycles_per_bit = next();
            u.comm_gain = next();
            u.noise_psd = next();
            u.minima.power_min_w = next();
            u.minima.power_bandwidth_min = next();
            loaded.users.push_back(u);
        } else {
            throw std::runtime_error("instance: unknown row tag: " + tag);
        }
    }
    if (!have_budget) throw std::runtime_error("instance: missing budget row");
    return loaded;
}

} // namespace isacsim::sca
