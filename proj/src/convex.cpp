#include "isacsim/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace isacsim::opt {

namespace {

struct ConstraintEval {
    Eigen::VectorXd g;      // constraint values, feasible when < 0
    Eigen::MatrixXd jac;    // one row per constraint
};

int constraint_count(const ConvexProblem& p) {
    return static_cast<int>(p.linear.size() + p.product_floors.size());
}

void eval_constraints(const ConvexProblem& p, const Eigen::VectorXd& x, ConstraintEval& out) {
    const int m = constraint_count(p);
    const int n = p.dimension;
    out.g.resize(m);
    out.jac.setZero(m, n);
    int r = 0;
    for (const auto& lc : p.linear) {
        out.g(r) = lc.coeff.dot(x) - lc.rhs;
        out.jac.row(r) = lc.coeff.transpose();
        ++r;
    }
    for (const auto& pf : p.product_floors) {
        const double xr = x(pf.right);
        out.g(r) = pf.bound / xr - x(pf.left);
        out.jac(r, pf.right) = -pf.bound / (xr * xr);
        out.jac(r, pf.left) = -1.0;
        ++r;
    }
}

// Adds mu * sum_i (1/g^2) grad g grad g^T + (1/-g) hess g to H.
void add_barrier_hessian(const ConvexProblem& p, const Eigen::VectorXd& x,
                         const ConstraintEval& ce, double mu, Eigen::MatrixXd& H) {
    const int m = ce.g.size();
    for (int i = 0; i < m; ++i) {
        const double gi = ce.g(i);
        H.noalias() += (mu / (gi * gi)) * ce.jac.row(i).transpose() * ce.jac.row(i);
    }
    const int offset = static_cast<int>(p.linear.size());
    for (std::size_t k = 0; k < p.product_floors.size(); ++k) {
        const auto& pf = p.product_floors[k];
        const double gi = ce.g(offset + static_cast<int>(k));
        const double xr = x(pf.right);
        H(pf.right, pf.right) += (mu / -gi) * 2.0 * pf.bound / (xr * xr * xr);
    }
}

double barrier_value(const ConvexProblem& p, const Eigen::VectorXd& x, double mu,
                     const Eigen::VectorXd& g) {
    double v = p.value(x);
    for (int i = 0; i < g.size(); ++i) {
        if (!(g(i) < 0.0)) return std::numeric_limits<double>::infinity();
        v -= mu * std::log(-g(i));
    }
    return v;
}

} // namespace

SolveInfo inner_convex_solve(const ConvexProblem& problem, const SolverOptions& options) {
    const int n = problem.dimension;
    const int m = constraint_count(problem);
    if (problem.start.size() != n) {
        throw std::invalid_argument("inner_convex_solve: start point has wrong dimension");
    }

    SolveInfo info;
    Eigen::VectorXd x = problem.start;
    ConstraintEval ce;
    eval_constraints(problem, x, ce);
    for (int i = 0; i < m; ++i) {
        if (!(ce.g(i) < 0.0)) {
            info.x = x;
            info.value = problem.value(x);
            info.kkt_residual = std::numeric_limits<double>::infinity();
            info.solver_failure = true;
            return info;
        }
    }

    const double tol = options.kkt_tolerance;
    // The barrier parameter is pushed well below the KKT tolerance so primal
    // accuracy on unit-scale problems reaches ~1e-8. The multiplier estimate
    // mu / (-g) loses digits once -g nears rounding noise, so the reported
    // point is the best-measured iterate across stages rather than the last.
    const double mu_min = tol * 1e-3 / std::max(1, m);
    double mu = m > 0 ? 1.0 : mu_min;

    Eigen::VectorXd grad(n), barrier_grad(n), step(n);
    Eigen::MatrixXd hess(n, n);

    // Any multiplier vector with lambda >= 0 upper-bounds the true KKT
    // residual, so the reported value is the better of the barrier estimate
    // and a clamped least-squares refinement (which avoids the cancellation
    // in mu / (-g) once a constraint is numerically active).
    auto residual_with = [&](const Eigen::VectorXd& g0, const ConstraintEval& cs,
                             const Eigen::VectorXd& lambda) {
        Eigen::VectorXd stat = g0;
        double comp = 0.0;
        for (int i = 0; i < m; ++i) {
            stat.noalias() += lambda(i) * cs.jac.row(i).transpose();
            comp = std::max(comp, lambda(i) * -cs.g(i));
        }
        return std::max(stat.lpNorm<Eigen::Infinity>(), comp);
    };
    auto kkt_residual_at = [&](const Eigen::VectorXd& pt, double mu_now) {
        problem.gradient(pt, grad);
        eval_constraints(problem, pt, ce);
        if (m == 0) return grad.lpNorm<Eigen::Infinity>();
        Eigen::VectorXd lambda(m);
        for (int i = 0; i < m; ++i) lambda(i) = mu_now / -ce.g(i);
        double best = residual_with(grad, ce, lambda);

        // NNLS-style refinement: least-squares multipliers over the
        // near-active set (constraints within sqrt(mu) of the boundary),
        // dropping negative components until none remain.
        const double activity = std::sqrt(std::max(mu_now, 1e-300));
        std::vector<int> active;
        for (int i = 0; i < m; ++i) {
            if (-ce.g(i) <= activity) active.push_back(i);
        }
        for (int pass = 0; pass < m && !active.empty(); ++pass) {
            const int a = static_cast<int>(active.size());
            Eigen::MatrixXd ja(a, problem.dimension);
            for (int i = 0; i < a; ++i) ja.row(i) = ce.jac.row(active[static_cast<std::size_t>(i)]);
            Eigen::MatrixXd gram = ja * ja.transpose();
            gram.diagonal().array() += 1e-12;
            const Eigen::VectorXd ls = gram.ldlt().solve(-ja * grad);
            std::vector<int> keep;
            for (int i = 0; i < a; ++i) {
                if (ls(i) > 0.0) keep.push_back(active[static_cast<std::size_t>(i)]);
            }
            Eigen::VectorXd full = Eigen::VectorXd::Zero(m);
            for (int i = 0; i < a; ++i) {
                full(active[static_cast<std::size_t>(i)]) = std::max(ls(i), 0.0);
            }
            best = std::min(best, residual_with(grad, ce, full));
            if (static_cast<int>(keep.size()) == a) break;
            active = std::move(keep);
        }
        return best;
    };

    int used = 0;
    bool done = false;
    Eigen::VectorXd best_x = x;
    double best_residual = std::numeric_limits<double>::infinity();
    while (!done && used < options.max_iterations) {
        // Newton centering at the current barrier parameter.
        for (int it = 0; it < 40 && used < options.max_iterations; ++it, ++used) {
            problem.gradient(x, grad);
            eval_constraints(problem, x, ce);
            barrier_grad = grad;
            for (int i = 0; i < m; ++i) {
                barrier_grad.noalias() += (mu / -ce.g(i)) * ce.jac.row(i).transpose();
            }
            if (problem.hessian) {
                problem.hessian(x, hess);
            } else {
                hess.setZero(n, n);
            }
            add_barrier_hessian(problem, x, ce, mu, hess);

            Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
            double ridge = 1e-12;
            while (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
                hess.diagonal().array() += ridge;
                ridge *= 100.0;
                ldlt.compute(hess);
                if (ridge > 1e6) break;
            }
            step = ldlt.solve(-barrier_grad);
            if (!step.allFinite()) break;

            const double decrement = -barrier_grad.dot(step);
            const double stage_tol = std::max(0.1 * mu, 0.01 * tol);
            if (barrier_grad.lpNorm<Eigen::Infinity>() <= stage_tol || decrement <= 1e-18) {
                break;
            }

            // Fraction-to-boundary cap, then Armijo backtracking.
            double alpha = 1.0;
            for (int i = 0; i < m; ++i) {
                const double slope = ce.jac.row(i).dot(step);
                if (slope > 0.0) {
                    alpha = std::min(alpha, 0.99 * (-ce.g(i)) / slope);
                }
            }
            for (const auto& pf : problem.product_floors) {
                if (step(pf.right) < 0.0) {
                    alpha = std::min(alpha, 0.99 * x(pf.right) / -step(pf.right));
                }
            }
            const double f0 = barrier_value(problem, x, mu, ce.g);
            ConstraintEval trial_ce;
            bool accepted = false;
            for (int ls = 0; ls < 50; ++ls) {
                Eigen::VectorXd trial = x + alpha * step;
                eval_constraints(problem, trial, trial_ce);
                bool interior = true;
                for (int i = 0; i < m; ++i) interior = interior && trial_ce.g(i) < 0.0;
                if (interior) {
                    const double f1 = barrier_value(problem, trial, mu, trial_ce.g);
                    if (f1 <= f0 + 1e-4 * alpha * barrier_grad.dot(step)) {
                        x = trial;
                        accepted = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if (!accepted) break;
        }
        const double residual = kkt_residual_at(x, m > 0 ? mu : 0.0);
        if (residual < best_residual) {
            best_residual = residual;
            best_x = x;
        }
        if (mu <= mu_min) {
            done = true;
        } else {
            mu = std::max(mu * 0.1, mu_min);
        }
    }

    info.x = best_x;
    info.value = problem.value(best_x);
    info.iterations = used;
    info.kkt_residual = best_residual;
    info.converged = info.kkt_residual <= tol;
    info.solver_failure = !info.converged && info.kkt_residual > 100.0 * tol;
    return info;
}

} // namespace isacsim::opt
