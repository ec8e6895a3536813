#ifndef ISACSIM_CONVEX_HPP
#define ISACSIM_CONVEX_HPP

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace isacsim::opt {

// coeff . x <= rhs
struct LinearConstraint {
    Eigen::VectorXd coeff;
    double rhs = 0.0;
};

// x[left] * x[right] >= bound with x[right] > 0, kept in the convex form
// bound / x[right] - x[left] <= 0.
struct ProductFloorConstraint {
    int left = 0;
    int right = 0;
    double bound = 0.0;
};

// Smooth convex minimization over linear and product-floor inequalities.
// Callbacks must be defined wherever all constraints hold strictly.
struct ConvexProblem {
    int dimension = 0;
    std::function<double(const Eigen::VectorXd&)> value;
    std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> gradient;
    // Hessian of the objective; pass nullptr for an all-zero (linear) objective.
    std::function<void(const Eigen::VectorXd&, Eigen::MatrixXd&)> hessian;
    std::vector<LinearConstraint> linear;
    std::vector<ProductFloorConstraint> product_floors;
    Eigen::VectorXd start; // strictly feasible
};

struct SolverOptions {
    double kkt_tolerance = 1e-6;
    int max_iterations = 150; // Newton iterations across all barrier stages
};

struct SolveInfo {
    Eigen::VectorXd x;
    double value = 0.0;
    double kkt_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    // Iteration cap hit with residual still above 100x tolerance.
    bool solver_failure = false;
};

// Log-barrier interior-point method with damped Newton centering. Meets the
// contract: KKT residual <= kkt_tolerance or the iteration cap, with
// solver_failure raised when the cap leaves the residual above 100x the
// tolerance.
SolveInfo inner_convex_solve(const ConvexProblem& problem, const SolverOptions& options = {});

} // namespace isacsim::opt

#endif
