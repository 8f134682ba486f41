#pragma once

#include "korteweg/discretization.hpp"

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

namespace korteweg {

struct SolverConfig {
    double tolerance = 1e-4;  ///< target residual max-norm
    int max_iterations = 200;
    double lm_lambda0 = 1e-3;
    double lambda_grow = 10.0;
    double lambda_shrink = 0.1;
    double min_density = 1e-8;

    void validate() const;
};

/// Damping above this value without an accepted step is a stagnation.
inline constexpr double stagnation_lambda = 1e12;

enum class Termination { converged, max_iterations, stagnation };

std::string to_string(Termination t);

struct SolveReport {
    bool converged = false;
    Termination termination = Termination::max_iterations;
    int iterations = 0;                        ///< accepted steps
    std::vector<double> residual_norm_history;  ///< 2-norm, initial iterate first
    std::vector<double> maxnorm_history;
    double final_residual_maxnorm = 0.0;
    double final_lambda = 0.0;
    int positivity_rejections = 0;
    int rejected_steps = 0;
    int newton_steps = 0;  ///< accepted undamped steps
};

/// Solves (J^T J + lambda diag(J^T J)) delta = -J^T r. With lambda = 0 and a
/// square J the Newton system J delta = -r is factored directly instead.
/// Throws SingularSystemError (tagged with `iteration`) on breakdown.
Eigen::VectorXd lm_step(const SparseMatrix& jacobian, const Eigen::VectorXd& residual,
                        double lambda, int iteration = 0);

struct StepDecision {
    bool accepted = false;
    bool positivity_rejected = false;
    double lambda = 0.0;  ///< damping to use next
};

/// Interior values of `candidate` all >= min_density.
bool positivity_feasible(const Field& candidate, const SolverConfig& config);

/// Accept iff feasible and the residual 2-norm strictly decreases; accepted
/// steps shrink lambda, rejected ones grow it. `candidate_norm` is ignored
/// when the candidate is infeasible. Throws StagnationError when a rejection
/// would push lambda past stagnation_lambda.
StepDecision accept_or_damp(const Field& candidate, double candidate_norm, double current_norm,
                            double lambda, const SolverConfig& config);

/// Residual/Jacobian provider. The default one wraps an EquilibriumProblem.
struct SystemAssembler {
    std::function<Eigen::VectorXd(const Field&)> residual;
    std::function<SparseSystem(const Field&)> system;

    static SystemAssembler of(const EquilibriumProblem& problem);
};

struct SolveResult {
    Field field;
    SolveReport report;
};

/// Newton-first Levenberg-Marquardt iteration. Each iteration tries the
/// undamped step, then damped steps with growing lambda until one is
/// accepted. Boundary values are never touched.
SolveResult solve(const SystemAssembler& assembler, const Field& initial,
                  const SolverConfig& config = {});
SolveResult solve(const EquilibriumProblem& problem, const Field& initial,
                  const SolverConfig& config = {});

}  // namespace korteweg
