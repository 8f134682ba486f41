#include "korteweg/solver.hpp"

#include "korteweg/errors.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>

namespace korteweg {

namespace {

// Damping restarts from here when a rejection happens at lambda = 0.
constexpr double lambda_floor = 1e-12;

Eigen::VectorXd newton_step(const SparseMatrix& jacobian, const Eigen::VectorXd& residual,
                            int iteration)
{
    const Eigen::SparseMatrix<double> a = jacobian;
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(a);
    lu.factorize(a);
    if (lu.info() != Eigen::Success)
        throw SingularSystemError(iteration, "sparse LU factorization failed: " + lu.lastErrorMessage());
    Eigen::VectorXd delta = lu.solve(-residual);
    if (lu.info() != Eigen::Success || !delta.allFinite())
        throw SingularSystemError(iteration, "sparse LU solve failed");
    return delta;
}

Field apply_step(const Field& field, const Eigen::VectorXd& delta)
{
    Field out = field;
    Eigen::Index k = 0;
    for (int j = 1; j < field.ny() - 1; ++j)
        for (int i = 1; i < field.nx() - 1; ++i)
            out.at(i, j) += delta[k++];
    return out;
}

}  // namespace

void SolverConfig::validate() const
{
    if (!(tolerance > 0.0))
        throw ContractViolation("tolerance must be positive");
    if (max_iterations < 1)
        throw ContractViolation("max_iterations must be at least 1");
    if (!(lm_lambda0 >= 0.0))
        throw ContractViolation("lm_lambda0 must be non-negative");
    if (!(lambda_shrink > 0.0 && lambda_shrink < 1.0 && lambda_grow > 1.0))
        throw ContractViolation("need 0 < lambda_shrink < 1 < lambda_grow");
    if (!(min_density > 0.0))
        throw ContractViolation("min_density must be positive");
}

std::string to_string(Termination t)
{
    switch (t) {
    case Termination::converged:
        return "converged";
    case Termination::max_iterations:
        return "max_iterations";
    case Termination::stagnation:
        return "stagnation";
    }
    return "unknown";
}

Eigen::VectorXd lm_step(const SparseMatrix& jacobian, const Eigen::VectorXd& residual,
                        double lambda, int iteration)
{
    if (jacobian.rows() != residual.size())
        throw ContractViolation("jacobian rows and residual length differ");
    if (!(lambda >= 0.0))
        throw ContractViolation("damping must be non-negative");
    if (lambda == 0.0 && jacobian.rows() == jacobian.cols())
        return newton_step(jacobian, residual, iteration);

    const Eigen::SparseMatrix<double> j = jacobian;
    Eigen::SparseMatrix<double> normal = Eigen::SparseMatrix<double>(j.transpose()) * j;
    const Eigen::VectorXd scale = normal.diagonal();
    if ((scale.array() <= 0.0).any())
        throw SingularSystemError(iteration, "Jacobian has an empty column");
    for (Eigen::Index k = 0; k < normal.outerSize(); ++k)
        normal.coeffRef(k, k) += lambda * scale[k];

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(normal);
    if (ldlt.info() != Eigen::Success)
        throw SingularSystemError(iteration, "damped normal matrix factorization failed");
    const Eigen::VectorXd rhs = -(j.transpose() * residual);
    Eigen::VectorXd delta = ldlt.solve(rhs);
    if (ldlt.info() != Eigen::Success || !delta.allFinite())
        throw SingularSystemError(iteration, "damped normal solve failed");
    return delta;
}

bool positivity_feasible(const Field& candidate, const SolverConfig& config)
{
    for (int j = 1; j < candidate.ny() - 1; ++j)
        for (int i = 1; i < candidate.nx() - 1; ++i)
            if (!(candidate.at(i, j) >= config.min_density))
                return false;
    return true;
}

StepDecision accept_or_damp(const Field& candidate, double candidate_norm, double current_norm,
                            double lambda, const SolverConfig& config)
{
    StepDecision out;
    out.positivity_rejected = !positivity_feasible(candidate, config);
    out.accepted = !out.positivity_rejected && candidate_norm < current_norm;
    if (out.accepted) {
        out.lambda = lambda * config.lambda_shrink;
        return out;
    }
    out.lambda = std::max(lambda, lambda_floor) * config.lambda_grow;
    if (out.lambda > stagnation_lambda)
        throw StagnationError(out.lambda);
    return out;
}

SystemAssembler SystemAssembler::of(const EquilibriumProblem& problem)
{
    return {[problem](const Field& f) { return assemble_residual(f, problem); },
            [problem](const Field& f) { return assemble_jacobian(f, problem); }};
}

SolveResult solve(const SystemAssembler& assembler, const Field& initial,
                  const SolverConfig& config)
{
    config.validate();
    check_positive(initial);

    SolveResult result{initial, {}};
    SolveReport& report = result.report;
    Field& field = result.field;

    Eigen::VectorXd r = assembler.residual(field);
    double norm = r.norm();
    double maxnorm = r.lpNorm<Eigen::Infinity>();
    report.residual_norm_history.push_back(norm);
    report.maxnorm_history.push_back(maxnorm);
    double lambda = config.lm_lambda0;

    // Evaluates a trial step; returns true when it was accepted.
    auto try_step = [&](const Eigen::VectorXd& delta, double& lam) {
        Field candidate = apply_step(field, delta);
        double candidate_norm = 0.0;
        Eigen::VectorXd candidate_r;
        const bool feasible = positivity_feasible(candidate, config);
        if (feasible) {
            candidate_r = assembler.residual(candidate);
            candidate_norm = candidate_r.norm();
        } else {
            ++report.positivity_rejections;
        }
        if (!(feasible && candidate_norm < norm))
            ++report.rejected_steps;
        const StepDecision decision = accept_or_damp(candidate, candidate_norm, norm, lam, config);
        lam = decision.lambda;
        if (!decision.accepted)
            return false;
        field = std::move(candidate);
        r = std::move(candidate_r);
        norm = candidate_norm;
        maxnorm = r.lpNorm<Eigen::Infinity>();
        return true;
    };

    try {
        while (true) {
            if (maxnorm <= config.tolerance) {
                report.converged = true;
                report.termination = Termination::converged;
                break;
            }
            if (report.iterations >= config.max_iterations) {
                report.termination = Termination::max_iterations;
                break;
            }
            const int iteration = report.iterations + 1;
            const SparseSystem sys = assembler.system(field);

            bool accepted = false;
            try {
                // Undamped attempt; lambda is left alone if it fails.
                double newton_lambda = lambda;
                const Eigen::VectorXd delta = lm_step(sys.jacobian, r, 0.0, iteration);
                try {
                    accepted = try_step(delta, newton_lambda);
                } catch (const StagnationError&) {
                    accepted = false;
                }
                if (accepted) {
                    lambda = newton_lambda;
                    ++report.newton_steps;
                }
            } catch (const SingularSystemError&) {
                accepted = false;
            }

            while (!accepted) {
                const Eigen::VectorXd delta = lm_step(sys.jacobian, r, lambda, iteration);
                accepted = try_step(delta, lambda);
            }
            ++report.iterations;
            report.residual_norm_history.push_back(norm);
            report.maxnorm_history.push_back(maxnorm);
        }
    } catch (const StagnationError&) {
        report.termination = Termination::stagnation;
    }

    report.final_residual_maxnorm = maxnorm;
    report.final_lambda = lambda;
    return result;
}

SolveResult solve(const EquilibriumProblem& problem, const Field& initial,
                  const SolverConfig& config)
{
    return solve(SystemAssembler::of(problem), initial, config);
}

}  // namespace korteweg
