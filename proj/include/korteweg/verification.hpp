#pragma once

#include "korteweg/constitutive.hpp"
#include "korteweg/discretization.hpp"
#include "korteweg/solver.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace korteweg {

/// Both components of the stress-divergence equilibrium system
///   div[(-p + alpha1 lap rho + alpha2 |grad rho|^2) I + alpha3 grad rho (x) grad rho] - rho g e_y
/// at the nodes two rings inside the boundary, in dimensional variables.
struct EquilibriumResidual {
    int nx_inner = 0;  ///< nodes per row covered (nx - 4)
    int ny_inner = 0;
    std::vector<double> res_x;  ///< row-major, first entry at node (2, 2)
    std::vector<double> res_y;
    double maxnorm_x = 0.0;
    double maxnorm_y = 0.0;
};

/// `field` lives on the dimensionless grid; it is rescaled by R0 and the grid
/// by ell1 before differencing. Fluxes are formed at ring-1 nodes and
/// differenced again (flux form), so nx, ny >= 5 is required.
EquilibriumResidual stress_divergence_residual(const Field& field, const Grid& grid,
                                               const ConstitutiveModel& model,
                                               const PhysicalSetup& setup);

/// Max-norms over covered nodes whose dimensionless position satisfies `keep`.
std::pair<double, double> restricted_maxnorm(const EquilibriumResidual& res, const Grid& grid,
                                             const std::function<bool(double, double)>& keep);

enum class LinearCase { helmholtz_m1, laplace_mm1 };

/// amplitude * sin(a x + phase_x) * sin(b y + phase_y)
struct ModalPart {
    double amplitude = 1.0;
    double a = 1.0;
    double b = 1.0;
    double phase_x = 0.0;
    double phase_y = 0.0;
};

/// c0 + cx x + cy y + c_saddle (x^2 - y^2) + c_xy x y + exp_amplitude e^{k x} sin(k y)
struct HarmonicPart {
    double c0 = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    double c_saddle = 0.0;
    double c_xy = 0.0;
    double exp_amplitude = 0.0;
    double exp_k = 0.0;
};

struct PointDerivatives {
    double value = 0.0;
    double x = 0.0;
    double y = 0.0;
    double xx = 0.0;
    double yy = 0.0;
};

/// Closed-form solution of one of the two linear reductions:
///   m = 1,  n = -1:  rho = modal - (beta y + gamma) / (2 alpha),   a^2 + b^2 = 2 alpha
///   m = -1, n = -1:  rho = harmonic - beta y^3 / 6 - gamma y^2 / 2
class LinearCaseSolution {
public:
    LinearCaseSolution(const DimensionlessParams& params, const ModalPart& modal);
    LinearCaseSolution(const DimensionlessParams& params, const HarmonicPart& harmonic);

    LinearCase linear_case() const { return case_; }
    Exponents exponents() const;
    const DimensionlessParams& params() const { return params_; }

    double operator()(double x, double y) const { return derivatives(x, y).value; }
    PointDerivatives derivatives(double x, double y) const;
    /// The modal or harmonic part alone.
    PointDerivatives homogeneous(double x, double y) const;
    double shift(double y) const;

private:
    LinearCase case_;
    DimensionlessParams params_;
    ModalPart modal_;
    HarmonicPart harmonic_;
};

LinearCaseSolution exact_linear_solution(LinearCase linear_case, const DimensionlessParams& params,
                                         const ModalPart& modal);
LinearCaseSolution exact_linear_solution(LinearCase linear_case, const DimensionlessParams& params,
                                         const HarmonicPart& harmonic);

/// Problem with a known exact solution; `source` (possibly empty) is added
/// to the forcing so that `exact` solves the modified equation.
struct ManufacturedCase {
    std::string name;
    DimensionlessParams params;
    Exponents exps;
    std::function<double(double, double)> exact;
    std::function<double(double, double)> source;
};

ManufacturedCase helmholtz_case(const DimensionlessParams& params, const ModalPart& modal);
ManufacturedCase laplace_case(const DimensionlessParams& params, const HarmonicPart& harmonic);
/// rho = base + amplitude sin(pi x) sin(pi y / d) with the source that makes it exact.
ManufacturedCase manufactured_case(const DimensionlessParams& params, const Exponents& exps,
                                   double base = 1.5, double amplitude = 0.1);

struct StudyLevel {
    double step = 0.0;
    int nx = 0;
    int ny = 0;
    double max_error = 0.0;
    SolveReport solve;
};

struct StudyResult {
    std::string name;
    std::vector<StudyLevel> levels;
    std::vector<double> orders;  ///< log(e_k / e_{k+1}) / log(h_k / h_{k+1})
    bool aborted = false;
    std::string message;
};

/// Solves the case on each step (dx = dy = step) from the transfinite blend of
/// the exact boundary data and reports max-norm errors and observed orders.
StudyResult convergence_study(const ManufacturedCase& study_case, const std::vector<double>& steps,
                              const SolverConfig& config = {});

struct CrossCheckLevel {
    double step = 0.0;
    bool converged = false;
    double solve_residual = 0.0;
    double maxnorm_x = 0.0;
    double maxnorm_y = 0.0;
    double away_maxnorm_x = 0.0;  ///< excluding a disc around each top corner
    double away_maxnorm_y = 0.0;
};

struct CrossCheckResult {
    std::vector<CrossCheckLevel> levels;
    std::vector<double> orders_x;
    std::vector<double> orders_y;
    std::vector<double> away_orders_x;
    std::vector<double> away_orders_y;
    double corner_radius = 0.0;
};

/// Solves the benchmark boundary value problem at each step and evaluates the
/// stress-divergence residual under the unit-scale physical realization.
CrossCheckResult equilibrium_cross_check(const DimensionlessParams& params, const Exponents& exps,
                                         const BoundarySpec& boundary,
                                         const std::vector<double>& steps,
                                         const SolverConfig& config = {},
                                         double corner_radius = 0.25);

/// Observed orders between consecutive (step, error) pairs.
std::vector<double> observed_orders(const std::vector<double>& steps,
                                    const std::vector<double>& errors);

}  // namespace korteweg
