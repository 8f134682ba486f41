#pragma once

#include "korteweg/constitutive.hpp"
#include "korteweg/grid.hpp"

#include <Eigen/Sparse>

#include <functional>

namespace korteweg {

enum class Side { bottom, top, left, right };

/// Dirichlet data of the benchmark problem:
///   bottom/top  rho0 - x^2 (1-x)^2
///   left/right  (rho1 - rho0) y / d + rho0
struct BoundarySpec {
    double rho0 = 1.4;
    double rho1 = 1.3;
    double d = 3.0;

    /// rho0 > rho1 > 0 and rho0 > 1/16 (keeps the bottom/top curve positive).
    void validate() const;
};

double boundary_value(const BoundarySpec& spec, Side side, double coordinate);

/// Largest jump between the bottom/top curve and the side line at a corner.
/// The benchmark data disagree at the two top corners by rho0 - rho1.
double corner_mismatch(const BoundarySpec& spec);

/// Field whose boundary ring carries the Dirichlet data; corners take the
/// bottom/top curve value. No interior stencil reads a corner node.
Field boundary_field(const BoundarySpec& spec, const Grid& grid);

/// Coons-patch blend of four boundary curves. Corner terms use the mean of
/// the two curves meeting there, so mismatched corners blend symmetrically.
///   P = (1-eta) B(x) + eta T(x) + (1-x) L(y) + x R(y)
///       - [(1-x)(1-eta) c00 + x(1-eta) c10 + (1-x) eta c01 + x eta c11],  eta = y/d
struct BoundaryCurves {
    std::function<double(double)> bottom;
    std::function<double(double)> top;
    std::function<double(double)> left;
    std::function<double(double)> right;
};
double transfinite_value(const BoundaryCurves& curves, double d, double x, double y);

/// Blend in the interior, exact Dirichlet data on the boundary ring.
Field initial_guess(const BoundarySpec& spec, const Grid& grid);
/// Same construction for data given by a function of (x, y).
Field initial_guess(const std::function<double(double, double)>& dirichlet, const Grid& grid);

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Residual and Jacobian over interior unknowns (Grid::unknown order).
struct SparseSystem {
    Eigen::VectorXd residual;
    SparseMatrix jacobian;
};

/// Discrete dimensionless equilibrium problem. `source`, when set, is added
/// to the forcing beta*y + gamma at every interior node (manufactured solutions).
struct EquilibriumProblem {
    Grid grid;
    DimensionlessParams params;
    Exponents exps;
    std::function<double(double, double)> source;

    double forcing(int i, int j) const;
};

/// Throws PositivityError naming the first node with rho <= 0.
void check_positive(const Field& field);

Eigen::VectorXd assemble_residual(const Field& field, const EquilibriumProblem& problem);
Eigen::VectorXd assemble_residual(const Field& field, const Grid& grid,
                                  const DimensionlessParams& params, double m, double n);

SparseSystem assemble_jacobian(const Field& field, const EquilibriumProblem& problem);
SparseSystem assemble_jacobian(const Field& field, const Grid& grid,
                               const DimensionlessParams& params, double m, double n);

}  // namespace korteweg
