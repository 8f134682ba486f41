#include "korteweg/discretization.hpp"

#include "korteweg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace korteweg {

namespace {

double edge_curve(double rho0, double x) { return rho0 - x * x * (1.0 - x) * (1.0 - x); }

double side_line(const BoundarySpec& spec, double y)
{
    return (spec.rho1 - spec.rho0) / spec.d * y + spec.rho0;
}

void require_matching_grid(const Field& field, const Grid& grid)
{
    if (field.nx() != grid.nx || field.ny() != grid.ny)
        throw ContractViolation("field shape does not match the grid");
}

BoundaryCurves curves_of(const BoundarySpec& spec)
{
    return {[spec](double x) { return boundary_value(spec, Side::bottom, x); },
            [spec](double x) { return boundary_value(spec, Side::top, x); },
            [spec](double y) { return boundary_value(spec, Side::left, y); },
            [spec](double y) { return boundary_value(spec, Side::right, y); }};
}

BoundaryCurves curves_of(const std::function<double(double, double)>& f, double d)
{
    return {[f](double x) { return f(x, 0.0); }, [f, d](double x) { return f(x, d); },
            [f](double y) { return f(0.0, y); }, [f](double y) { return f(1.0, y); }};
}

Field blend(const BoundaryCurves& curves, const Grid& grid)
{
    Field out(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            out.at(i, j) = transfinite_value(curves, grid.d, grid.x(i), grid.y(j));
    return out;
}

// Per-node powers and derivative stencils shared by residual and Jacobian.
struct NodeTerms {
    double rho;
    double rho_x, rho_y, rho_xx, rho_yy;
    double pow_n1;  // rho^(n+1)
    double pow_n;   // rho^n
};

NodeTerms node_terms(const Field& f, const Grid& g, const Exponents& e, int i, int j)
{
    NodeTerms t;
    t.rho = f.at(i, j);
    t.rho_x = (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * g.dx);
    t.rho_y = (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * g.dy);
    t.rho_xx = (f.at(i + 1, j) - 2.0 * t.rho + f.at(i - 1, j)) / (g.dx * g.dx);
    t.rho_yy = (f.at(i, j + 1) - 2.0 * t.rho + f.at(i, j - 1)) / (g.dy * g.dy);
    t.pow_n1 = power(t.rho, e.n + 1.0);
    t.pow_n = power(t.rho, e.n);
    return t;
}

}  // namespace

void BoundarySpec::validate() const
{
    if (!(d > 0.0))
        throw ContractViolation("boundary aspect ratio must be positive");
    if (!(rho1 > 0.0))
        throw ContractViolation("rho1 must be positive");
    if (!(rho0 > rho1))
        throw ContractViolation("boundary data need rho0 > rho1");
    if (!(rho0 > 1.0 / 16.0))
        throw ContractViolation("rho0 must exceed 1/16 to keep the bottom/top data positive");
}

double boundary_value(const BoundarySpec& spec, Side side, double coordinate)
{
    const double tol = 1e-12;
    switch (side) {
    case Side::bottom:
    case Side::top:
        if (coordinate < -tol || coordinate > 1.0 + tol)
            throw ContractViolation("bottom/top coordinate outside [0, 1]");
        return edge_curve(spec.rho0, coordinate);
    case Side::left:
    case Side::right:
        if (coordinate < -tol * spec.d || coordinate > spec.d * (1.0 + tol))
            throw ContractViolation("left/right coordinate outside [0, d]");
        return side_line(spec, coordinate);
    }
    throw ContractViolation("unknown side");
}

double corner_mismatch(const BoundarySpec& spec)
{
    const double bottom = std::max(std::abs(edge_curve(spec.rho0, 0.0) - side_line(spec, 0.0)),
                                   std::abs(edge_curve(spec.rho0, 1.0) - side_line(spec, 0.0)));
    const double top = std::max(std::abs(edge_curve(spec.rho0, 0.0) - side_line(spec, spec.d)),
                                std::abs(edge_curve(spec.rho0, 1.0) - side_line(spec, spec.d)));
    return std::max(bottom, top);
}

Field boundary_field(const BoundarySpec& spec, const Grid& grid)
{
    spec.validate();
    if (std::abs(spec.d - grid.d) > 1e-12 * grid.d)
        throw ContractViolation("boundary spec and grid disagree on d");
    Field out(grid);
    for (int j = 1; j < grid.ny - 1; ++j) {
        out.at(0, j) = boundary_value(spec, Side::left, grid.y(j));
        out.at(grid.nx - 1, j) = boundary_value(spec, Side::right, grid.y(j));
    }
    for (int i = 0; i < grid.nx; ++i) {
        out.at(i, 0) = boundary_value(spec, Side::bottom, grid.x(i));
        out.at(i, grid.ny - 1) = boundary_value(spec, Side::top, grid.x(i));
    }
    return out;
}

double transfinite_value(const BoundaryCurves& c, double d, double x, double y)
{
    const double eta = y / d;
    const double c00 = 0.5 * (c.bottom(0.0) + c.left(0.0));
    const double c10 = 0.5 * (c.bottom(1.0) + c.right(0.0));
    const double c01 = 0.5 * (c.top(0.0) + c.left(d));
    const double c11 = 0.5 * (c.top(1.0) + c.right(d));
    return (1.0 - eta) * c.bottom(x) + eta * c.top(x) + (1.0 - x) * c.left(y) + x * c.right(y) -
           ((1.0 - x) * (1.0 - eta) * c00 + x * (1.0 - eta) * c10 + (1.0 - x) * eta * c01 +
            x * eta * c11);
}

Field initial_guess(const BoundarySpec& spec, const Grid& grid)
{
    Field out = boundary_field(spec, grid);
    const Field interior = blend(curves_of(spec), grid);
    for (int j = 1; j < grid.ny - 1; ++j)
        for (int i = 1; i < grid.nx - 1; ++i)
            out.at(i, j) = interior.at(i, j);
    return out;
}

Field initial_guess(const std::function<double(double, double)>& dirichlet, const Grid& grid)
{
    Field out = blend(curves_of(dirichlet, grid.d), grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            if (!grid.is_interior(i, j))
                out.at(i, j) = dirichlet(grid.x(i), grid.y(j));
    return out;
}

double EquilibriumProblem::forcing(int i, int j) const
{
    const double y = grid.y(j);
    double f = params.beta * y + params.gamma;
    if (source)
        f += source(grid.x(i), y);
    return f;
}

void check_positive(const Field& field)
{
    const auto& v = field.values();
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!(v[k] > 0.0))
            throw PositivityError(k, v[k]);
}

Eigen::VectorXd assemble_residual(const Field& field, const EquilibriumProblem& problem)
{
    const Grid& g = problem.grid;
    require_matching_grid(field, g);
    check_positive(field);
    const Exponents& e = problem.exps;
    const double alpha_term = problem.params.alpha * (e.m + 1.0);
    const double half_n1 = 0.5 * (e.n + 1.0);

    Eigen::VectorXd r(static_cast<Eigen::Index>(g.interior_count()));
    for (int j = 1; j < g.ny - 1; ++j) {
        for (int i = 1; i < g.nx - 1; ++i) {
            const NodeTerms t = node_terms(field, g, e, i, j);
            // Same term order as continuous_residual.
            r[static_cast<Eigen::Index>(g.unknown(i, j))] =
                t.pow_n1 * (t.rho_xx + t.rho_yy) +
                half_n1 * t.pow_n * (t.rho_x * t.rho_x + t.rho_y * t.rho_y) +
                alpha_term * power(t.rho, e.m) + problem.forcing(i, j);
        }
    }
    return r;
}

Eigen::VectorXd assemble_residual(const Field& field, const Grid& grid,
                                  const DimensionlessParams& params, double m, double n)
{
    return assemble_residual(field, EquilibriumProblem{grid, params, {m, n}, {}});
}

SparseSystem assemble_jacobian(const Field& field, const EquilibriumProblem& problem)
{
    const Grid& g = problem.grid;
    require_matching_grid(field, g);
    check_positive(field);
    const Exponents& e = problem.exps;
    const double m = e.m;
    const double n = e.n;
    const double alpha_term = problem.params.alpha * (m + 1.0);
    const double half_n1 = 0.5 * (n + 1.0);
    const double inv_dx2 = 1.0 / (g.dx * g.dx);
    const double inv_dy2 = 1.0 / (g.dy * g.dy);

    const auto unknowns = static_cast<Eigen::Index>(g.interior_count());
    SparseSystem sys;
    sys.residual.resize(unknowns);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(unknowns) * 5);

    for (int j = 1; j < g.ny - 1; ++j) {
        for (int i = 1; i < g.nx - 1; ++i) {
            const NodeTerms t = node_terms(field, g, e, i, j);
            const auto row = static_cast<Eigen::Index>(g.unknown(i, j));
            const double lap = t.rho_xx + t.rho_yy;
            const double grad_sq = t.rho_x * t.rho_x + t.rho_y * t.rho_y;
            const double pow_m = power(t.rho, m);

            sys.residual[row] = t.pow_n1 * lap + half_n1 * t.pow_n * grad_sq +
                                alpha_term * pow_m + problem.forcing(i, j);

            // d/d rho_center: rho^(n+1), rho^n and rho^m factors plus the -2/h^2 stencil weights.
            const double center = (n + 1.0) * t.pow_n * lap -
                                  2.0 * t.pow_n1 * (inv_dx2 + inv_dy2) +
                                  half_n1 * n * power(t.rho, n - 1.0) * grad_sq +
                                  alpha_term * m * power(t.rho, m - 1.0);
            const double gx = (n + 1.0) * t.pow_n * t.rho_x / (2.0 * g.dx);
            const double gy = (n + 1.0) * t.pow_n * t.rho_y / (2.0 * g.dy);
            const double east = t.pow_n1 * inv_dx2 + gx;
            const double west = t.pow_n1 * inv_dx2 - gx;
            const double north = t.pow_n1 * inv_dy2 + gy;
            const double south = t.pow_n1 * inv_dy2 - gy;

            auto add = [&](int ii, int jj, double value) {
                if (g.is_interior(ii, jj))
                    triplets.emplace_back(row, static_cast<Eigen::Index>(g.unknown(ii, jj)),
                                          value);
            };
            add(i, j - 1, south);
            add(i - 1, j, west);
            triplets.emplace_back(row, row, center);
            add(i + 1, j, east);
            add(i, j + 1, north);
        }
    }
    sys.jacobian.resize(unknowns, unknowns);
    sys.jacobian.setFromTriplets(triplets.begin(), triplets.end());
    return sys;
}

SparseSystem assemble_jacobian(const Field& field, const Grid& grid,
                               const DimensionlessParams& params, double m, double n)
{
    return assemble_jacobian(field, EquilibriumProblem{grid, params, {m, n}, {}});
}

}  // namespace korteweg
