#include "korteweg/verification.hpp"

#include "korteweg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace korteweg {

namespace {

double max_abs(const std::vector<double>& v)
{
    double out = 0.0;
    for (double x : v)
        out = std::max(out, std::abs(x));
    return out;
}

}  // namespace

EquilibriumResidual stress_divergence_residual(const Field& field, const Grid& grid,
                                               const ConstitutiveModel& model,
                                               const PhysicalSetup& setup)
{
    if (grid.nx < 5 || grid.ny < 5)
        throw ContractViolation("stress-divergence check needs at least 5 nodes per direction");
    if (field.nx() != grid.nx || field.ny() != grid.ny)
        throw ContractViolation("field shape does not match the grid");
    model.validate();
    setup.validate();
    check_positive(field);

    const int nx = grid.nx;
    const int ny = grid.ny;
    const double hx = setup.ell1 * grid.dx;
    const double hy = setup.ell1 * grid.dy;
    auto rho = [&](int i, int j) { return setup.R0 * field.at(i, j); };

    // Flux components at ring >= 1 nodes.
    std::vector<double> fxx(grid.node_count()), fxy(grid.node_count()), fyy(grid.node_count());
    for (int j = 1; j < ny - 1; ++j) {
        for (int i = 1; i < nx - 1; ++i) {
            const double r = rho(i, j);
            const double rx = (rho(i + 1, j) - rho(i - 1, j)) / (2.0 * hx);
            const double ry = (rho(i, j + 1) - rho(i, j - 1)) / (2.0 * hy);
            const double lap = (rho(i + 1, j) - 2.0 * r + rho(i - 1, j)) / (hx * hx) +
                               (rho(i, j + 1) - 2.0 * r + rho(i, j - 1)) / (hy * hy);
            const StressCoefficients c = stress_coefficients(model, r);
            const double isotropic = -c.p + c.alpha1 * lap + c.alpha2 * (rx * rx + ry * ry);
            const std::size_t k = grid.node(i, j);
            fxx[k] = isotropic + c.alpha3 * rx * rx;
            fxy[k] = c.alpha3 * rx * ry;
            fyy[k] = isotropic + c.alpha3 * ry * ry;
        }
    }

    EquilibriumResidual out;
    out.nx_inner = nx - 4;
    out.ny_inner = ny - 4;
    out.res_x.reserve(static_cast<std::size_t>(out.nx_inner) * out.ny_inner);
    out.res_y.reserve(out.res_x.capacity());
    for (int j = 2; j < ny - 2; ++j) {
        for (int i = 2; i < nx - 2; ++i) {
            const std::size_t e = grid.node(i + 1, j), w = grid.node(i - 1, j);
            const std::size_t n = grid.node(i, j + 1), s = grid.node(i, j - 1);
            out.res_x.push_back((fxx[e] - fxx[w]) / (2.0 * hx) + (fxy[n] - fxy[s]) / (2.0 * hy));
            out.res_y.push_back((fxy[e] - fxy[w]) / (2.0 * hx) + (fyy[n] - fyy[s]) / (2.0 * hy) -
                                rho(i, j) * setup.g);
        }
    }
    out.maxnorm_x = max_abs(out.res_x);
    out.maxnorm_y = max_abs(out.res_y);
    return out;
}

std::pair<double, double> restricted_maxnorm(const EquilibriumResidual& res, const Grid& grid,
                                             const std::function<bool(double, double)>& keep)
{
    double mx = 0.0, my = 0.0;
    std::size_t k = 0;
    for (int j = 2; j < grid.ny - 2; ++j) {
        for (int i = 2; i < grid.nx - 2; ++i, ++k) {
            if (!keep(grid.x(i), grid.y(j)))
                continue;
            mx = std::max(mx, std::abs(res.res_x[k]));
            my = std::max(my, std::abs(res.res_y[k]));
        }
    }
    return {mx, my};
}

LinearCaseSolution::LinearCaseSolution(const DimensionlessParams& params, const ModalPart& modal)
    : case_(LinearCase::helmholtz_m1), params_(params), modal_(modal)
{
    params_.validate();
    if (!(params_.alpha > 0.0))
        throw ContractViolation("the m = 1 reduction needs alpha > 0");
    const double k2 = modal.a * modal.a + modal.b * modal.b;
    if (std::abs(k2 - 2.0 * params_.alpha) > 1e-12 * std::max(1.0, 2.0 * params_.alpha)) {
        std::ostringstream os;
        os << "wavenumbers give a^2 + b^2 = " << k2 << " but 2 alpha = " << 2.0 * params_.alpha;
        throw ContractViolation(os.str());
    }
}

LinearCaseSolution::LinearCaseSolution(const DimensionlessParams& params,
                                       const HarmonicPart& harmonic)
    : case_(LinearCase::laplace_mm1), params_(params), harmonic_(harmonic)
{
    params_.validate();
}

Exponents LinearCaseSolution::exponents() const
{
    return case_ == LinearCase::helmholtz_m1 ? Exponents{1.0, -1.0} : Exponents{-1.0, -1.0};
}

PointDerivatives LinearCaseSolution::homogeneous(double x, double y) const
{
    PointDerivatives out;
    if (case_ == LinearCase::helmholtz_m1) {
        const auto& m = modal_;
        const double sx = std::sin(m.a * x + m.phase_x), cx = std::cos(m.a * x + m.phase_x);
        const double sy = std::sin(m.b * y + m.phase_y), cy = std::cos(m.b * y + m.phase_y);
        out.value = m.amplitude * sx * sy;
        out.x = m.amplitude * m.a * cx * sy;
        out.y = m.amplitude * m.b * sx * cy;
        out.xx = -m.a * m.a * out.value;
        out.yy = -m.b * m.b * out.value;
        return out;
    }
    const auto& h = harmonic_;
    const double k = h.exp_k;
    const double ex = h.exp_amplitude * std::exp(k * x);
    const double sk = std::sin(k * y), ck = std::cos(k * y);
    out.value = h.c0 + h.cx * x + h.cy * y + h.c_saddle * (x * x - y * y) + h.c_xy * x * y + ex * sk;
    out.x = h.cx + 2.0 * h.c_saddle * x + h.c_xy * y + k * ex * sk;
    out.y = h.cy - 2.0 * h.c_saddle * y + h.c_xy * x + k * ex * ck;
    out.xx = 2.0 * h.c_saddle + k * k * ex * sk;
    out.yy = -2.0 * h.c_saddle - k * k * ex * sk;
    return out;
}

double LinearCaseSolution::shift(double y) const
{
    const auto& p = params_;
    if (case_ == LinearCase::helmholtz_m1)
        return -(p.beta * y + p.gamma) / (2.0 * p.alpha);
    return -p.beta / 6.0 * y * y * y - p.gamma / 2.0 * y * y;
}

PointDerivatives LinearCaseSolution::derivatives(double x, double y) const
{
    PointDerivatives out = homogeneous(x, y);
    const auto& p = params_;
    out.value += shift(y);
    if (case_ == LinearCase::helmholtz_m1) {
        out.y += -p.beta / (2.0 * p.alpha);
    } else {
        out.y += -p.beta / 2.0 * y * y - p.gamma * y;
        out.yy += -p.beta * y - p.gamma;
    }
    return out;
}

LinearCaseSolution exact_linear_solution(LinearCase linear_case, const DimensionlessParams& params,
                                         const ModalPart& modal)
{
    if (linear_case != LinearCase::helmholtz_m1)
        throw ContractViolation("a modal part belongs to the m = 1 reduction");
    return {params, modal};
}

LinearCaseSolution exact_linear_solution(LinearCase linear_case, const DimensionlessParams& params,
                                         const HarmonicPart& harmonic)
{
    if (linear_case != LinearCase::laplace_mm1)
        throw ContractViolation("a harmonic part belongs to the m = -1 reduction");
    return {params, harmonic};
}

ManufacturedCase helmholtz_case(const DimensionlessParams& params, const ModalPart& modal)
{
    const auto sol = exact_linear_solution(LinearCase::helmholtz_m1, params, modal);
    return {"helmholtz_m1", params, sol.exponents(), [sol](double x, double y) { return sol(x, y); },
            {}};
}

ManufacturedCase laplace_case(const DimensionlessParams& params, const HarmonicPart& harmonic)
{
    const auto sol = exact_linear_solution(LinearCase::laplace_mm1, params, harmonic);
    return {"laplace_mm1", params, sol.exponents(), [sol](double x, double y) { return sol(x, y); },
            {}};
}

ManufacturedCase manufactured_case(const DimensionlessParams& params, const Exponents& exps,
                                   double base, double amplitude)
{
    params.validate();
    const double pi = std::numbers::pi;
    const double ky = pi / params.d;
    auto exact = [=](double x, double y) { return base + amplitude * std::sin(pi * x) * std::sin(ky * y); };
    auto source = [=](double x, double y) {
        const double sx = std::sin(pi * x), cx = std::cos(pi * x);
        const double sy = std::sin(ky * y), cy = std::cos(ky * y);
        const double rho = base + amplitude * sx * sy;
        const double rho_x = amplitude * pi * cx * sy;
        const double rho_y = amplitude * ky * sx * cy;
        const double rho_xx = -amplitude * pi * pi * sx * sy;
        const double rho_yy = -amplitude * ky * ky * sx * sy;
        return -continuous_residual(params, exps, rho, rho_x, rho_y, rho_xx, rho_yy,
                                    params.beta * y + params.gamma);
    };
    std::ostringstream name;
    name << "manufactured_m" << exps.m << "_n" << exps.n;
    return {name.str(), params, exps, exact, source};
}

std::vector<double> observed_orders(const std::vector<double>& steps,
                                    const std::vector<double>& errors)
{
    std::vector<double> out;
    const std::size_t n = std::min(steps.size(), errors.size());
    for (std::size_t k = 0; k + 1 < n; ++k)
        out.push_back(std::log(errors[k] / errors[k + 1]) / std::log(steps[k] / steps[k + 1]));
    return out;
}

StudyResult convergence_study(const ManufacturedCase& study_case, const std::vector<double>& steps,
                              const SolverConfig& config)
{
    StudyResult out;
    out.name = study_case.name;
    if (steps.empty()) {
        out.aborted = true;
        out.message = "no grid steps given";
        return out;
    }
    for (std::size_t k = 0; k + 1 < steps.size(); ++k)
        if (!(steps[k + 1] < steps[k]))
            throw ContractViolation("study steps must be strictly decreasing");

    std::vector<double> errors;
    for (double h : steps) {
        const Grid grid = make_grid(h, h, study_case.params.d);
        const EquilibriumProblem problem{grid, study_case.params, study_case.exps,
                                         study_case.source};
        const SolveResult solved = solve(problem, initial_guess(study_case.exact, grid), config);

        StudyLevel level;
        level.step = h;
        level.nx = grid.nx;
        level.ny = grid.ny;
        level.solve = solved.report;
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i)
                level.max_error = std::max(
                    level.max_error,
                    std::abs(solved.field.at(i, j) - study_case.exact(grid.x(i), grid.y(j))));
        out.levels.push_back(level);
        if (!solved.report.converged) {
            out.aborted = true;
            out.message = "solver did not converge at step " + std::to_string(h);
            break;
        }
        errors.push_back(level.max_error);
    }
    if (!out.aborted && out.levels.size() < 2)
        out.message = "single level: no observed order";
    out.orders = observed_orders(
        std::vector<double>(steps.begin(), steps.begin() + static_cast<long>(errors.size())), errors);
    return out;
}

CrossCheckResult equilibrium_cross_check(const DimensionlessParams& params, const Exponents& exps,
                                         const BoundarySpec& boundary,
                                         const std::vector<double>& steps,
                                         const SolverConfig& config, double corner_radius)
{
    const PhysicalRealization phys = realize(params, exps);
    CrossCheckResult out;
    out.corner_radius = corner_radius;
    const double d = params.d;
    auto away = [corner_radius, d](double x, double y) {
        return std::hypot(x, y - d) >= corner_radius && std::hypot(x - 1.0, y - d) >= corner_radius;
    };

    std::vector<double> used, ex, ey, ax, ay;
    for (double h : steps) {
        const Grid grid = make_grid(h, h, d);
        const EquilibriumProblem problem{grid, params, exps, {}};
        const SolveResult solved = solve(problem, initial_guess(boundary, grid), config);
        const EquilibriumResidual res =
            stress_divergence_residual(solved.field, grid, phys.model, phys.setup);
        const auto [rx, ry] = restricted_maxnorm(res, grid, away);

        out.levels.push_back({h, solved.report.converged, solved.report.final_residual_maxnorm,
                              res.maxnorm_x, res.maxnorm_y, rx, ry});
        used.push_back(h);
        ex.push_back(res.maxnorm_x);
        ey.push_back(res.maxnorm_y);
        ax.push_back(rx);
        ay.push_back(ry);
    }
    out.orders_x = observed_orders(used, ex);
    out.orders_y = observed_orders(used, ey);
    out.away_orders_x = observed_orders(used, ax);
    out.away_orders_y = observed_orders(used, ay);
    return out;
}

}  // namespace korteweg
