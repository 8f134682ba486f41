#include "korteweg/pipeline.hpp"

#include "korteweg/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

namespace korteweg {

namespace {

const DimensionlessParams reference{1.0, -1.2, -1.0, 3.0};

DimensionlessParams with_gamma(double gamma)
{
    DimensionlessParams p = reference;
    p.gamma = gamma;
    return p;
}

double boundary_deviation(const Field& field, const Field& expected)
{
    double out = 0.0;
    for (int j = 0; j < field.ny(); ++j)
        for (int i = 0; i < field.nx(); ++i)
            if (i == 0 || j == 0 || i == field.nx() - 1 || j == field.ny() - 1)
                out = std::max(out, std::abs(field.at(i, j) - expected.at(i, j)));
    return out;
}

nlohmann::json solve_json(const SolveReport& r)
{
    return {{"converged", r.converged},
            {"termination", to_string(r.termination)},
            {"iterations", r.iterations},
            {"newton_steps", r.newton_steps},
            {"rejected_steps", r.rejected_steps},
            {"positivity_rejections", r.positivity_rejections},
            {"final_residual_maxnorm", r.final_residual_maxnorm},
            {"final_lambda", r.final_lambda},
            {"residual_norm_history", r.residual_norm_history},
            {"maxnorm_history", r.maxnorm_history}};
}

nlohmann::json run_json(const CaseRun& run, bool timing)
{
    nlohmann::json j = solve_json(run.report);
    j["name"] = run.name;
    j["m"] = run.exps.m;
    j["n"] = run.exps.n;
    j["alpha"] = run.params.alpha;
    j["beta"] = run.params.beta;
    j["gamma"] = run.params.gamma;
    j["d"] = run.params.d;
    j["nx"] = run.grid.nx;
    j["ny"] = run.grid.ny;
    j["dx"] = run.grid.dx;
    j["dy"] = run.grid.dy;
    j["min_density"] = run.min_density;
    j["max_density"] = run.max_density;
    j["symmetry_error"] = run.symmetry_error;
    j["boundary_error"] = run.boundary_error;
    j["corner_mismatch"] = run.corner_mismatch;
    if (run.verification)
        j["verification"] = {{"maxnorm_x", run.verification->maxnorm_x},
                             {"maxnorm_y", run.verification->maxnorm_y}};
    else
        j["verification"] = nullptr;
    if (!run.grid_file.empty())
        j["grid_file"] = run.grid_file;
    if (!run.error.empty())
        j["error"] = run.error;
    if (timing)
        j["timing_seconds"] = run.seconds;
    return j;
}

nlohmann::json study_json(const StudyResult& s)
{
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& l : s.levels)
        levels.push_back({{"step", l.step},
                          {"nx", l.nx},
                          {"ny", l.ny},
                          {"max_error", l.max_error},
                          {"solve", solve_json(l.solve)}});
    return {{"name", s.name},
            {"levels", levels},
            {"orders", s.orders},
            {"aborted", s.aborted},
            {"message", s.message}};
}

nlohmann::json cross_check_json(const CrossCheckResult& c)
{
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& l : c.levels)
        levels.push_back({{"step", l.step},
                          {"converged", l.converged},
                          {"solve_residual", l.solve_residual},
                          {"maxnorm_x", l.maxnorm_x},
                          {"maxnorm_y", l.maxnorm_y},
                          {"away_maxnorm_x", l.away_maxnorm_x},
                          {"away_maxnorm_y", l.away_maxnorm_y}});
    return {{"name", "equilibrium_cross_check"},
            {"levels", levels},
            {"orders_x", c.orders_x},
            {"orders_y", c.orders_y},
            {"away_orders_x", c.away_orders_x},
            {"away_orders_y", c.away_orders_y},
            {"corner_radius", c.corner_radius}};
}

}  // namespace

std::vector<PaperCase> paper_cases()
{
    return {
        {"fig1_m1_gamma1", {1.0, -1.0}, with_gamma(1.0)},
        {"fig1_m1_gamma-1", {1.0, -1.0}, with_gamma(-1.0)},
        {"fig1_m-1_gamma1", {-1.0, -1.0}, with_gamma(1.0)},
        {"fig1_m-1_gamma-1", {-1.0, -1.0}, with_gamma(-1.0)},
        {"fig2_m1_n-2", {1.0, -2.0}, reference},
        {"fig2_m1_n-3", {1.0, -3.0}, reference},
        {"fig2_m1_n1", {1.0, 1.0}, reference},
        {"fig2_m1_n0", {1.0, 0.0}, reference},
    };
}

double x_symmetry_error(const Field& field)
{
    double out = 0.0;
    for (int j = 0; j < field.ny(); ++j)
        for (int i = 0; i < field.nx(); ++i)
            out = std::max(out, std::abs(field.at(i, j) - field.at(field.nx() - 1 - i, j)));
    return out;
}

CaseRun run_case(const std::string& name, const Exponents& exps, const DimensionlessParams& params,
                 const Grid& grid, const BoundarySpec& boundary, const SolverConfig& solver,
                 bool verify, const std::optional<PhysicalRealization>& physical)
{
    const auto start = std::chrono::steady_clock::now();
    CaseRun run;
    run.name = name;
    run.exps = exps;
    run.params = params;
    run.grid = grid;
    run.corner_mismatch = corner_mismatch(boundary);
    try {
        const Field initial = initial_guess(boundary, grid);
        SolveResult solved = solve(EquilibriumProblem{grid, params, exps, {}}, initial, solver);
        run.field = std::move(solved.field);
        run.report = solved.report;
        const auto [lo, hi] = std::minmax_element(run.field.values().begin(), run.field.values().end());
        run.min_density = *lo;
        run.max_density = *hi;
        run.symmetry_error = x_symmetry_error(run.field);
        run.boundary_error = boundary_deviation(run.field, boundary_field(boundary, grid));
        if (verify) {
            const PhysicalRealization phys = physical ? *physical : realize(params, exps);
            run.verification = stress_divergence_residual(run.field, grid, phys.model, phys.setup);
        }
    } catch (const std::exception& ex) {
        run.error = ex.what();
        run.report.converged = false;
    }
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

std::vector<CaseRun> run_paper_cases(const RunConfig& base)
{
    const Grid grid = make_grid(base.dx, base.dy, 3.0);
    BoundarySpec boundary = base.boundary;
    boundary.d = 3.0;
    std::vector<std::future<CaseRun>> pending;
    for (const PaperCase& c : paper_cases())
        pending.push_back(std::async(std::launch::async, [c, grid, boundary, &base] {
            return run_case(c.name, c.exps, c.params, grid, boundary, base.solver, true);
        }));
    std::vector<CaseRun> out;
    for (auto& f : pending)
        out.push_back(f.get());
    return out;
}

std::string summary_table(const std::vector<CaseRun>& runs)
{
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-18s %5s %4s %4s %12s %9s %9s %10s %10s %10s\n", "case", "conv",
                  "iter", "rej", "res_max", "rho_min", "rho_max", "sym_err", "divT_x", "divT_y");
    os << buf;
    for (const auto& r : runs) {
        const double vx = r.verification ? r.verification->maxnorm_x : NAN;
        const double vy = r.verification ? r.verification->maxnorm_y : NAN;
        std::snprintf(buf, sizeof buf, "%-18s %5s %4d %4d %12.3e %9.5f %9.5f %10.2e %10.3e %10.3e\n",
                      r.name.c_str(), r.report.converged ? "yes" : "NO", r.report.iterations,
                      r.report.rejected_steps, r.report.final_residual_maxnorm, r.min_density,
                      r.max_density, r.symmetry_error, vx, vy);
        os << buf;
        if (!r.error.empty())
            os << "  error: " << r.error << "\n";
    }
    return os.str();
}

RunOutcome execute(const RunConfig& config)
{
    RunOutcome out;
    switch (config.mode) {
    case Mode::paper_cases:
        out.runs = run_paper_cases(config);
        break;
    case Mode::solve:
    case Mode::verify: {
        std::optional<PhysicalRealization> phys;
        if (config.source == ParameterSource::physical)
            phys = PhysicalRealization{config.model, config.setup};
        out.runs.push_back(run_case(config.name, config.exps, config.params, config.grid(),
                                    config.boundary, config.solver, config.mode == Mode::verify,
                                    phys));
        break;
    }
    case Mode::study:
        switch (config.study_kind) {
        case StudyKind::helmholtz: {
            const double k = std::sqrt(config.params.alpha);
            out.study = convergence_study(helmholtz_case(config.params, {1.0, k, k, 0.0, 0.0}),
                                          config.study_steps, config.solver);
            break;
        }
        case StudyKind::laplace: {
            HarmonicPart h;
            h.c0 = 1.0;
            h.c_saddle = 1.0;
            out.study = convergence_study(laplace_case(config.params, h), config.study_steps,
                                          config.solver);
            break;
        }
        case StudyKind::manufactured:
            out.study = convergence_study(manufactured_case(config.params, config.exps),
                                          config.study_steps, config.solver);
            break;
        case StudyKind::equilibrium:
            out.cross_check = equilibrium_cross_check(config.params, config.exps, config.boundary,
                                                      config.study_steps, config.solver);
            break;
        }
        break;
    }
    for (const auto& r : out.runs)
        out.all_converged = out.all_converged && r.report.converged;
    if (out.study)
        out.all_converged = out.all_converged && !out.study->aborted;
    if (out.cross_check)
        for (const auto& l : out.cross_check->levels)
            out.all_converged = out.all_converged && l.converged;
    return out;
}

nlohmann::json report_json(const RunConfig& config, const RunOutcome& outcome)
{
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : outcome.runs)
        runs.push_back(run_json(r, config.record_timing));
    nlohmann::json j = {{"schema", "korteweg-report/1"},
                        {"mode", to_string(config.mode)},
                        {"tolerance", config.solver.tolerance},
                        {"all_converged", outcome.all_converged},
                        {"runs", runs}};
    if (outcome.study)
        j["study"] = study_json(*outcome.study);
    if (outcome.cross_check)
        j["study"] = cross_check_json(*outcome.cross_check);
    return j;
}

void write_report(const nlohmann::json& report, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << report.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

void write_outputs(const RunConfig& config, RunOutcome& outcome)
{
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    if (config.write_grids) {
        for (auto& r : outcome.runs) {
            if (r.field.values().empty())
                continue;
            const std::string file = r.name + ".dat";
            write_grid(r.field, r.grid, {r.name, r.exps, r.params, config.solver.tolerance},
                       (fs::path(config.out_dir) / file).string());
            r.grid_file = file;
        }
    }
    write_report(report_json(config, outcome), (fs::path(config.out_dir) / "report.json").string());
}

}  // namespace korteweg
