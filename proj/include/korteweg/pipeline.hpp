#pragma once

#include "korteweg/io.hpp"
#include "korteweg/verification.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace korteweg {

struct PaperCase {
    std::string name;
    Exponents exps;
    DimensionlessParams params;
};

/// The eight reference parameter sets: four linear (n = -1) cases varying
/// (m, gamma) and four nonlinear ones varying (m, n) at gamma = -1.
/// All share alpha = 1, beta = -1.2, d = 3.
std::vector<PaperCase> paper_cases();

struct CaseRun {
    std::string name;
    Exponents exps;
    DimensionlessParams params;
    Grid grid;
    Field field;
    SolveReport report;
    std::optional<EquilibriumResidual> verification;
    double min_density = 0.0;
    double max_density = 0.0;
    double symmetry_error = 0.0;  ///< max |rho(x,y) - rho(1-x,y)|
    double boundary_error = 0.0;  ///< max deviation of the boundary ring from the data
    double corner_mismatch = 0.0;
    double seconds = 0.0;
    std::string grid_file;
    std::string error;  ///< set when the case threw instead of finishing
};

double x_symmetry_error(const Field& field);

/// Solves the benchmark BVP for one parameter set; `verify` adds the
/// stress-divergence check under `physical` (or the unit-scale realization).
CaseRun run_case(const std::string& name, const Exponents& exps, const DimensionlessParams& params,
                 const Grid& grid, const BoundarySpec& boundary, const SolverConfig& solver,
                 bool verify, const std::optional<PhysicalRealization>& physical = std::nullopt);

/// All eight reference cases with the grid, boundary and solver of `base`.
/// Cases run concurrently; a failing case does not stop the others.
std::vector<CaseRun> run_paper_cases(const RunConfig& base);

std::string summary_table(const std::vector<CaseRun>& runs);

/// Result of executing one RunConfig end to end.
struct RunOutcome {
    std::vector<CaseRun> runs;
    std::optional<StudyResult> study;
    std::optional<CrossCheckResult> cross_check;
    bool all_converged = true;
};

RunOutcome execute(const RunConfig& config);

/// Writes grid files (when enabled) and `report.json` under config.out_dir.
void write_outputs(const RunConfig& config, RunOutcome& outcome);

nlohmann::json report_json(const RunConfig& config, const RunOutcome& outcome);
void write_report(const nlohmann::json& report, const std::string& path);

}  // namespace korteweg
