#pragma once

#include "korteweg/constitutive.hpp"
#include "korteweg/discretization.hpp"
#include "korteweg/solver.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace korteweg {

enum class Mode { solve, verify, study, paper_cases };
enum class StudyKind { helmholtz, laplace, manufactured, equilibrium };
enum class ParameterSource { defaults, direct, physical };

std::string to_string(Mode mode);
std::string to_string(StudyKind kind);

/// Configuration problem tied to a key and, when read from a file, a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, int line, const std::string& message);

    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }  ///< 0 when not from a file line

private:
    std::string key_;
    int line_;
};

struct RunConfig {
    Mode mode = Mode::solve;
    std::string name = "run";
    Exponents exps;
    ParameterSource source = ParameterSource::defaults;
    ConstitutiveModel model;  ///< meaningful when source == physical
    PhysicalSetup setup;
    DimensionlessParams params;
    double dx = 0.02;
    double dy = 0.02;
    BoundarySpec boundary;
    SolverConfig solver;
    StudyKind study_kind = StudyKind::helmholtz;
    std::vector<double> study_steps{0.04, 0.02, 0.01};
    std::string out_dir = ".";
    bool write_grids = true;
    bool record_timing = true;

    Grid grid() const { return make_grid(dx, dy, params.d); }
};

/// Raw `key = value` entries in file order with their line numbers.
struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
};

std::vector<ConfigEntry> tokenize_config(const std::string& text);

/// Parses a `key = value` document (`#` starts a comment). `overrides`
/// (e.g. from command-line flags) replace file values for the same key.
///
/// Recognized keys:
///   mode name m n                         (mode: solve|verify|study|paper-cases)
///   alpha beta gamma d                    direct dimensionless parameters
///   kappa1 kappa2 theta0 g ell1 ell2 R0 kappa   physical parameters
///   dx dy rho0 rho1
///   tolerance max_iterations lm_lambda0 lambda_grow lambda_shrink min_density
///   study_case (helmholtz|laplace|manufactured|equilibrium) study_steps (comma list)
///   out_dir write_grids record_timing
RunConfig parse_config(const std::string& text,
                       const std::map<std::string, std::string>& overrides = {});
RunConfig load_config(const std::string& path,
                      const std::map<std::string, std::string>& overrides = {});

/// Echo of the run written above the grid data.
struct GridHeader {
    std::string name;
    Exponents exps;
    DimensionlessParams params;
    double tolerance = 0.0;
};

/// `#`-prefixed header, a `# x y rho` column line, then one `x y rho` row per
/// node in Grid::node order, each number with 17 significant digits.
void write_grid(const Field& field, const Grid& grid, const GridHeader& header,
                const std::string& path);
std::string format_grid(const Field& field, const Grid& grid, const GridHeader& header);

struct GridFile {
    Grid grid;
    Field field;
    std::map<std::string, std::string> header;
};

GridFile read_grid(const std::string& path);
GridFile parse_grid(const std::string& text);

}  // namespace korteweg
