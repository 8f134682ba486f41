// Batch front-end for the Korteweg equilibrium solver.
//
//   korteweg --mode paper-cases --out-dir out
//   korteweg --config run.cfg --dx 0.01
//
// Flags override config-file values. Exit status: 0 all solves converged,
// 2 at least one did not, 1 usage or configuration error.

#include "korteweg/pipeline.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>
#include <string>

int main(int argc, char** argv)
{
    CLI::App app{"Equilibrium density fields of a third-grade Korteweg fluid"};
    std::string config_path;
    std::string mode, out_dir, dx, tol, study;
    bool quiet = false;
    app.add_option("-c,--config", config_path, "key = value run configuration");
    app.add_option("--mode", mode, "solve | verify | study | paper-cases");
    app.add_option("--out-dir", out_dir, "directory for grid files and report.json");
    app.add_option("--dx", dx, "grid step (sets dx and dy)");
    app.add_option("--tol", tol, "residual max-norm tolerance");
    app.add_option("--study", study, "helmholtz | laplace | manufactured | equilibrium");
    app.add_flag("-q,--quiet", quiet, "suppress the summary table");
    CLI11_PARSE(app, argc, argv);

    std::map<std::string, std::string> overrides;
    if (!mode.empty())
        overrides["mode"] = mode;
    if (!out_dir.empty())
        overrides["out_dir"] = out_dir;
    if (!dx.empty()) {
        overrides["dx"] = dx;
        overrides["dy"] = dx;
    }
    if (!tol.empty())
        overrides["tolerance"] = tol;
    if (!study.empty())
        overrides["study_case"] = study;

    korteweg::RunConfig config;
    try {
        config = config_path.empty() ? korteweg::parse_config("", overrides)
                                     : korteweg::load_config(config_path, overrides);
    } catch (const korteweg::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << '\n';
        return 1;
    }

    try {
        korteweg::RunOutcome outcome = korteweg::execute(config);
        korteweg::write_outputs(config, outcome);
        if (!quiet) {
            if (!outcome.runs.empty())
                std::cout << korteweg::summary_table(outcome.runs);
            if (outcome.study) {
                const auto& s = *outcome.study;
                std::cout << "study " << s.name << "\n";
                for (std::size_t k = 0; k < s.levels.size(); ++k) {
                    std::cout << "  h=" << s.levels[k].step << " error=" << s.levels[k].max_error;
                    if (k > 0 && k - 1 < s.orders.size())
                        std::cout << " order=" << s.orders[k - 1];
                    std::cout << '\n';
                }
                if (!s.message.empty())
                    std::cout << "  " << s.message << '\n';
            }
            if (outcome.cross_check) {
                const auto& c = *outcome.cross_check;
                std::cout << "equilibrium cross-check\n";
                for (std::size_t k = 0; k < c.levels.size(); ++k) {
                    const auto& l = c.levels[k];
                    std::cout << "  h=" << l.step << " max_x=" << l.maxnorm_x
                              << " max_y=" << l.maxnorm_y << " away_x=" << l.away_maxnorm_x
                              << " away_y=" << l.away_maxnorm_y << '\n';
                }
            }
            std::cout << "report: " << config.out_dir << "/report.json\n";
        }
        return outcome.all_converged ? 0 : 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
}
