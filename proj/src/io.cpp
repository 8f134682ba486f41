#include "korteweg/io.hpp"

#include "korteweg/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace korteweg {

namespace {

const std::set<std::string> direct_keys{"alpha", "beta", "gamma", "d"};
const std::set<std::string> physical_keys{"kappa1", "kappa2", "theta0", "g",
                                          "ell1",   "ell2",   "R0",     "kappa"};
const std::set<std::string> other_keys{
    "mode",         "name",          "m",           "n",           "dx",
    "dy",           "rho0",          "rho1",        "tolerance",   "max_iterations",
    "lm_lambda0",   "lambda_grow",   "lambda_shrink", "min_density", "study_case",
    "study_steps",  "out_dir",       "write_grids", "record_timing"};

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const ConfigEntry& e)
{
    const char* begin = e.value.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE)
        throw ConfigError(e.key, e.line, "expected a number, got '" + e.value + "'");
    return v;
}

int parse_int(const ConfigEntry& e)
{
    const double v = parse_double(e);
    if (v != static_cast<double>(static_cast<long long>(v)))
        throw ConfigError(e.key, e.line, "expected an integer, got '" + e.value + "'");
    return static_cast<int>(v);
}

bool parse_bool(const ConfigEntry& e)
{
    if (e.value == "true" || e.value == "1" || e.value == "yes")
        return true;
    if (e.value == "false" || e.value == "0" || e.value == "no")
        return false;
    throw ConfigError(e.key, e.line, "expected true or false, got '" + e.value + "'");
}

std::vector<double> parse_list(const ConfigEntry& e)
{
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        ConfigEntry one = e;
        one.value = trim(item);
        out.push_back(parse_double(one));
    }
    if (out.empty())
        throw ConfigError(e.key, e.line, "expected a comma-separated list of numbers");
    return out;
}

Mode parse_mode(const ConfigEntry& e)
{
    if (e.value == "solve")
        return Mode::solve;
    if (e.value == "verify")
        return Mode::verify;
    if (e.value == "study")
        return Mode::study;
    if (e.value == "paper-cases")
        return Mode::paper_cases;
    throw ConfigError(e.key, e.line, "unknown mode '" + e.value + "'");
}

StudyKind parse_study(const ConfigEntry& e)
{
    if (e.value == "helmholtz")
        return StudyKind::helmholtz;
    if (e.value == "laplace")
        return StudyKind::laplace;
    if (e.value == "manufactured")
        return StudyKind::manufactured;
    if (e.value == "equilibrium")
        return StudyKind::equilibrium;
    throw ConfigError(e.key, e.line, "unknown study case '" + e.value + "'");
}

// Runs a validation callback, re-throwing its message against a key.
template <class F>
void checked(const std::string& key, int line, F&& f)
{
    try {
        f();
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(key, line, ex.what());
    } catch (const std::domain_error& ex) {
        throw ConfigError(key, line, ex.what());
    }
}

}  // namespace

std::string to_string(Mode mode)
{
    switch (mode) {
    case Mode::solve:
        return "solve";
    case Mode::verify:
        return "verify";
    case Mode::study:
        return "study";
    case Mode::paper_cases:
        return "paper-cases";
    }
    return "unknown";
}

std::string to_string(StudyKind kind)
{
    switch (kind) {
    case StudyKind::helmholtz:
        return "helmholtz";
    case StudyKind::laplace:
        return "laplace";
    case StudyKind::manufactured:
        return "manufactured";
    case StudyKind::equilibrium:
        return "equilibrium";
    }
    return "unknown";
}

ConfigError::ConfigError(std::string key, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? std::string() : "'" + key + "': ") + message),
      key_(std::move(key)),
      line_(line)
{
}

std::vector<ConfigEntry> tokenize_config(const std::string& text)
{
    std::vector<ConfigEntry> out;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw.substr(0, raw.find('#'));
        s = trim(s);
        if (s.empty())
            continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", line, "expected 'key = value'");
        ConfigEntry e{trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
        if (e.key.empty())
            throw ConfigError("", line, "missing key before '='");
        if (e.value.empty())
            throw ConfigError(e.key, line, "missing value");
        out.push_back(std::move(e));
    }
    return out;
}

RunConfig parse_config(const std::string& text, const std::map<std::string, std::string>& overrides)
{
    std::map<std::string, ConfigEntry> entries;
    for (auto& e : tokenize_config(text)) {
        if (!direct_keys.count(e.key) && !physical_keys.count(e.key) && !other_keys.count(e.key))
            throw ConfigError(e.key, e.line, "unknown key");
        if (entries.count(e.key))
            throw ConfigError(e.key, e.line,
                              "duplicate key (first set on line " +
                                  std::to_string(entries[e.key].line) + ")");
        entries[e.key] = e;
    }
    for (const auto& [key, value] : overrides) {
        if (!direct_keys.count(key) && !physical_keys.count(key) && !other_keys.count(key))
            throw ConfigError(key, 0, "unknown key");
        entries[key] = ConfigEntry{key, value, 0};
    }

    const ConfigEntry* first_direct = nullptr;
    const ConfigEntry* first_physical = nullptr;
    for (const auto& [key, e] : entries) {
        if (direct_keys.count(key) && !first_direct)
            first_direct = &e;
        if (physical_keys.count(key) && !first_physical)
            first_physical = &e;
    }
    if (first_direct && first_physical)
        throw ConfigError(first_physical->key, first_physical->line,
                          "contradictory parameter sources: '" + first_direct->key +
                              "' sets dimensionless parameters directly while '" +
                              first_physical->key + "' sets physical ones");

    RunConfig cfg;
    auto get = [&](const std::string& key) -> const ConfigEntry* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };
    auto number = [&](const std::string& key, double& target) {
        if (const auto* e = get(key))
            target = parse_double(*e);
    };

    if (const auto* e = get("mode"))
        cfg.mode = parse_mode(*e);
    if (const auto* e = get("name"))
        cfg.name = e->value;
    number("m", cfg.exps.m);
    number("n", cfg.exps.n);

    if (first_physical) {
        cfg.source = ParameterSource::physical;
        cfg.model.m = cfg.exps.m;
        cfg.model.n = cfg.exps.n;
        number("kappa1", cfg.model.kappa1);
        number("kappa2", cfg.model.kappa2);
        number("theta0", cfg.model.theta0);
        number("g", cfg.setup.g);
        number("ell1", cfg.setup.ell1);
        number("ell2", cfg.setup.ell2);
        number("R0", cfg.setup.R0);
        number("kappa", cfg.setup.kappa);
        checked(first_physical->key, first_physical->line,
                [&] { cfg.params = nondimensionalize(cfg.model, cfg.setup); });
    } else {
        if (first_direct)
            cfg.source = ParameterSource::direct;
        number("alpha", cfg.params.alpha);
        number("beta", cfg.params.beta);
        number("gamma", cfg.params.gamma);
        number("d", cfg.params.d);
        const auto* de = get("d");
        checked("d", de ? de->line : 0, [&] { cfg.params.validate(); });
    }

    number("dx", cfg.dx);
    cfg.dy = cfg.dx;
    number("dy", cfg.dy);
    number("rho0", cfg.boundary.rho0);
    number("rho1", cfg.boundary.rho1);
    cfg.boundary.d = cfg.params.d;

    number("tolerance", cfg.solver.tolerance);
    if (const auto* e = get("max_iterations"))
        cfg.solver.max_iterations = parse_int(*e);
    number("lm_lambda0", cfg.solver.lm_lambda0);
    number("lambda_grow", cfg.solver.lambda_grow);
    number("lambda_shrink", cfg.solver.lambda_shrink);
    number("min_density", cfg.solver.min_density);

    if (const auto* e = get("study_case"))
        cfg.study_kind = parse_study(*e);
    if (const auto* e = get("study_steps"))
        cfg.study_steps = parse_list(*e);
    if (const auto* e = get("out_dir"))
        cfg.out_dir = e->value;
    if (const auto* e = get("write_grids"))
        cfg.write_grids = parse_bool(*e);
    if (const auto* e = get("record_timing"))
        cfg.record_timing = parse_bool(*e);

    auto line_of = [&](const std::string& key) {
        const auto* e = get(key);
        return e ? e->line : 0;
    };
    checked("dx", line_of("dx"), [&] { cell_count(1.0, cfg.dx); });
    checked(get("dy") ? "dy" : "dx", line_of(get("dy") ? "dy" : "dx"),
            [&] { cell_count(cfg.params.d, cfg.dy); });
    checked("rho0", line_of("rho0"), [&] { cfg.boundary.validate(); });
    checked("tolerance", line_of("tolerance"), [&] { cfg.solver.validate(); });
    if (cfg.mode == Mode::study) {
        for (std::size_t k = 0; k + 1 < cfg.study_steps.size(); ++k)
            if (!(cfg.study_steps[k + 1] < cfg.study_steps[k]))
                throw ConfigError("study_steps", line_of("study_steps"),
                                  "steps must be strictly decreasing");
        for (double h : cfg.study_steps)
            checked("study_steps", line_of("study_steps"), [&] {
                cell_count(1.0, h);
                cell_count(cfg.params.d, h);
            });
    }
    return cfg;
}

RunConfig load_config(const std::string& path, const std::map<std::string, std::string>& overrides)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", 0, "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), overrides);
}

std::string format_grid(const Field& field, const Grid& grid, const GridHeader& header)
{
    if (field.nx() != grid.nx || field.ny() != grid.ny)
        throw ContractViolation("field shape does not match the grid");
    std::string out;
    out.reserve(grid.node_count() * 64 + 512);
    auto line = [&out](const std::string& key, const std::string& value) {
        out += "# " + key + " " + value + "\n";
    };
    out += "# korteweg equilibrium density grid\n";
    line("name", header.name);
    line("nx", std::to_string(grid.nx));
    line("ny", std::to_string(grid.ny));
    line("dx", format_double(grid.dx));
    line("dy", format_double(grid.dy));
    line("d", format_double(grid.d));
    line("m", format_double(header.exps.m));
    line("n", format_double(header.exps.n));
    line("alpha", format_double(header.params.alpha));
    line("beta", format_double(header.params.beta));
    line("gamma", format_double(header.params.gamma));
    line("tolerance", format_double(header.tolerance));
    out += "# x y rho\n";
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            out += format_double(grid.x(i));
            out += ' ';
            out += format_double(grid.y(j));
            out += ' ';
            out += format_double(field.at(i, j));
            out += '\n';
        }
    }
    return out;
}

void write_grid(const Field& field, const Grid& grid, const GridHeader& header,
                const std::string& path)
{
    const std::string text = format_grid(field, grid, header);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

GridFile parse_grid(const std::string& text)
{
    std::map<std::string, std::string> header;
    std::vector<double> rho;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (raw.empty())
            continue;
        if (raw[0] == '#') {
            std::istringstream hs(raw.substr(1));
            std::string key, value;
            hs >> key;
            std::getline(hs, value);
            if (!key.empty())
                header[key] = trim(value);
            continue;
        }
        const char* p = raw.c_str();
        char* end = nullptr;
        double v[3];
        for (double& x : v) {
            x = std::strtod(p, &end);
            if (end == p)
                throw std::runtime_error("grid line " + std::to_string(line) +
                                         ": expected three numbers");
            p = end;
        }
        rho.push_back(v[2]);
    }
    auto need = [&](const std::string& key) {
        const auto it = header.find(key);
        if (it == header.end())
            throw std::runtime_error("grid header lacks '" + key + "'");
        return it->second;
    };
    GridFile out;
    out.grid = make_grid(std::stoi(need("nx")), std::stoi(need("ny")), std::strtod(need("d").c_str(), nullptr));
    if (rho.size() != out.grid.node_count())
        throw std::runtime_error("grid file has " + std::to_string(rho.size()) + " rows, expected " +
                                 std::to_string(out.grid.node_count()));
    out.field = Field(out.grid);
    out.field.values() = std::move(rho);
    out.header = std::move(header);
    return out;
}

GridFile read_grid(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open grid file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_grid(ss.str());
}

}  // namespace korteweg
