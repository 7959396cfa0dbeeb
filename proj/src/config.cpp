#include "rotstar/config.hpp"
#include "rotstar/errors.hpp"

#include <array>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rotstar::config {

namespace {

// every key any subcommand understands; anything else is a config error
constexpr std::array known_keys = {
    "gamma", "central_value", "mass", "kappa",
    "radial.step", "radial.tol", "radial.xi_max",
    "rotation.kind", "rotation.omega_bar", "rotation.p", "rotation.table_path",
    "grid.nr", "grid.nz", "grid.rmax", "grid.zmax",
    "scf.relax", "scf.tol", "scf.max_iter", "scf.mass_tol", "scf.eps_boundary",
    "norm.s",
    "continuation.kappa_max", "continuation.step0", "continuation.step_min",
    "continuation.support_frac", "continuation.rho_factor", "continuation.snapshot_every",
    "maclaurin.e_min", "maclaurin.e_max", "maclaurin.n", "maclaurin.npts", "maclaurin.tol",
    "init.path",
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

RunConfig RunConfig::parse_string(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected `key = value`, got `" + line + "`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end())
            throw ConfigError("config: unknown key `" + key + "`");
        if (cfg.values_.count(key))
            throw ConfigError("config: duplicate key `" + key + "`");
        cfg.values_[key] = value;
    }
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

bool RunConfig::has(const std::string& key) const {
    return values_.count(key) != 0;
}

void RunConfig::require(const std::string& key) const {
    if (!has(key))
        throw ConfigError("config: missing required key `" + key + "`");
}

double RunConfig::get_double(const std::string& key) const {
    require(key);
    const std::string& v = values_.at(key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config: key `" + key + "` is not a number: `" + v + "`");
    return x;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int RunConfig::get_int(const std::string& key) const {
    require(key);
    const std::string& v = values_.at(key);
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config: key `" + key + "` is not an integer: `" + v + "`");
    return static_cast<int>(x);
}

int RunConfig::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::string RunConfig::get_string(const std::string& key) const {
    require(key);
    return values_.at(key);
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

} // namespace rotstar::config
