#include "msqed/runconfig.hpp"

#include <fstream>
#include <sstream>

namespace msqed {
namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigParseError("expected 'key = value'", lineno, 1);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigParseError("empty key", lineno, 1);
        if (val.empty())
            throw ConfigParseError("empty value for key '" + key + "'", lineno,
                                   static_cast<int>(eq) + 2);
        cfg.kv[key] = val;
    }
    if (cfg.has("seed")) cfg.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot open config file: " + path, 0, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void RunConfig::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigParseError("override must be key=value: " + assignment, 0, 0);
    kv[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
    if (has("seed")) seed = static_cast<std::uint64_t>(get_int("seed", 1));
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigParseError("not a number: " + key + " = " + it->second, 0, 0);
    }
}

int RunConfig::get_int(const std::string& key, int fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        std::size_t pos = 0;
        const int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigParseError("not an integer: " + key + " = " + it->second, 0, 0);
    }
}

std::vector<double> RunConfig::get_ladder(const std::string& key) const {
    std::vector<double> out;
    auto it = kv.find(key);
    if (it == kv.end()) return out;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const std::string t = trim(tok);
        if (t.empty()) continue;
        out.push_back(std::stod(t));
    }
    return out;
}

ModelConfig RunConfig::model() const {
    ModelConfig m;
    m.box = SpectralBox(get_double("box.L", 12.0), get_int("box.N", 32));

    const std::string pk = get("potential.kind", "harmonic");
    const double R = get_double("potential.R", -1.0);
    if (pk == "harmonic") {
        m.potential = Potential::harmonic(m.box, get_double("potential.omega0", 1.0), R);
    } else if (pk == "coulomb" || pk == "softened_coulomb") {
        m.potential = Potential::softened_coulomb(m.box, get_double("potential.c", 1.0),
                                                  get_double("potential.a_soft", 0.0), R);
    } else if (pk == "spectral_coulomb") {
        m.potential = Potential::spectral_coulomb(m.box, get_double("potential.c", 1.0), R);
    } else if (pk == "gaussian_well") {
        m.potential = Potential::gaussian_well(m.box, get_double("potential.depth", 5.0),
                                               get_double("potential.width", 1.0));
    } else {
        throw ConfigParseError("unknown potential.kind: " + pk, 0, 0);
    }

    const std::string ck = get("cutoff.kind", "one");
    if (ck == "one") m.cutoff = CutoffProfile::one();
    else if (ck == "sharp") m.cutoff = CutoffProfile::sharp(get_double("cutoff.Lambda", 8.0));
    else if (ck == "gaussian") m.cutoff = CutoffProfile::gaussian(get_double("cutoff.sigma", 4.0));
    else throw ConfigParseError("unknown cutoff.kind: " + ck, 0, 0);

    m.coupling.g = get_double("coupling.g", 0.0);
    if (has("coupling.Lambda")) m.coupling.Lambda = get_double("coupling.Lambda", 0.0);
    m.coupling.validate();
    return m;
}

SolverOptions RunConfig::solver() const {
    SolverOptions o;
    o.tol_eig = get_double("solver.tol_eig", o.tol_eig);
    o.tol_A = get_double("solver.tol_A", o.tol_A);
    o.tol_energy = get_double("solver.tol_energy", o.tol_energy);
    o.tol_virial = get_double("solver.tol_virial", o.tol_virial);
    o.max_outer = get_int("solver.max_outer", o.max_outer);
    o.max_inner_A = get_int("solver.max_inner_A", o.max_inner_A);
    o.damping = get_double("solver.damping", o.damping);
    o.eig_max_iter = get_int("solver.eig_max_iter", o.eig_max_iter);
    return o;
}

std::string RunConfig::canonical() const {
    std::string out;
    for (const auto& [k, v] : kv) {
        out += k;
        out += " = ";
        out += v;
        out += "\n";
    }
    return out;
}

std::uint64_t RunConfig::hash() const {
    const std::string text = canonical() + "seed:" + std::to_string(seed);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace msqed
