#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "msqed/model.hpp"
#include "msqed/solver.hpp"

namespace msqed {

class ConfigParseError : public std::runtime_error {
  public:
    ConfigParseError(std::string msg, int line, int column)
        : std::runtime_error(std::move(msg)), line(line), column(column) {}
    int line;
    int column;
};

/// Flat key-value configuration ("a.b = value" lines, '#' comments).
struct RunConfig {
    std::map<std::string, std::string> kv;
    std::uint64_t seed = 1;

    static RunConfig parse(const std::string& text);
    static RunConfig parse_file(const std::string& path);
    void apply_override(const std::string& assignment);  // "key=value"

    bool has(const std::string& key) const { return kv.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<double> get_ladder(const std::string& key) const;

    ModelConfig model() const;
    SolverOptions solver() const;
    std::string experiment() const { return get("experiment.kind", "minimize"); }
    std::string output_dir() const { return get("output.dir", "out"); }

    /// Canonical text: sorted "key = value" lines (stable hash input).
    std::string canonical() const;
    std::uint64_t hash() const;  // FNV-1a over the canonical text + seed
};

}  // namespace msqed
