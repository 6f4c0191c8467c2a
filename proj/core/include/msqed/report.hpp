#pragma once

#include <string>
#include <vector>

#include "msqed/runconfig.hpp"
#include "msqed/solver.hpp"

namespace msqed {

/// Full machine-readable record of a run (JSON). Floats are serialized
/// round-trip exact (17 significant digits).
std::string run_record_json(const RunConfig& cfg, const MinimizerResult& r,
                            const HypothesisReport& hyp);
std::string uv_record_json(const RunConfig& cfg, const UvSweepResult& r);
std::string expansion_record_json(const RunConfig& cfg, const ExpansionReport& r);

/// CSV with one column per named series; floats as %.17g.
std::string csv_table(const std::vector<std::string>& headers,
                      const std::vector<std::vector<double>>& columns);

/// Atomic write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);
void ensure_directory(const std::string& path);
std::string format17(double v);

}  // namespace msqed
