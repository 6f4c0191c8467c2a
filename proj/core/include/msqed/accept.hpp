#pragma once

#include <string>
#include <vector>

namespace msqed {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;  // "key=value" pairs, semicolon separated
    double seconds = 0.0;
};

/// Acceptance suite: each criterion is a self-contained check with pinned
/// tolerances. Valid ids are 1..9; names: identities, baseline, optimality,
/// uv, expansion, uniqueness, fock, lorentz, gap.
CriterionResult run_criterion(int id);
std::vector<int> criterion_ids_for_suite(const std::string& suite);  // throws on unknown
std::string criterion_name(int id);
std::string format_criterion_line(const CriterionResult& r);

}  // namespace msqed
