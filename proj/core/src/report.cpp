#include "msqed/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace msqed {

using nlohmann::json;

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

json config_json(const RunConfig& cfg) {
    json j;
    for (const auto& [k, v] : cfg.kv) j[k] = v;
    return j;
}

json breakdown_json(const EnergyBreakdown& eb) {
    return json{{"e1", eb.e1},
                {"e2", eb.e2},
                {"e3_re", eb.e3.real()},
                {"e3_im", eb.e3.imag()},
                {"e4", eb.e4},
                {"e5", eb.e5},
                {"total", eb.total},
                {"pauli_total", eb.pauli_total}};
}

json result_json(const MinimizerResult& r) {
    return json{{"E_V", r.E},
                {"mu_V", r.mu_V},
                {"breakdown", breakdown_json(r.breakdown)},
                {"outer_iterations", r.outer_iterations},
                {"energy_history", r.energy_history},
                {"residual_A", r.residual_A},
                {"residual_u", r.residual_u},
                {"phi_norm", r.phi_norm},
                {"virial", {r.virial_vec[0], r.virial_vec[1], r.virial_vec[2]}},
                {"virial_norm", r.virial_norm},
                {"leray_effect", r.leray_effect},
                {"wall_time_s", r.wall_time_s},
                {"converged", r.converged}};
}

}  // namespace

std::string run_record_json(const RunConfig& cfg, const MinimizerResult& r,
                            const HypothesisReport& hyp) {
    json j;
    j["schema"] = "msqed.run/1";
    j["config"] = config_json(cfg);
    j["config_hash"] = cfg.hash();
    j["seed"] = cfg.seed;
    j["result"] = result_json(r);
    j["hypothesis"] = json{{"potential_even_residual", hyp.potential_even_residual},
                           {"v1_min", hyp.v1_min},
                           {"decomposition_residual", hyp.decomposition_residual},
                           {"chi1_over_k_l2", hyp.chi1_over_k_l2},
                           {"chi2_over_k_weak_l3", hyp.chi2_over_k_weak_l3},
                           {"a_candidate", hyp.a_candidate},
                           {"b_candidate", hyp.b_candidate},
                           {"g_chi", hyp.g_chi},
                           {"smallness_lhs", hyp.smallness_lhs},
                           {"smallness_ok", hyp.smallness_ok},
                           {"structural_ok", hyp.structural_ok}};
    return j.dump(2);
}

std::string uv_record_json(const RunConfig& cfg, const UvSweepResult& r) {
    json j;
    j["schema"] = "msqed.uv_sweep/1";
    j["config"] = config_json(cfg);
    j["config_hash"] = cfg.hash();
    j["seed"] = cfg.seed;
    j["lambdas"] = r.lambdas;
    j["energies"] = r.energies;
    j["monotone"] = r.monotone;
    j["cauchy_shrinks"] = r.cauchy_shrinks;
    json runs = json::array();
    for (const auto& run : r.runs) runs.push_back(result_json(run));
    j["runs"] = runs;
    return j.dump(2);
}

std::string expansion_record_json(const RunConfig& cfg, const ExpansionReport& r) {
    json j;
    j["schema"] = "msqed.expansion/1";
    j["config"] = config_json(cfg);
    j["config_hash"] = cfg.hash();
    j["seed"] = cfg.seed;
    j["g_values"] = r.g_values;
    j["energies"] = r.energies;
    j["mu_V"] = r.mu_V;
    j["c2_fit"] = r.c2_fit;
    j["c2_sign"] = r.c2_sign;
    j["c2_predicted"] = r.c2_predicted;
    j["c2_response"] = r.c2_response;
    j["remainder_slope"] = r.remainder_slope;
    j["remainder_bound"] = r.remainder_bound;
    j["phi_norms"] = r.phi_norms;
    j["a_norms"] = r.a_norms;
    j["a1_deviation"] = r.a1_deviation;
    j["omega_dev"] = r.omega_dev;
    j["slopes"] = json{{"phi", r.phi_slope},
                       {"a", r.a_slope},
                       {"a1", r.a1_slope},
                       {"omega", r.omega_slope}};
    return j.dump(2);
}

std::string csv_table(const std::vector<std::string>& headers,
                      const std::vector<std::vector<double>>& columns) {
    std::string out;
    for (std::size_t c = 0; c < headers.size(); ++c) {
        out += headers[c];
        out += (c + 1 < headers.size()) ? "," : "\n";
    }
    std::size_t rows = 0;
    for (const auto& col : columns) rows = std::max(rows, col.size());
    for (std::size_t rr = 0; rr < rows; ++rr) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (rr < columns[c].size()) out += format17(columns[c][rr]);
            out += (c + 1 < columns.size()) ? "," : "\n";
        }
    }
    return out;
}

void ensure_directory(const std::string& path) {
    std::filesystem::create_directories(path);
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, p);
}

}  // namespace msqed
