#pragma once

// JSON renderings of experiment reports (nlohmann/json).

#include <json.hpp>

#include <string>

#include "crossbar/experiment.hpp"

namespace crossbar {

namespace detail {

inline nlohmann::ordered_json breakdown_json(const ErrorBreakdown& e) {
    return {{"truncation", e.truncation},
            {"stage1_noise", e.stage1_noise},
            {"stage2_noise", e.stage2_noise},
            {"accumulated", e.accumulated},
            {"total", e.total}};
}

inline nlohmann::ordered_json fit_json(const LogLogFit& f) {
    return {{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}};
}

inline nlohmann::ordered_json opt_json(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace detail

inline std::string render_sweep_json(const SweepReport& report) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const SweepRow& row : report.rows) {
        nlohmann::ordered_json j{{"k", row.k}, {"feasible", row.feasible}};
        if (row.feasible) {
            j["t_L"] = row.t_L;
            j["t_R"] = row.t_R;
            j["analytic"] = detail::breakdown_json(row.analytic);
            j["normalized"] = row.normalized;
        }
        j["mc_mean"] = detail::opt_json(row.mc_mean);
        j["mc_stderr"] = detail::opt_json(row.mc_stderr);
        j["baseline_analytic"] = row.baseline_analytic;
        rows.push_back(std::move(j));
    }
    nlohmann::ordered_json out{{"schema", "crossbar-lowrank sweep v1"},
                               {"lambda", report.lambda},
                               {"baseline_analytic", report.baseline_analytic},
                               {"rows", std::move(rows)}};
    out["argmin_k"] = report.argmin ? nlohmann::ordered_json(report.rows[*report.argmin].k)
                                    : nlohmann::ordered_json(nullptr);
    return out.dump(2) + "\n";
}

inline std::string render_scaling_json(const ScalingReport& report) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ScalingRow& row : report.rows) {
        rows.push_back({{"n", row.n},
                        {"r", row.r},
                        {"k", row.k},
                        {"t_L", row.t_L},
                        {"t_R", row.t_R},
                        {"lambda", row.lambda},
                        {"analytic", detail::breakdown_json(row.analytic)},
                        {"baseline_analytic", row.baseline_analytic},
                        {"normalized", row.normalized},
                        {"asymptotic_bound", row.asymptotic_bound}});
    }
    return nlohmann::ordered_json{{"schema", "crossbar-lowrank scaling v1"},
                                  {"alpha", report.alpha},
                                  {"beta", report.beta},
                                  {"predicted_exponent", detail::opt_json(report.predicted_exponent)},
                                  {"rows", std::move(rows)},
                                  {"proposed_fit", detail::fit_json(report.proposed_fit)},
                                  {"baseline_fit", detail::fit_json(report.baseline_fit)}}
               .dump(2) +
           "\n";
}

inline std::string render_validation_json(const ValidationReport& v) {
    return nlohmann::ordered_json{{"rows", v.rows},
                                  {"cols", v.cols},
                                  {"rank", v.rank},
                                  {"singulars", v.singulars},
                                  {"magnitude",
                                   {{"total", v.magnitude.total},
                                    {"budget", v.magnitude.budget},
                                    {"satisfied", v.magnitude.satisfied}}}}
               .dump(2) +
           "\n";
}

inline std::string render_mc_json(const McReport& r) {
    auto batch = [](const TrialBatchResult& b, double analytic, const Comparison& c) {
        return nlohmann::ordered_json{{"scheme", std::string(to_string(b.scheme))},
                                      {"trials", b.trials},
                                      {"master_seed", b.master_seed},
                                      {"mc_mean", b.mean_sq_error},
                                      {"mc_stderr", b.std_error},
                                      {"analytic", analytic},
                                      {"z", c.z},
                                      {"pass", c.pass}};
    };
    return nlohmann::ordered_json{{"k", r.k},
                                  {"t_L", r.reps.left},
                                  {"t_R", r.reps.right},
                                  {"lambda", r.lambda},
                                  {"two_step_analytic", detail::breakdown_json(r.two_step_analytic)},
                                  {"baseline", batch(r.baseline, r.baseline_analytic, r.baseline_check)},
                                  {"two_step", batch(r.two_step, r.two_step_analytic.total, r.two_step_check)},
                                  {"pass", r.pass()}}
               .dump(2) +
           "\n";
}

}  // namespace crossbar
