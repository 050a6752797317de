#pragma once

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "qloc/kinematics.hpp"
#include "qloc/serialize.hpp"
#include "qloc/studies.hpp"
#include "qloc/suites.hpp"

namespace qloc {

inline constexpr const char* kSchemaVersion = "1.0";

/// Timestamps live only in this header object so the report body can be
/// hashed for reproducibility checks.
inline nlohmann::json report_header() {
  auto now = std::chrono::system_clock::now();
  std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::ostringstream ts;
  ts << std::put_time(std::gmtime(&tt), "%FT%TZ");
  return {{"schema_version", kSchemaVersion}, {"generated_at", ts.str()}};
}

inline nlohmann::json to_json(const CheckResult& c) {
  return {{"check_id", c.check_id},
          {"status", status_name(c.status)},
          {"residual", to_string(c.residual)},
          {"elapsed_ms", c.elapsed_ms},
          {"note", c.note}};
}

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"suite", r.suite},
          {"mode", r.mode == Mode::Massive ? "massive" : "massless"},
          {"checks", checks},
          {"all_pass", r.all_pass()},
          {"implication_violation", r.implication_violation}};
}

inline nlohmann::json to_json(const UncertaintyReport& r) {
  return {{"alpha", r.alpha},
          {"k0", r.k0},
          {"dq", r.dq},
          {"dp", r.dp},
          {"tensor", r.tensor},
          {"bound", r.bound},
          {"trace_check", r.trace},
          {"coef_iso", r.coef_iso},
          {"coef_par_k2", r.coef_par_k2},
          {"robertson_margin_min", r.robertson_margin_min}};
}

inline nlohmann::json to_json(const ResidualLadder& l) {
  return {{"params", l.params},
          {"residuals", l.residuals},
          {"fitted_order", l.fitted_order}};
}

inline nlohmann::json to_json(const RadialCheckResult& r) {
  return {{"step", r.step},
          {"max_rel_error", r.max_rel_error},
          {"max_rel_error_halved", r.max_rel_error_halved},
          {"error_ratio", r.error_ratio}};
}

inline nlohmann::json to_json(const TransformProfile& p) {
  return {{"x_long", p.x_long},    {"amp_long", p.amp_long},
          {"spacing", p.spacing},  {"peak_x", p.peak_x},
          {"x_perp", p.x_perp},    {"amp_perp", p.amp_perp},
          {"perp_variation", p.perp_variation}};
}

inline nlohmann::json to_json(const TranslationExperiment& e) {
  double closed = -e.u[0] * e.u[0] * e.u[1] * e.t;
  return {{"u", e.u},
          {"t", e.t},
          {"gamma", std::isfinite(e.gamma) ? nlohmann::json(e.gamma) : nlohmann::json("inf")},
          {"epsilon", e.epsilon},
          {"delta_q", e.delta_q},
          {"bracket_estimate", e.bracket_estimate},
          {"closed_form", closed},
          {"abs_error", std::abs(e.delta_q[1] - closed)}};
}

// -------------------------- CSV projections --------------------------------

inline std::string uncertainty_csv(const std::vector<UncertaintyReport>& rows) {
  std::ostringstream out;
  out << std::setprecision(12);
  out << "alpha,k0x,k0y,k0z,A,B,trace_check,dq1,dq2,dq3,dp1,dp2,dp3";
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) out << ",bound_" << a << b;
  out << "\n";
  for (const auto& r : rows) {
    double k2 = r.k0[0] * r.k0[0] + r.k0[1] * r.k0[1] + r.k0[2] * r.k0[2];
    double coef_b = k2 > 1e-24 ? r.coef_par_k2 / k2 : 0.0;
    out << r.alpha << ',' << r.k0[0] << ',' << r.k0[1] << ',' << r.k0[2] << ','
        << r.coef_iso << ',' << coef_b << ',' << r.trace;
    for (int a = 0; a < 3; ++a) out << ',' << r.dq[a];
    for (int a = 0; a < 3; ++a) out << ',' << r.dp[a];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) out << ',' << r.bound[a][b];
    out << "\n";
  }
  return out.str();
}

inline std::string ladder_csv(const ResidualLadder& l) {
  std::ostringstream out;
  out << std::setprecision(12);
  out << "parameter,residual,fitted_order\n";
  for (std::size_t i = 0; i < l.params.size(); ++i)
    out << l.params[i] << ',' << l.residuals[i] << ',' << l.fitted_order << "\n";
  return out.str();
}

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
}

}  // namespace qloc
