// Command-line workbench: runs the symbolic verification suites and the
// numerical studies, writes JSON/CSV reports, and maps outcomes to exit
// codes (0 = all pass, 1 = any fail, 2 = inconclusive only, 64 = usage).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "qloc/reports.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qloc;

namespace {

enum Severity { kPass = 0, kFail = 1, kInconclusive = 2 };

int combine(int a, int b) {
  if (a == kFail || b == kFail) return kFail;
  if (a == kInconclusive || b == kInconclusive) return kInconclusive;
  return kPass;
}

fs::path output_dir() {
  const char* env = std::getenv("QLOC_REPORT_DIR");
  fs::path dir = env && *env ? fs::path(env) : fs::path("reports");
  fs::create_directories(dir);
  return dir;
}

void emit(const std::string& name, json body) {
  json doc{{"header", report_header()}, {"body", std::move(body)}};
  write_text((output_dir() / (name + ".json")).string(), doc.dump(2) + "\n");
}

void print_suite(const VerificationReport& r) {
  for (const auto& c : r.checks) {
    std::cout << "  [" << status_name(c.status) << "] " << c.check_id;
    if (!c.note.empty()) std::cout << "  (" << c.note << ")";
    std::cout << "\n";
  }
}

int severity_of(const VerificationReport& r) {
  switch (r.worst()) {
    case CheckStatus::Pass:
      return kPass;
    case CheckStatus::Inconclusive:
      return kInconclusive;
    default:
      return kFail;
  }
}

struct LineResult {
  std::string id;
  bool pass;
  std::string detail;
};

int report_lines(const std::string& name, const std::vector<LineResult>& lines,
                 json extra) {
  int sev = kPass;
  json checks = json::array();
  for (const auto& l : lines) {
    std::cout << "  [" << (l.pass ? "PASS" : "FAIL") << "] " << l.id << "  ("
              << l.detail << ")\n";
    checks.push_back({{"check_id", l.id}, {"status", l.pass ? "PASS" : "FAIL"},
                      {"detail", l.detail}});
    if (!l.pass) sev = kFail;
  }
  extra["checks"] = checks;
  emit(name, extra);
  return sev;
}

// ---------------------------------------------------------------------------

int cmd_algebra(const std::string& suite, int cutoff) {
  if (suite == "jacobi") {
    VerificationReport a = jacobi_scan(Mode::Massive);
    VerificationReport b = jacobi_scan(Mode::Massless);
    print_suite(a);
    print_suite(b);
    emit("algebra-jacobi", json{{"massive", to_json(a)}, {"massless", to_json(b)}});
    return combine(severity_of(a), severity_of(b));
  }
  VerificationReport r = suite == "massive" ? run_massive_suite(cutoff)
                                            : run_massless_suite(cutoff);
  print_suite(r);
  json body = to_json(r);
  body["degree_cutoff"] = cutoff;
  emit("algebra-" + suite, body);
  return severity_of(r);
}

int cmd_uncertainty(double alpha, Vec3d k0, int grid_n, double kmax) {
  GridSpec g(kmax, grid_n);
  Wavepacket psi = make_gaussian(alpha, k0, g);
  UncertaintyReport rep = uncertainty_report(psi);
  json body{{"config",
             {{"alpha", alpha}, {"k0", k0}, {"grid_n", grid_n}, {"kmax", kmax},
              {"eps_min", g.eps_min}, {"trace_tol", 1e-6},
              {"robertson_tol", 1e-6}}},
            {"report", to_json(rep)}};
  write_text((output_dir() / "uncertainty.csv").string(), uncertainty_csv({rep}));
  return report_lines(
      "uncertainty",
      {{"trace-half", std::abs(rep.trace - 0.5) <= 1e-6,
        "trace " + std::to_string(rep.trace)},
       {"robertson-bound", rep.robertson_margin_min >= -1e-6,
        "min margin " + std::to_string(rep.robertson_margin_min)}},
      body);
}

int cmd_eigen(Vec3d q, std::vector<double> sigmas, int grid_n, double kmax,
              double eps_min) {
  GridSpec g(kmax, grid_n, eps_min);
  ResidualLadder lad = eigenfunction_residual(q, sigmas, g);
  write_text((output_dir() / "eigen.csv").string(), ladder_csv(lad));
  json body{{"config",
             {{"q", q}, {"sigmas", sigmas}, {"grid_n", grid_n}, {"kmax", kmax},
              {"eps_min", eps_min}, {"order_target", 1.0}, {"order_tol", 0.2}}},
            {"ladder", to_json(lad)}};
  return report_lines("eigen",
                      {{"residual-order-linear",
                        std::abs(lad.fitted_order - 1.0) <= 0.2,
                        "fitted order " + std::to_string(lad.fitted_order)}},
                      body);
}

int cmd_fourier(Vec3d q, double sigma) {
  TransformProfile prof = position_space_transform(q, sigma);
  RadialCheckResult rk = radial_eigenfunction_check(norm3(q));
  json body{{"config", {{"q", q}, {"sigma", sigma}, {"peak_tol_spacings", 1.0},
                        {"perp_tol", 0.05}, {"rk4_tol", 1e-8}}},
            {"profile", to_json(prof)},
            {"radial_check", to_json(rk)}};
  write_text((output_dir() / "fourier.csv").string(), ladder_csv(ResidualLadder{
      prof.x_long, prof.amp_long, 0.0}));
  return report_lines(
      "fourier",
      {{"peak-at-eigenvalue", std::abs(prof.peak_x - norm3(q)) <= prof.spacing,
        "peak " + std::to_string(prof.peak_x)},
       {"transverse-flat", prof.perp_variation <= 0.05,
        "variation " + std::to_string(prof.perp_variation)},
       {"radial-closed-form", rk.max_rel_error <= 1e-8,
        "max rel err " + std::to_string(rk.max_rel_error)}},
      body);
}

int cmd_classical(Vec3d u, double t) {
  TranslationExperiment ex = dynamic_translation_experiment(u, t);
  double closed = -u[0] * u[0] * u[1] * t;
  double err = std::abs(ex.delta_q[1] - closed);
  json body{{"config", {{"u", u}, {"t", t}, {"tol", 1e-12}}},
            {"experiment", to_json(ex)}};
  return report_lines("classical",
                      {{"event-algebra-vs-closed-form", err <= 1e-12,
                        "abs error " + std::to_string(err)}},
                      body);
}

int cmd_jacobi_bracket(int samples, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> radius(0.5, 5.0);
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    Vec3d q{unit(rng), unit(rng), unit(rng)};
    Vec3d p{unit(rng), unit(rng), unit(rng)};
    double r = norm3(p);
    if (r < 1e-3) {
      p = {1, 0, 0};
      r = 1;
    }
    double want = radius(rng);
    for (auto& c : p) c *= want / r;
    int i = s % 3, j = (s + 1) % 3, k = (s + 2) % 3;
    double jac = std::abs(
        jacobiator(coordinate_q(i), coordinate_q(j), coordinate_p(k), q, p));
    jac = std::max(jac, std::abs(jacobiator(coordinate_q(i), coordinate_p(j),
                                            hamiltonian(), q, p)));
    worst = std::max(worst, jac);
  }
  json body{{"config", {{"samples", samples}, {"seed", seed}, {"tol", 1e-6},
                        {"p_range", {0.5, 5.0}}}},
            {"max_abs_jacobiator", worst}};
  std::ostringstream d;
  d << std::scientific << std::setprecision(3) << worst;
  return report_lines("jacobi-bracket",
                      {{"jacobiator-vanishes", worst <= 1e-6, "max " + d.str()}},
                      body);
}

int cmd_all() {
  int sev = kPass;
  std::cout << "== algebra massive ==\n";
  sev = combine(sev, cmd_algebra("massive", 10));
  std::cout << "== algebra massless ==\n";
  sev = combine(sev, cmd_algebra("massless", 10));
  std::cout << "== algebra jacobi ==\n";
  sev = combine(sev, cmd_algebra("jacobi", 10));
  std::cout << "== uncertainty ==\n";
  sev = combine(sev, cmd_uncertainty(1.0, {0, 0, 0}, 121, 8.0));
  std::cout << "== eigen ==\n";
  sev = combine(sev, cmd_eigen({0, 0, 3.0}, {0.4, 0.2, 0.1}, 151, 3.0, 1.0));
  std::cout << "== fourier ==\n";
  sev = combine(sev, cmd_fourier({0, 0, 3.0}, 0.08));
  std::cout << "== classical ==\n";
  sev = combine(sev, cmd_classical({0.6, 0.8, 0.0}, 1.0));
  std::cout << "== jacobi-bracket ==\n";
  sev = combine(sev, cmd_jacobi_bracket(100, 20240817));
  return sev;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification workbench for a noncommutative position-operator algebra"};
  app.require_subcommand(1);

  auto* alg = app.add_subcommand("algebra", "Run a symbolic verification suite");
  std::string suite;
  int cutoff = 10;
  alg->add_option("--suite", suite, "massive|massless|jacobi")
      ->required()
      ->check(CLI::IsMember({"massive", "massless", "jacobi"}));
  alg->add_option("--cutoff", cutoff, "degree cutoff for ideal membership");

  auto* unc = app.add_subcommand("uncertainty", "Packet moment / bound study");
  double alpha = 1.0, kmax = 8.0, t = 1.0, sigma = 0.08;
  int grid_n = 121, samples = 100;
  unsigned seed = 20240817;
  std::vector<double> k0{0, 0, 0}, qv{0, 0, 3.0}, uv{0.6, 0.8, 0.0};
  std::vector<double> sigmas{0.4, 0.2, 0.1};
  unc->add_option("--alpha", alpha, "gaussian width parameter");
  unc->add_option("--k0", k0, "packet center x,y,z")->delimiter(',')->expected(3);
  unc->add_option("--grid", grid_n, "points per axis");
  unc->add_option("--kmax", kmax, "box half-width");

  auto* eig = app.add_subcommand("eigen", "Regularized eigenfunction residual ladder");
  eig->add_option("--q", qv, "eigenvalue vector x,y,z")->delimiter(',')->expected(3);
  eig->add_option("--sigma-ladder", sigmas, "bump widths")->delimiter(',');

  auto* fou = app.add_subcommand("fourier", "Position-space transform profile");
  fou->add_option("--q", qv, "eigenvalue vector x,y,z")->delimiter(',')->expected(3);
  fou->add_option("--sigma", sigma, "bump width");

  auto* cla = app.add_subcommand("classical", "Boosted-frame translation experiment");
  cla->add_option("--u", uv, "velocity x,y,z")->delimiter(',')->expected(3);
  cla->add_option("--t", t, "duration");

  auto* jb = app.add_subcommand("jacobi-bracket", "Projected-bracket jacobiator scan");
  jb->add_option("--samples", samples, "number of random phase-space points");
  jb->add_option("--seed", seed, "RNG seed");

  app.add_subcommand("all", "Run every suite and study");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  auto as_vec3 = [](const std::vector<double>& v) { return Vec3d{v[0], v[1], v[2]}; };
  try {
    if (alg->parsed()) return cmd_algebra(suite, cutoff);
    if (unc->parsed()) return cmd_uncertainty(alpha, as_vec3(k0), grid_n, kmax);
    if (eig->parsed()) return cmd_eigen(as_vec3(qv), sigmas, 151, 3.0, 1.0);
    if (fou->parsed()) return cmd_fourier(as_vec3(qv), sigma);
    if (cla->parsed()) return cmd_classical(as_vec3(uv), t);
    if (jb->parsed()) return cmd_jacobi_bracket(samples, seed);
    return cmd_all();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
