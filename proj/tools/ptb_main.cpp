// ptb: command-line front end for the two-body scenarios.
//
//   ptb simulate --config scenario.json [overrides]
//   ptb simulate --sweep a.json b.json ...
//   ptb circular --potential harmonic --chi 0.125 --M 4 --l2 1
//   ptb mass-ratio --m2 1 --alpha 0 --eps 1e-2,1e-4,1e-6
//   ptb verify-toy

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptb/circular.hpp"
#include "ptb/errors.hpp"
#include "ptb/mass_ratio.hpp"
#include "ptb/mass_shell.hpp"
#include "ptb/potential.hpp"
#include "ptb/reduced_dynamics.hpp"
#include "ptb/scenario.hpp"
#include "ptb/toy_oscillator.hpp"

using nlohmann::json;
using ptb::format_number;

namespace {

json load_json(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ptb::Error(ptb::ErrorKind::ConfigError, "cannot open config file '" + file + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ptb::Error(ptb::ErrorKind::ConfigError,
                     "invalid JSON in '" + file + "': " + e.what());
  }
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::vector<std::string> sweep;
  std::optional<double> m1, m2, chi, g, tol, max_step, lambda_span, sample_interval, l2;
  std::optional<int> n;
  std::optional<std::string> potential, sampling, format, output;
  std::vector<double> ztil, ytil, frame_k, frame_velocity, xi0;
  bool strict_time = false;
};

void set_if(json& obj, const char* key, const auto& opt) {
  if (opt) obj[key] = *opt;
}

void set_vec(json& obj, const char* key, const std::vector<double>& v) {
  if (!v.empty()) obj[key] = v;
}

json apply_overrides(json doc, const SimulateArgs& a) {
  if (!doc.contains("schema_version")) doc["schema_version"] = ptb::kSchemaVersion;
  auto sub = [&](const char* key) -> json& {
    if (!doc.contains(key)) doc[key] = json::object();
    return doc[key];
  };
  if (a.m1 || a.m2) {
    set_if(sub("masses"), "m1", a.m1);
    set_if(sub("masses"), "m2", a.m2);
  }
  if (a.potential || a.chi || a.g || a.n) {
    json& p = sub("potential");
    set_if(p, "kind", a.potential);
    set_if(p, "chi", a.chi);
    set_if(p, "g", a.g);
    set_if(p, "n", a.n);
  }
  if (!a.ztil.empty() || !a.ytil.empty()) {
    doc.erase("circular");
    set_vec(sub("initial"), "ztil", a.ztil);
    set_vec(sub("initial"), "ytil", a.ytil);
  }
  if (a.l2) {
    doc.erase("initial");
    sub("circular")["l2"] = *a.l2;
  }
  if (a.tol || a.max_step || a.lambda_span || a.sample_interval || a.sampling || a.strict_time) {
    json& in = sub("integrator");
    set_if(in, "tol", a.tol);
    set_if(in, "max_step", a.max_step);
    set_if(in, "lambda_span", a.lambda_span);
    set_if(in, "sample_interval", a.sample_interval);
    set_if(in, "sampling", a.sampling);
    if (a.strict_time) in["strict_time"] = true;
  }
  if (!a.frame_k.empty() || !a.frame_velocity.empty() || !a.xi0.empty()) {
    json& fr = sub("frame");
    if (!a.frame_k.empty()) fr.erase("velocity");
    if (!a.frame_velocity.empty()) fr.erase("k");
    set_vec(fr, "k", a.frame_k);
    set_vec(fr, "velocity", a.frame_velocity);
    set_vec(fr, "xi0", a.xi0);
  }
  if (a.format || a.output) {
    set_if(sub("output"), "format", a.format);
    set_if(sub("output"), "path", a.output);
  }
  return doc;
}

int run_simulate(const SimulateArgs& a) {
  if (a.sweep.empty()) {
    const json doc = apply_overrides(a.config.empty() ? json::object() : load_json(a.config), a);
    const json diag = ptb::run_and_write(ptb::parse_config(doc));
    std::cout << diag.dump(2) << '\n';
    return 0;
  }

  // Independent scenarios in parallel; each writes its own file.
  std::vector<std::future<json>> jobs;
  for (const auto& file : a.sweep) {
    jobs.push_back(std::async(std::launch::async, [file, &a] {
      return ptb::run_and_write(ptb::parse_config(apply_overrides(load_json(file), a)));
    }));
  }
  json report = json::array();
  int code = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      json diag = jobs[i].get();
      diag["config"] = a.sweep[i];
      report.push_back(std::move(diag));
    } catch (const ptb::Error& e) {
      std::cerr << a.sweep[i] << ": " << e.what() << '\n';
      report.push_back({{"config", a.sweep[i]}, {"error", e.what()}});
      code = std::max(code, ptb::exit_code(e.kind()));
    }
  }
  std::cout << report.dump(2) << '\n';
  return code;
}

// ---- circular --------------------------------------------------------------

struct CircularArgs {
  std::string potential = "harmonic";
  double chi = 0.125;
  double g = -1.0;
  int n = 1;
  std::optional<double> M, m1, m2;
  double nu = 0.0;
  double l2 = 1.0;
  double tol = 1e-12;
};

int run_circular(const CircularArgs& a) {
  const ptb::PotentialSpec model =
      ptb::make_potential({a.potential, a.chi, a.g, a.n});

  ptb::MassShell probe;
  if (a.m1 || a.m2) {
    if (!a.m1 || !a.m2) {
      throw ptb::Error(ptb::ErrorKind::ConfigError, "--m1 and --m2 go together");
    }
    const double m1 = std::min(*a.m1, *a.m2), m2 = std::max(*a.m1, *a.m2);
    probe = ptb::self_consistent_shell(m1, m2, [&](double M) {
      ptb::MassShell s;
      s.M = M;
      s.M2 = M * M;
      s.nu = 0.5 * (m1 - m2) * (m1 + m2);
      return ptb::find_circular(model, s, a.l2).lambda_;
    });
  } else {
    if (!a.M || !(*a.M > 0.0)) {
      throw ptb::Error(ptb::ErrorKind::ConfigError, "give --M > 0 or --m1/--m2");
    }
    probe.M = *a.M;
    probe.M2 = *a.M * *a.M;
    probe.nu = a.nu;
  }

  const ptb::CircularOrbit orbit = ptb::find_circular(model, probe, a.l2);
  const ptb::MassShell shell = ptb::shell_for_orbit(orbit, probe);
  ptb::IntegratorOptions opts;
  opts.tol = a.tol;
  const ptb::ConstancyReport p4 = ptb::verify_constancy(orbit, model, shell, opts);
  const ptb::PeriodicityReport per = ptb::verify_periodicity(orbit, model, shell, opts);

  json variation = json::object();
  for (std::size_t i = 0; i < p4.kNames.size(); ++i) {
    variation[std::string(p4.kNames[i])] = p4.variation[i];
  }
  const json out = {
      {"potential", model->name()},
      {"shell", {{"M", shell.M}, {"M2", shell.M2}, {"nu", shell.nu}, {"Lambda", shell.lambda_},
                 {"m1", shell.m1}, {"m2", shell.m2}}},
      {"orbit", {{"rho", orbit.rho}, {"speed2", orbit.speed2}, {"Omega", orbit.Omega},
                 {"l2", orbit.l2}, {"dTdlambda", orbit.dTdlambda},
                 {"period_lambda", 2.0 * std::numbers::pi / orbit.Omega},
                 {"period_T", orbit.period_T}, {"F", orbit.F}, {"G", orbit.G},
                 {"Lambda", orbit.lambda_}}},
      {"constancy", {{"variation", variation}, {"max_variation", p4.max_variation},
                     {"tolerance", p4.tolerance}, {"passed", p4.passed}}},
      {"periodicity", {{"ztil_closure", per.ztil_closure}, {"ytil_closure", per.ytil_closure},
                       {"T_advance", per.T_advance}, {"period_T_error", per.period_T_error},
                       {"linear_fit_residual", per.linear_fit_residual},
                       {"omega_observed", per.omega_observed},
                       {"omega_rel_error", per.omega_rel_error}, {"passed", per.passed}}}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

// ---- mass-ratio ------------------------------------------------------------

int run_mass_ratio(double m2, double alpha, const std::vector<double>& eps) {
  const auto rows = ptb::limit_report(m2, alpha, eps);
  std::cout << "eps,gamma,alpha,M2,beta,offset,reference,residual,residual_ratio\n";
  for (const auto& r : rows) {
    const auto& x = r.analysis;
    std::cout << format_number(x.eps) << ',' << format_number(x.gamma) << ','
              << format_number(x.alpha) << ',' << format_number(x.M2) << ','
              << format_number(x.beta) << ',' << format_number(x.offset) << ','
              << format_number(r.reference) << ',' << format_number(r.residual) << ','
              << format_number(r.residual_ratio) << '\n';
  }
  return 0;
}

// ---- verify-toy ------------------------------------------------------------

struct ToyArgs {
  double chi = 0.125;
  double M = 4.0;
  double a = 1.0;
  double b = 0.25;
  double C = 0.0;
  double nu = 0.0;
  double periods = 10.0;
  double tol = 1e-10;
  double threshold = 1e-8;
};

int run_verify_toy(const ToyArgs& a) {
  if (a.a < 0.0 || a.b < 0.0) {
    throw ptb::Error(ptb::ErrorKind::BadParameter, "axes must be non-negative");
  }
  ptb::ToyParams p;
  p.chi = a.chi;
  p.M = a.M;
  p.A = {0.0, std::sqrt(a.a), 0.0};
  p.B = {std::sqrt(a.b), 0.0, 0.0};
  p.C = a.C;
  p.nu = a.nu;
  const ptb::MassShell shell = ptb::toy_shell(p);
  const auto model = ptb::make_harmonic(p.chi);

  // The closed form must satisfy the equations of motion.
  double ode_residual = 0.0, F_residual = 0.0;
  const double h = 1e-6, W = p.omega();
  for (int i = 0; i <= 200; ++i) {
    const double lam = (2.0 * std::numbers::pi / W) * i / 200.0;
    ptb::ReducedState s;
    std::tie(s.ztil, s.ytil) = ptb::analytic_state(p, lam);
    const ptb::RhsValue r = ptb::rhs(s, shell, *model);
    const auto [zp, yp] = ptb::analytic_state(p, lam + h);
    const auto [zm, ym] = ptb::analytic_state(p, lam - h);
    const double scale = std::max(norm(r.dztil) + norm(r.dytil), 1.0);
    ode_residual = std::max(
        ode_residual,
        (norm((zp - zm) * (0.5 / h) - r.dztil) + norm((yp - ym) * (0.5 / h) - r.dytil)) / scale);
    F_residual = std::max(F_residual, std::abs(r.F - ptb::F_analytic(p, lam)));
  }

  ptb::IntegratorOptions opts;
  opts.tol = a.tol;
  const ptb::ToyComparison c = ptb::compare_with_integration(p, a.periods, opts);
  const double margin = 0.25 * shell.M2 - shell.nu * shell.nu / shell.M2 - 0.5 * shell.lambda_;

  std::printf("toy model: chi=%s M=%s a=%s b=%s nu=%s Omega=%s Lambda=%s periods=%s\n",
              format_number(p.chi).c_str(), format_number(p.M).c_str(),
              format_number(p.a()).c_str(), format_number(p.b()).c_str(),
              format_number(p.nu).c_str(), format_number(W).c_str(),
              format_number(shell.lambda_).c_str(), format_number(a.periods).c_str());
  std::printf("ode residual of closed form (rel): %.3e\n", ode_residual);
  std::printf("F residual of closed form:         %.3e\n", F_residual);
  std::printf("max |ztil numeric-analytic|:       %.3e\n", c.max_ztil_dev);
  std::printf("max |ytil numeric-analytic|:       %.3e\n", c.max_ytil_dev);
  std::printf("max |intF numeric-analytic|:       %.3e\n", c.max_intF_dev);
  std::printf("max |T numeric-analytic|:          %.3e\n", c.max_T_dev);
  std::printf("min dT/dlambda:                    %.6g (sufficient condition margin %.6g)\n",
              c.min_dTdlambda, margin);
  std::printf("accepted steps:                    %zu\n", c.accepted_steps);
  const bool ok = c.max_deviation <= a.threshold && ode_residual <= 1e-6;
  std::printf("max |numeric-analytic| = %.3e %s %.0e: %s\n", c.max_deviation,
              ok ? "<=" : ">", a.threshold, ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-body relativistic scenarios in the reduced (lambda) formulation"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "integrate a scenario and write its trajectory");
  simulate->add_option("--config", sim.config, "scenario JSON document")->check(CLI::ExistingFile);
  simulate->add_option("--sweep", sim.sweep, "run several scenario files in parallel")
      ->check(CLI::ExistingFile);
  simulate->add_option("--m1", sim.m1);
  simulate->add_option("--m2", sim.m2);
  simulate->add_option("--potential", sim.potential, "free | harmonic | central_power");
  simulate->add_option("--chi", sim.chi);
  simulate->add_option("--g", sim.g);
  simulate->add_option("--n", sim.n);
  simulate->add_option("--ztil", sim.ztil)->expected(3)->delimiter(',');
  simulate->add_option("--ytil", sim.ytil)->expected(3)->delimiter(',');
  simulate->add_option("--circular-l2", sim.l2, "start on the circular orbit with this L^2");
  simulate->add_option("--tol", sim.tol);
  simulate->add_option("--max-step", sim.max_step);
  simulate->add_option("--lambda-span", sim.lambda_span);
  simulate->add_option("--sample-interval", sim.sample_interval);
  simulate->add_option("--sampling", sim.sampling, "T | lambda");
  simulate->add_flag("--strict-time", sim.strict_time, "fail on non-monotone T(lambda)");
  simulate->add_option("--frame-k", sim.frame_k, "lab-frame total momentum")->expected(4)->delimiter(',');
  simulate->add_option("--frame-velocity", sim.frame_velocity)->expected(3)->delimiter(',');
  simulate->add_option("--xi0", sim.xi0, "center of energy at T = 0")->expected(3)->delimiter(',');
  simulate->add_option("--format", sim.format, "csv | json");
  simulate->add_option("--output", sim.output, "output file");
  simulate->get_option("--config")->excludes(simulate->get_option("--sweep"));

  CircularArgs circ;
  auto* circular = app.add_subcommand("circular", "find a circular orbit and verify it");
  circular->add_option("--potential", circ.potential, "harmonic | central_power")->capture_default_str();
  circular->add_option("--chi", circ.chi)->capture_default_str();
  circular->add_option("--g", circ.g)->capture_default_str();
  circular->add_option("--n", circ.n)->capture_default_str();
  circular->add_option("--M", circ.M, "total mass (with --nu)");
  circular->add_option("--nu", circ.nu)->capture_default_str();
  circular->add_option("--m1", circ.m1, "masses; M then follows self-consistently");
  circular->add_option("--m2", circ.m2);
  circular->add_option("--l2", circ.l2, "angular momentum squared")->capture_default_str();
  circular->add_option("--tol", circ.tol, "integrator tolerance for the checks")->capture_default_str();

  double ratio_m2 = 1.0, ratio_alpha = 0.0;
  std::vector<double> ratio_eps = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10};
  auto* ratio = app.add_subcommand("mass-ratio", "extreme mass-ratio limit table (CSV)");
  ratio->add_option("--m2", ratio_m2)->capture_default_str();
  ratio->add_option("--alpha", ratio_alpha, "Lambda / m2^2")->capture_default_str();
  ratio->add_option("--eps", ratio_eps, "decreasing (m1/m2)^2 values")->delimiter(',');

  ToyArgs toy;
  auto* verify = app.add_subcommand("verify-toy", "compare integration with the harmonic closed form");
  verify->add_option("--chi", toy.chi)->capture_default_str();
  verify->add_option("--M", toy.M)->capture_default_str();
  verify->add_option("--a", toy.a, "|A|^2")->capture_default_str();
  verify->add_option("--b", toy.b, "|B|^2")->capture_default_str();
  verify->add_option("--phase", toy.C)->capture_default_str();
  verify->add_option("--nu", toy.nu)->capture_default_str();
  verify->add_option("--periods", toy.periods)->capture_default_str();
  verify->add_option("--tol", toy.tol)->capture_default_str();
  verify->add_option("--threshold", toy.threshold)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*circular) return run_circular(circ);
    if (*ratio) return run_mass_ratio(ratio_m2, ratio_alpha, ratio_eps);
    if (*verify) return run_verify_toy(toy);
  } catch (const ptb::Error& e) {
    std::cerr << e.what() << '\n';
    return ptb::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "Error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
