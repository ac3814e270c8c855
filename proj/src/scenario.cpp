#include "ptb/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "ptb/circular.hpp"
#include "ptb/errors.hpp"

namespace ptb {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorKind::ConfigError, what);
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) config_error("unknown key '" + key + "' in " + where);
  }
}

const json& section(const json& doc, const char* key) {
  const json& s = doc.at(key);
  if (!s.is_object()) config_error(std::string("'") + key + "' must be an object");
  return s;
}

double number(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) config_error(where + "." + key + " is required");
  if (!it->is_number()) config_error(where + "." + key + " must be a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) config_error(where + "." + key + " must be finite");
  return v;
}

double number_or(const json& obj, const char* key, double fallback,
                 const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::vector<double> numbers(const json& v, std::size_t n, const std::string& what) {
  if (!v.is_array() || v.size() != n) {
    config_error(what + " must be an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) config_error(what + " must contain numbers only");
    out.push_back(x.get<double>());
    if (!std::isfinite(out.back())) config_error(what + " must be finite");
  }
  return out;
}

Vec3 vec3(const json& v, const std::string& what) {
  const auto a = numbers(v, 3, what);
  return {a[0], a[1], a[2]};
}

FourVector four_vector(const json& v, const std::string& what) {
  const auto a = numbers(v, 4, what);
  return {a[0], a[1], a[2], a[3]};
}

// Shell stand-in carrying only M^2 and nu, for probing a candidate mass.
MassShell probe_shell(double M, double nu) {
  MassShell s;
  s.M = M;
  s.M2 = M * M;
  s.nu = nu;
  return s;
}

json condition(const char* name, const char* statement, double margin) {
  return {{"name", name}, {"condition", statement}, {"margin", margin},
          {"ok", margin > 0.0}};
}

json nan_to_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

PotentialSpec make_potential(const PotentialConfig& cfg) {
  if (cfg.kind == "free") return make_free();
  if (cfg.kind == "harmonic") return make_harmonic(cfg.chi);
  if (cfg.kind == "central_power") return make_central_power(cfg.g, cfg.n);
  config_error("unknown potential kind '" + cfg.kind + "'");
}

ScenarioConfig parse_config(const json& doc) {
  if (!doc.is_object()) config_error("scenario must be a JSON object");
  reject_unknown(doc, "scenario",
                 {"schema_version", "masses", "potential", "initial", "circular",
                  "integrator", "frame", "output"});
  if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer() ||
      doc["schema_version"].get<int>() != kSchemaVersion) {
    config_error("schema_version must be " + std::to_string(kSchemaVersion));
  }
  ScenarioConfig cfg;
  try {
    const json& masses = section(doc, "masses");
    reject_unknown(masses, "masses", {"m1", "m2"});
    cfg.m1 = number(masses, "m1", "masses");
    cfg.m2 = number(masses, "m2", "masses");
    if (!(cfg.m1 > 0.0) || !(cfg.m2 > 0.0)) config_error("masses must be positive");

    const json& pot = section(doc, "potential");
    reject_unknown(pot, "potential", {"kind", "chi", "g", "n"});
    if (!pot.contains("kind") || !pot["kind"].is_string()) {
      config_error("potential.kind must be a string");
    }
    cfg.potential.kind = pot["kind"].get<std::string>();
    cfg.potential.chi = number_or(pot, "chi", 0.0, "potential");
    cfg.potential.g = number_or(pot, "g", 0.0, "potential");
    if (pot.contains("n")) {
      if (!pot["n"].is_number_integer()) config_error("potential.n must be an integer");
      cfg.potential.n = pot["n"].get<int>();
    }

    const bool has_initial = doc.contains("initial");
    const bool has_circular = doc.contains("circular");
    if (has_initial == has_circular) {
      config_error("exactly one of 'initial' and 'circular' is required");
    }
    if (has_initial) {
      const json& ini = section(doc, "initial");
      reject_unknown(ini, "initial", {"ztil", "ytil"});
      cfg.ztil = vec3(ini.at("ztil"), "initial.ztil");
      cfg.ytil = vec3(ini.at("ytil"), "initial.ytil");
    } else {
      const json& circ = section(doc, "circular");
      reject_unknown(circ, "circular", {"l2"});
      cfg.circular_l2 = number(circ, "l2", "circular");
    }

    if (doc.contains("integrator")) {
      const json& in = section(doc, "integrator");
      reject_unknown(in, "integrator",
                     {"tol", "max_step", "lambda_span", "sample_interval",
                      "strict_time", "sampling"});
      cfg.integrator.tol = number_or(in, "tol", cfg.integrator.tol, "integrator");
      if (in.contains("max_step")) cfg.integrator.max_step = number(in, "max_step", "integrator");
      cfg.lambda_span = number_or(in, "lambda_span", cfg.lambda_span, "integrator");
      cfg.integrator.sample_interval =
          number_or(in, "sample_interval", 0.0, "integrator");
      if (in.contains("strict_time")) {
        if (!in["strict_time"].is_boolean()) config_error("integrator.strict_time must be a boolean");
        cfg.integrator.strict_time = in["strict_time"].get<bool>();
      }
      if (in.contains("sampling")) {
        if (!in["sampling"].is_string()) config_error("integrator.sampling must be a string");
        cfg.sampling = in["sampling"].get<std::string>();
      }
    }
    if (!(cfg.integrator.tol >= 1e-14 && cfg.integrator.tol <= 1e-3)) {
      config_error("integrator.tol must lie in [1e-14, 1e-3]");
    }
    if (!(cfg.lambda_span > 0.0)) config_error("integrator.lambda_span must be positive");
    if (!(cfg.integrator.max_step > 0.0)) config_error("integrator.max_step must be positive");
    if (cfg.integrator.sample_interval < 0.0) {
      config_error("integrator.sample_interval must be positive");
    }
    if (cfg.sampling != "T" && cfg.sampling != "lambda") {
      config_error("integrator.sampling must be 'T' or 'lambda'");
    }

    if (doc.contains("frame")) {
      const json& fr = section(doc, "frame");
      reject_unknown(fr, "frame", {"k", "velocity", "xi0"});
      if (fr.contains("k") && fr.contains("velocity")) {
        config_error("frame takes either 'k' or 'velocity', not both");
      }
      if (fr.contains("k")) cfg.frame_k = four_vector(fr["k"], "frame.k");
      if (fr.contains("velocity")) {
        cfg.frame_velocity = vec3(fr["velocity"], "frame.velocity");
        if (!(dot(*cfg.frame_velocity, *cfg.frame_velocity) < 1.0)) {
          config_error("frame.velocity must be slower than light");
        }
      }
      if (fr.contains("xi0")) cfg.Xi0 = vec3(fr["xi0"], "frame.xi0");
    }

    if (doc.contains("output")) {
      const json& out = section(doc, "output");
      reject_unknown(out, "output", {"format", "path"});
      if (out.contains("format")) {
        if (!out["format"].is_string()) config_error("output.format must be a string");
        cfg.format = out["format"].get<std::string>();
      }
      if (out.contains("path")) {
        if (!out["path"].is_string()) config_error("output.path must be a string");
        cfg.path = out["path"].get<std::string>();
      }
    }
    if (cfg.format != "csv" && cfg.format != "json") {
      config_error("output.format must be 'csv' or 'json'");
    }
  } catch (const json::exception& e) {
    config_error(e.what());
  }

  if (cfg.m1 > cfg.m2) {
    // Relabel the bodies; z and y change sign with the labels.
    std::swap(cfg.m1, cfg.m2);
    if (cfg.ztil) *cfg.ztil = -*cfg.ztil;
    if (cfg.ytil) *cfg.ytil = -*cfg.ytil;
    cfg.warnings.push_back("m1 > m2: bodies relabelled so that m1 <= m2");
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& file) {
  std::ifstream in(file);
  if (!in) config_error("cannot open config file '" + file + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    config_error("invalid JSON in '" + file + "': " + e.what());
  }
  return parse_config(doc);
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  const PotentialSpec model = make_potential(cfg.potential);
  const PotentialStructure st = model->structure();
  const double nu = 0.5 * (cfg.m1 - cfg.m2) * (cfg.m1 + cfg.m2);

  ScenarioResult res;
  json diag;
  diag["warnings"] = cfg.warnings;
  diag["potential"] = model->name();

  ReducedState initial;
  std::optional<CircularOrbit> orbit;
  if (cfg.circular_l2) {
    const double l2 = *cfg.circular_l2;
    auto lambda_of_M = [&](double M) {
      return find_circular(model, probe_shell(M, nu), l2).lambda_;
    };
    if (st.p2_independent && st.w_independent) {
      const double M = cfg.m1 + cfg.m2;
      res.shell = mass_shell_from_lambda(cfg.m1, cfg.m2, lambda_of_M(M));
    } else {
      res.shell = self_consistent_shell(cfg.m1, cfg.m2, lambda_of_M);
    }
    orbit = find_circular(model, res.shell, l2);
    initial = orbit->initial;
  } else {
    initial.ztil = *cfg.ztil;
    initial.ytil = *cfg.ytil;
    auto lambda_of_M = [&](double M) {
      return -noether_N(initial, probe_shell(M, nu), *model);
    };
    if (st.p2_independent && st.w_independent) {
      res.shell = mass_shell_from_lambda(cfg.m1, cfg.m2, lambda_of_M(cfg.m1 + cfg.m2));
    } else {
      res.shell = self_consistent_shell(cfg.m1, cfg.m2, lambda_of_M);
    }
  }
  const MassShell& s = res.shell;

  res.trajectory = integrate(initial, s, model, cfg.lambda_span, cfg.integrator);
  const Trajectory& traj = res.trajectory;

  bool uniform_T = cfg.sampling == "T";
  if (uniform_T && traj.nonmonotone) {
    uniform_T = false;
    diag["warnings"].push_back(
        "T(lambda) is not monotone; output sampled uniformly in lambda");
  }
  if (uniform_T && traj.samples.size() > 1) {
    const double dT = (traj.samples.back().T - traj.samples.front().T) /
                      static_cast<double>(traj.samples.size() - 1);
    res.rows = resample_uniform_T(traj, dT);
  } else {
    res.rows = traj.samples;
  }

  res.points.reserve(res.rows.size());
  for (const auto& row : res.rows) res.points.push_back(worldline_point(row, s, cfg.Xi0));
  std::optional<FourVector> k = cfg.frame_k;
  if (cfg.frame_velocity) {
    const Vec3 v = *cfg.frame_velocity;
    const double gamma = 1.0 / std::sqrt(1.0 - dot(v, v));
    k = FourVector::from_parts(s.M * gamma, v * (s.M * gamma));
  }
  if (k) res.points = export_lab_frame(std::move(res.points), *k, s.M2);

  const ConservationReport cons = conservation_report(traj);
  diag["shell"] = {{"m1", s.m1}, {"m2", s.m2}, {"mu", s.mu},  {"nu", s.nu},
                   {"Lambda", s.lambda_}, {"M", s.M}, {"M2", s.M2},
                   {"E1", s.E1}, {"E2", s.E2}};
  json conditions = json::array();
  conditions.push_back(condition("lambda_bound", "m1^2 + Lambda > 0", s.m1 * s.m1 + s.lambda_));
  conditions.push_back(condition("reality", "mu + Lambda > |nu|", s.mu + s.lambda_ - std::abs(s.nu)));
  conditions.push_back(condition("positive_energies", "M^2 > 2|nu|", s.M2 - 2.0 * std::abs(s.nu)));
  conditions.push_back(condition("mass_bound", "M^2 > m2^2 - m1^2", s.M2 - (s.m2 * s.m2 - s.m1 * s.m1)));
  conditions.push_back(condition("time_monotone", "dT/dlambda > 0", cons.min_dTdlambda));
  if (cfg.potential.kind == "harmonic") {
    conditions.push_back(condition("toy_sufficient", "M^2/4 - nu^2/M^2 > Lambda/2",
                                   0.25 * s.M2 - s.nu * s.nu / s.M2 - 0.5 * s.lambda_));
  }
  diag["conditions"] = conditions;
  diag["drift"] = {{"N_relative", cons.N_drift},
                   {"L2_relative", cons.L2_drift},
                   {"planarity", cons.planarity}};
  diag["min_dTdlambda"] = cons.min_dTdlambda;
  diag["nonmonotone_time"] = traj.nonmonotone;
  diag["steps"] = {{"accepted", traj.stats.accepted},
                   {"rejected", traj.stats.rejected},
                   {"evaluations", traj.stats.evaluations}};
  diag["sampling"] = uniform_T ? "T" : "lambda";

  // Distance between the heavy body and the center of energy at equal times
  // is offset * |r| with offset = 1/2 + nu/M^2.
  const double offset = 0.5 + s.nu / s.M2;
  double sep_min = INFINITY, sep_max = 0.0;
  for (const auto& row : traj.samples) {
    const double d = offset * norm(row.state.ztil);
    sep_min = std::min(sep_min, d);
    sep_max = std::max(sep_max, d);
  }
  diag["center_offset"] = {{"coefficient", offset},
                           {"heavy_body_distance_min", sep_min},
                           {"heavy_body_distance_max", sep_max}};
  if (orbit) {
    diag["circular"] = {{"rho", orbit->rho},       {"speed2", orbit->speed2},
                        {"Omega", orbit->Omega},   {"l2", orbit->l2},
                        {"dTdlambda", orbit->dTdlambda},
                        {"period_T", orbit->period_T}};
  }
  res.diagnostics = std::move(diag);
  return res;
}

const std::vector<std::string>& output_columns() {
  static const std::vector<std::string> cols = {
      "lambda", "T",     "tau1",  "tau2",  "ztil_x", "ztil_y", "ztil_z",
      "ytil_x", "ytil_y", "ytil_z", "x1_t",  "x1_x",  "x1_y",  "x1_z",
      "x2_t",   "x2_x",  "x2_y",  "x2_z",  "Xi_t",  "Xi_x",  "Xi_y",
      "Xi_z",   "N",     "L2",    "dTdlambda"};
  return cols;
}

namespace {

std::vector<double> row_values(const TrajectorySample& r, const WorldlineSample& w) {
  const double bad = r.nonmonotone ? NAN : 0.0;
  auto masked = [&](double v) { return r.nonmonotone ? bad : v; };
  return {r.state.lambda_, masked(r.T),      r.tau1,           r.tau2,
          r.state.ztil.x,  r.state.ztil.y,   r.state.ztil.z,   r.state.ytil.x,
          r.state.ytil.y,  r.state.ytil.z,   masked(w.x1.t),   masked(w.x1.x),
          masked(w.x1.y),  masked(w.x1.z),   masked(w.x2.t),   masked(w.x2.x),
          masked(w.x2.y),  masked(w.x2.z),   masked(w.Xi.t),   masked(w.Xi.x),
          masked(w.Xi.y),  masked(w.Xi.z),   r.N,              r.L2,
          r.dTdlambda};
}

}  // namespace

std::string render_csv(const ScenarioResult& result) {
  std::ostringstream out;
  const auto& cols = output_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (std::size_t r = 0; r < result.rows.size(); ++r) {
    const auto vals = row_values(result.rows[r], result.points[r]);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      out << (i ? "," : "") << format_number(vals[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_json(const ScenarioResult& result) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["columns"] = output_columns();
  json rows = json::array();
  for (std::size_t r = 0; r < result.rows.size(); ++r) {
    json row = json::array();
    for (double v : row_values(result.rows[r], result.points[r])) row.push_back(nan_to_null(v));
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  doc["diagnostics"] = result.diagnostics;
  return doc.dump(1) + "\n";
}

std::string resolve_output_path(const ScenarioConfig& cfg) {
  namespace fs = std::filesystem;
  const char* dir = std::getenv("PTB_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return cfg.path;
  return (fs::path(dir) / fs::path(cfg.path).filename()).string();
}

nlohmann::json run_and_write(const ScenarioConfig& cfg) {
  const ScenarioResult res = run_scenario(cfg);
  const std::string path = resolve_output_path(cfg);
  std::ofstream out(path, std::ios::binary);
  if (!out) config_error("cannot write output file '" + path + "'");
  out << (cfg.format == "json" ? render_json(res) : render_csv(res));
  json diag = res.diagnostics;
  diag["output"] = path;
  return diag;
}

}  // namespace ptb
