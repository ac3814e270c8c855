#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ptb/errors.hpp"
#include "ptb/mass_shell.hpp"
#include "ptb/scenario.hpp"
#include "ptb/worldline.hpp"

using namespace ptb;
using nlohmann::json;

namespace {

json harmonic_doc() {
  return json::parse(R"({
    "schema_version": 1,
    "masses": {"m1": 1.0, "m2": 1.5},
    "potential": {"kind": "harmonic", "chi": 0.125},
    "initial": {"ztil": [1, 0, 0], "ytil": [0, 0.5, 0]},
    "integrator": {"tol": 1e-10, "lambda_span": 10, "sample_interval": 0.1},
    "output": {"format": "csv", "path": "out.csv"}
  })");
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::BadParameter;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

TEST(Scenario, ParsesDocument) {
  const ScenarioConfig c = parse_config(harmonic_doc());
  EXPECT_EQ(c.m1, 1.0);
  EXPECT_EQ(c.potential.kind, "harmonic");
  ASSERT_TRUE(c.ztil);
  EXPECT_EQ(c.ztil->x, 1.0);
  EXPECT_EQ(c.integrator.sample_interval, 0.1);
  EXPECT_EQ(c.lambda_span, 10.0);
  EXPECT_TRUE(c.warnings.empty());
}

TEST(Scenario, RejectsInvalidDocuments) {
  auto bad = [](auto mutate) {
    json d = harmonic_doc();
    mutate(d);
    return kind_of([&] { parse_config(d); });
  };
  EXPECT_EQ(bad([](json& d) { d["schema_version"] = 2; }), ErrorKind::ConfigError);
  EXPECT_EQ(bad([](json& d) { d.erase("masses"); }), ErrorKind::ConfigError);
  EXPECT_EQ(bad([](json& d) { d["masses"]["m1"] = "one"; }), ErrorKind::ConfigError);
  EXPECT_EQ(bad([](json& d) { d["masses"]["m1"] = -1; }), ErrorKind::ConfigError);
  EXPECT_EQ(bad([](json& d) { d["extra"] = 1; }), ErrorKind::ConfigError);
  EXPECT_EQ(bad([](json& d) { d["integrator"]["tol"] = 1e-16; }), ErrorKind::ConfigError);
  EXPECT_EQ(bad([](json& d) { d["integrator"]["tol"] = 1e-2; }), ErrorKind::ConfigError);
  EXPECT_EQ(bad([](json& d) { d["integrator"]["sampling"] = "tau"; }), ErrorKind::ConfigError);
  EXPECT_EQ(bad([](json& d) { d["circular"] = {{"l2", 1.0}}; }), ErrorKind::ConfigError);
  EXPECT_EQ(bad([](json& d) { d.erase("initial"); }), ErrorKind::ConfigError);
  EXPECT_EQ(bad([](json& d) { d["initial"]["ztil"] = {1, 2}; }), ErrorKind::ConfigError);
  EXPECT_EQ(bad([](json& d) { d["output"]["format"] = "xml"; }), ErrorKind::ConfigError);
  EXPECT_EQ(bad([](json& d) { d["frame"] = {{"velocity", {0.8, 0.8, 0}}}; }),
            ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { make_potential({"yukawa", 0, 0, 1}); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { load_config("/nonexistent/file.json"); }), ErrorKind::ConfigError);
}

TEST(Scenario, SwapsMassesWithWarning) {
  json d = harmonic_doc();
  d["masses"] = {{"m1", 2.0}, {"m2", 1.0}};
  const ScenarioConfig c = parse_config(d);
  EXPECT_EQ(c.m1, 1.0);
  EXPECT_EQ(c.m2, 2.0);
  EXPECT_EQ(c.ztil->x, -1.0);
  EXPECT_EQ(c.ytil->y, -0.5);
  ASSERT_EQ(c.warnings.size(), 1u);
}

TEST(Scenario, FreeScenarioGivesStraightWorldLines) {
  json d = harmonic_doc();
  d["potential"] = {{"kind", "free"}};
  d["initial"]["ytil"] = {0.1, 0.2, -0.3};
  const ScenarioResult r = run_scenario(parse_config(d));
  EXPECT_NEAR(r.shell.lambda_, 0.14, 1e-15);  // -N = |ytil|^2
  EXPECT_EQ(r.diagnostics["drift"]["N_relative"].get<double>(), 0.0);
  EXPECT_LE(r.diagnostics["drift"]["L2_relative"].get<double>(), 1e-14);
  // Each body moves uniformly in T.
  const auto& p = r.points;
  ASSERT_GT(p.size(), 3u);
  for (std::size_t i = 2; i < p.size(); ++i) {
    const FourVector a = p[i - 1].x1 - p[i - 2].x1, b = p[i].x1 - p[i - 1].x1;
    const double ra = a.t != 0 ? 1.0 / a.t : 0.0, rb = b.t != 0 ? 1.0 / b.t : 0.0;
    EXPECT_NEAR(a.x * ra, b.x * rb, 1e-9);
    EXPECT_NEAR(a.z * ra, b.z * rb, 1e-9);
  }
}

TEST(Scenario, SelfConsistentHarmonicShell) {
  const ScenarioResult r = run_scenario(parse_config(harmonic_doc()));
  const double N0 = r.trajectory.samples.front().N;
  EXPECT_NEAR(r.shell.lambda_, -N0, 1e-12 * std::abs(N0));
  EXPECT_NEAR(r.shell.m1, 1.0, 1e-15);
  EXPECT_LE(r.diagnostics["drift"]["N_relative"].get<double>(), 1e-9);
  for (const auto& c : r.diagnostics["conditions"]) EXPECT_TRUE(c["ok"].get<bool>()) << c.dump();
}

TEST(Scenario, CircularScenarioReportsPeriod) {
  json d = harmonic_doc();
  d.erase("initial");
  d["circular"] = {{"l2", 1.0}};
  d["masses"] = {{"m1", 1.0}, {"m2", 1.0}};
  const ScenarioResult r = run_scenario(parse_config(d));
  const json& c = r.diagnostics["circular"];
  const double Omega = c["Omega"].get<double>();
  EXPECT_NEAR(Omega, std::sqrt(2 * 0.125 * r.shell.M), 1e-12);
  EXPECT_NEAR(c["period_T"].get<double>(), 2 * M_PI / Omega * c["dTdlambda"].get<double>(), 1e-12);
  // Lambda = 2 chi M (a + b) with a = b = rho^2.
  const double rho = c["rho"].get<double>();
  EXPECT_NEAR(r.shell.lambda_, 2 * 0.125 * r.shell.M * 2 * rho * rho, 1e-10);
  for (const auto& row : r.trajectory.samples) {
    EXPECT_NEAR(norm(row.state.ztil), rho, 1e-9);
  }
}

TEST(Scenario, CsvLayoutAndDeterminism) {
  const ScenarioConfig c = parse_config(harmonic_doc());
  const std::string a = render_csv(run_scenario(c));
  const std::string b = render_csv(run_scenario(c));
  EXPECT_EQ(a, b);
  std::stringstream ss(a);
  std::string header, first;
  std::getline(ss, header);
  std::getline(ss, first);
  EXPECT_EQ(header,
            "lambda,T,tau1,tau2,ztil_x,ztil_y,ztil_z,ytil_x,ytil_y,ytil_z,x1_t,x1_x,x1_y,x1_z,"
            "x2_t,x2_x,x2_y,x2_z,Xi_t,Xi_x,Xi_y,Xi_z,N,L2,dTdlambda");
  const auto cells = split_csv_line(first);
  ASSERT_EQ(cells.size(), output_columns().size());
  EXPECT_EQ(cells[0], "0");
  EXPECT_EQ(cells[4], "1");
  // 17 significant digits round-trip exactly.
  const ScenarioResult r = run_scenario(c);
  std::stringstream s2(render_csv(r));
  std::getline(s2, header);
  std::string line;
  for (const auto& row : r.rows) {
    std::getline(s2, line);
    EXPECT_EQ(std::stod(split_csv_line(line)[1]), row.T);
  }
}

TEST(Scenario, UniformTSampling) {
  const ScenarioResult r = run_scenario(parse_config(harmonic_doc()));
  EXPECT_EQ(r.diagnostics["sampling"], "T");
  ASSERT_GT(r.rows.size(), 2u);
  const double dT = r.rows[1].T - r.rows[0].T;
  for (std::size_t i = 1; i + 1 < r.rows.size(); ++i) {
    EXPECT_NEAR(r.rows[i + 1].T - r.rows[i].T, dT, 1e-12);
  }
}

TEST(Scenario, NonMonotoneRowsAreMasked) {
  // Self-consistent shells of the built-in potentials keep T monotone, so the
  // result is assembled from an orbit carried by a shell that is too light.
  const MassShell shell = mass_shell_from_lambda(std::sqrt(3.0), std::sqrt(3.0), 1.0);
  ReducedState s0;
  s0.ytil = {4, 0, 0};
  ScenarioResult r;
  r.shell = shell;
  r.trajectory = integrate(s0, shell, make_harmonic(0.125), 3.0);
  ASSERT_TRUE(r.trajectory.nonmonotone);
  r.rows = r.trajectory.samples;
  r.points = worldlines(r.trajectory);

  std::size_t flagged = 0;
  for (const auto& row : r.rows) flagged += row.nonmonotone;
  ASSERT_GT(flagged, 0u);
  ASSERT_LT(flagged, r.rows.size());

  std::istringstream csv(render_csv(r));
  std::string line;
  std::getline(csv, line);
  std::size_t nan_rows = 0;
  for (std::size_t i = 0; std::getline(csv, line); ++i) {
    const auto cells = split_csv_line(line);
    ASSERT_EQ(cells.size(), output_columns().size());
    EXPECT_NE(cells[0], "nan");
    EXPECT_EQ(cells[1] == "nan", static_cast<bool>(r.rows[i].nonmonotone));
    if (cells[1] == "nan") {
      ++nan_rows;
      EXPECT_EQ(cells[11], "nan");  // x1_t
      EXPECT_NE(cells[2], "nan");   // tau1 is still defined
    }
  }
  EXPECT_EQ(nan_rows, flagged);

  const json j = json::parse(render_json(r));
  std::size_t nulls = 0;
  for (const auto& row : j["rows"]) nulls += row[1].is_null();
  EXPECT_EQ(nulls, flagged);
}

TEST(Scenario, ExitCodes) {
  EXPECT_EQ(exit_code(ErrorKind::LambdaBoundViolation), 3);
  EXPECT_EQ(exit_code(ErrorKind::NonMonotoneTime), 5);
}

TEST(Scenario, InadmissibleBindingIsReported) {
  json d = harmonic_doc();
  d["potential"] = {{"kind", "central_power"}, {"g", -1.0}, {"n", 1}};
  d["initial"] = {{"ztil", {0.1, 0, 0}}, {"ytil", {0, 0, 0}}};
  const ErrorKind k = kind_of([&] { run_scenario(parse_config(d)); });
  EXPECT_EQ(k, ErrorKind::LambdaBoundViolation);
  EXPECT_EQ(exit_code(k), 3);
}

TEST(Scenario, LabFrameOutput) {
  json d = harmonic_doc();
  d["frame"] = {{"velocity", {0.6, 0, 0}}, {"xi0", {1, 2, 3}}};
  const ScenarioResult r = run_scenario(parse_config(d));
  const double M = r.shell.M;
  for (const auto& w : r.points) {
    const FourVector k{M * 1.25, M * 0.75, 0, 0};
    EXPECT_NEAR(lorentz_dot(k, w.x1 - w.x2), 0.0, 1e-12 * 10);
  }
  json bad = harmonic_doc();
  bad["frame"] = {{"k", {1, 0, 0, 0}}};
  EXPECT_EQ(kind_of([&] { run_scenario(parse_config(bad)); }), ErrorKind::FrameMismatch);
}

TEST(Scenario, OutputDirectoryOverride) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ptb_scenario_test";
  fs::create_directories(dir);
  ScenarioConfig c = parse_config(harmonic_doc());
  c.path = "some/where/run.json";
  c.format = "json";
  ::setenv("PTB_OUTPUT_DIR", dir.c_str(), 1);
  EXPECT_EQ(resolve_output_path(c), (dir / "run.json").string());
  const json diag = run_and_write(c);
  ::unsetenv("PTB_OUTPUT_DIR");
  EXPECT_EQ(resolve_output_path(c), "some/where/run.json");
  std::ifstream in(dir / "run.json");
  const json out = json::parse(in);
  EXPECT_EQ(out["schema_version"], 1);
  EXPECT_EQ(out["columns"].size(), output_columns().size());
  EXPECT_EQ(diag["output"], (dir / "run.json").string());
  fs::remove_all(dir);
}

TEST(Scenario, FormatNumber) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(NAN), "nan");
  EXPECT_EQ(format_number(-1e-300), "-1e-300");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.33333333333333331");
}
