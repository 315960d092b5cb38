#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "nonlocal/config.hpp"
#include "nonlocal/csv.hpp"
#include "nonlocal/run.hpp"

using namespace nonlocal;
using std::numbers::pi;

namespace {

const std::string base = "operator = sine\nmodes = 4\nT = 1.5707963267948966\nweight = cos\nu0 = sine:1\n";

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string error_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST(Config, Basic) {
  const RunConfig c = parse_config(base + "# comment\nn = 8   # trailing\nN = 40\nt = 0.5, 1\nx = 0.25,0.5\n");
  EXPECT_EQ(c.op_kind, OperatorKind::sine);
  EXPECT_EQ(c.size, 4);
  EXPECT_EQ(c.T, pi / 2);
  EXPECT_EQ(c.weight_name, "cos");
  EXPECT_NEAR(c.weight(0.3), std::cos(0.3), 1e-16);
  EXPECT_EQ(c.n, 8);
  EXPECT_EQ(c.N, 40);
  EXPECT_EQ(c.t, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(c.x, (std::vector<double>{0.25, 0.5}));
  EXPECT_TRUE(std::holds_alternative<UniformStep>(c.step));
}

TEST(Config, WeightForms) {
  const auto w = [](const std::string& spec) {
    return parse_config("operator = diagonal\neigenvalues = 1,2\nT = 1\nu0 = sine:1\nweight = " + spec).weight;
  };
  EXPECT_NEAR(w("cos_square")(1.1), std::cos(1.21), 1e-15);
  EXPECT_EQ(w("zero")(0.4), 0.0);
  EXPECT_EQ(w("const:0.25")(0.4), 0.25);
  EXPECT_NEAR(w("poly:1,0,-2")(0.5), 0.5, 1e-16);
}

TEST(Config, StepModes) {
  const RunConfig a = parse_config(base + "step_mode = large_t\nc1 = 2\n");
  EXPECT_EQ(std::get<LargeTimeStep>(a.step).c1, 2.0);
  const RunConfig b = parse_config(base + "step_mode = scaled\nscale = 0.5\n");
  EXPECT_EQ(std::get<ScaledStep>(b.step).scale, 0.5);
  EXPECT_EQ(error_key(base + "c1 = 2\n"), "c1");
  EXPECT_EQ(error_key(base + "step_mode = fast\n"), "step_mode");
}

TEST(Config, NegativeN) {
  try {
    parse_config(base + "N = -1\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "N");
    EXPECT_EQ(e.line(), 6);
    EXPECT_NE(std::string(e.what()).find("[0, 1000000]"), std::string::npos);
  }
}

TEST(Config, FailClosed) {
  EXPECT_EQ(error_key(base + "tolerance = 1\n"), "tolerance");
  EXPECT_EQ(error_line(base + "tolerance = 1\n"), 6);
  EXPECT_EQ(error_key(base + "T = 2\n"), "T");
  EXPECT_EQ(error_line(base + "T = 2\n"), 6);
  EXPECT_EQ(error_line(base + "just words\n"), 6);
  EXPECT_EQ(error_key(base + "n = 1.5\n"), "n");
  EXPECT_EQ(error_key(base + "alpha = 1\n"), "alpha");
  EXPECT_EQ(error_key(base + "t = 1,,2\n"), "t");
  EXPECT_EQ(error_key(base + "rho1 = 20\n"), "rho1");
  EXPECT_EQ(error_key("operator = sine\nmodes = 4\nT = 0\nweight = cos\nu0 = sine:1\n"), "T");
  EXPECT_EQ(error_key("operator = sine\nmodes = 4\nT = 1\nweight = cos\nu0 = sine:5\n"), "u0");
  EXPECT_EQ(error_key("operator = sine\nT = 1\nweight = cos\nu0 = sine:1\n"), "m");
  EXPECT_EQ(error_key("operator = cube\nmodes = 4\nT = 1\nweight = cos\nu0 = sine:1\n"), "operator");
  EXPECT_EQ(error_key("operator = laplacian1d\nm = 4\nT = 1\nweight = cos\nu0 = sine:1\nx = 0.5\n"), "x");
  EXPECT_EQ(error_key(base + "u0 = poly_x2_1mx\n"), "u0");
  EXPECT_EQ(error_key("operator = sine\nmodes = 4\nT = 1\nweight = cos\nu0 = file:/nonexistent/u0.txt\n"), "u0");
  EXPECT_EQ(error_key("operator = sine\nmodes = 4\nT = 1\nweight = sin\nu0 = sine:1\n"), "weight");
  EXPECT_EQ(error_key("operator = diagonal\neigenvalues = 3,1\nT = 1\nweight = cos\nu0 = sine:1\n"), "eigenvalues");
}

TEST(Config, InitialFile) {
  const auto dir = std::filesystem::temp_directory_path() / "nonlocal_cfg_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "u0.txt");
    f.precision(17);
    for (int j = 1; j <= 7; ++j) f << std::sin(pi * j / 8.0) << '\n';
  }
  const RunConfig c =
      parse_config("operator = laplacian1d\nm = 7\nT = 1\nweight = zero\nu0 = file:u0.txt\n", dir);
  const NonlocalProblem p = build_problem(c);
  for (int j = 0; j < 7; ++j) EXPECT_NEAR(p.u0[j], std::sin(pi * (j + 1) / 8.0), 1e-15);

  const RunConfig bad = parse_config("operator = laplacian1d\nm = 6\nT = 1\nweight = zero\nu0 = file:u0.txt\n", dir);
  EXPECT_THROW(build_problem(bad), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(Config, RunSineAgainstOracle) {
  const RunConfig c = parse_config(base + "n = 16\nN = 64\nt = 0.1, 1\nx = 0.5\nstep_mode = scaled\n");
  const RunResult r = run_config(c);
  ASSERT_EQ(r.rows.size(), 2u);
  for (const auto& row : r.rows) {
    ASSERT_TRUE(row.abs_error.has_value());
    EXPECT_LE(*row.abs_error, 1e-10 * std::abs(row.value));
  }
}

TEST(Config, RunIsDeterministicAcrossThreads) {
  const RunConfig c = parse_config("operator = laplacian1d\nm = 50\nT = 1\nweight = const:0.3\nu0 = poly_x2_1mx\n"
                                   "n = 12\nN = 60\nt = 0.05, 0.2\n");
  std::ostringstream a, b;
  write_csv(a, run_config(c, 1).rows);
  write_csv(b, run_config(c, 3).rows);
  const std::string text = a.str();
  EXPECT_EQ(text, b.str());
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 101);
}

TEST(Csv, HeaderOnly) {
  std::ostringstream os;
  write_csv(os, {});
  EXPECT_EQ(os.str(), "n,N,t,x,value,abs_error\n");
}

TEST(Csv, RoundTrip) {
  const double v = 5.95184553823189e-5;
  const std::vector<CsvRow> rows{{32, 256, 1.0, 0.4, v, 1e-17}, {4, 8, 0.1, 0.3, -1.0 / 3.0, std::nullopt}};
  std::ostringstream os;
  write_csv(os, rows);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "n,N,t,x,value,abs_error");
  std::getline(is, line);
  auto f = split(line);
  ASSERT_EQ(f.size(), 6u);
  EXPECT_EQ(f[0], "32");
  EXPECT_EQ(f[1], "256");
  EXPECT_EQ(std::stod(f[4]), v);
  EXPECT_EQ(std::stod(f[3]), 0.4);
  std::getline(is, line);
  f = split(line);
  ASSERT_EQ(f.size(), 6u);
  EXPECT_EQ(std::stod(f[4]), -1.0 / 3.0);
  EXPECT_EQ(f[5], "");
  EXPECT_FALSE(std::getline(is, line));
}

TEST(Csv, EmitReportsPath) {
  try {
    emit_csv({}, "/nonexistent_dir/x.csv");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent_dir/x.csv"), std::string::npos);
  }
  const auto path = std::filesystem::temp_directory_path() / "nonlocal_csv_test.csv";
  emit_csv(std::vector<CsvRow>{{1, 2, 3.0, 4.0, 5.0, 6.0}}, path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "n,N,t,x,value,abs_error\n1,2,3,4,5,6\n");
  std::filesystem::remove(path);
}

TEST(Reproduction, TableRows) {
  const CsvRow r = run_reproduction(1, 8, 32);
  EXPECT_EQ(r.n, 8);
  EXPECT_EQ(r.N, 32);
  EXPECT_EQ(r.x, 0.5);
  EXPECT_NEAR(*r.abs_error, 8.2307398421915e-12, 0.05 * 8.2307398421915e-12);
  EXPECT_THROW(run_reproduction(3, 8, 32), ConfigError);
}

TEST(Reproduction, FitSqrtLaw) {
  const std::vector<int> Ns{3, 8, 15};
  const std::vector<double> e{std::exp(1 - 2 * 2.0), std::exp(1 - 2 * 3.0), std::exp(1 - 2 * 4.0)};
  const SqrtLawFit f = fit_sqrt_law(Ns, e);
  EXPECT_NEAR(f.slope, -2.0, 1e-12);
  EXPECT_NEAR(f.intercept, 1.0, 1e-12);
  EXPECT_LE(f.max_residual, 1e-12);
  EXPECT_NEAR(f.range, 4.0, 1e-12);
}
