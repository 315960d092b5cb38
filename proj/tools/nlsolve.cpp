#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nonlocal.hpp"

namespace {

enum ExitCode { ok = 0, config_error = 2, existence_refusal = 3, numerical_failure = 4 };

void write_rows(const std::vector<nonlocal::CsvRow>& rows, const std::string& out) {
  if (out.empty() || out == "-") nonlocal::write_csv(std::cout, rows);
  else nonlocal::emit_csv(rows, out);
}

int cmd_solve(const std::string& config_path, std::string out, unsigned threads) {
  std::ifstream in(config_path);
  if (!in) throw nonlocal::IoError("cannot open config '" + config_path + "'");
  std::stringstream text;
  text << in.rdbuf();
  const auto base = std::filesystem::path(config_path).parent_path();
  const nonlocal::RunConfig cfg = nonlocal::parse_config(text.str(), base.empty() ? "." : base);
  if (out.empty() && cfg.out) out = cfg.out->string();

  const auto result = nonlocal::run_config(cfg, threads);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  write_rows(result.rows, out);
  return ok;
}

int cmd_reproduce(int example, int nodes, int N, const std::string& out, unsigned threads) {
  write_rows({nonlocal::run_reproduction(example, nodes, N, threads)}, out);
  return ok;
}

int cmd_converge(int example, int nodes, const std::vector<int>& Ns, const std::string& out, unsigned threads) {
  const auto rows = nonlocal::run_convergence(example, nodes, Ns, threads);
  write_rows(rows, out);

  std::vector<double> errors;
  for (const auto& r : rows) errors.push_back(*r.abs_error);
  bool positive = rows.size() >= 2;
  for (double e : errors) positive = positive && e > 0.0;
  if (!positive) {
    std::cerr << "fit: skipped (need two or more nonzero errors)\n";
    return ok;
  }
  const auto fit = nonlocal::fit_sqrt_law(Ns, errors);
  std::fprintf(stderr, "fit: log(error) = %.6g %+.6g*sqrt(N+1), max residual %.3g (%.1f%% of range)\n", fit.intercept,
               fit.slope, fit.max_residual, 100.0 * fit.relative_residual());
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contour-integral solver for u' + Au = 0 with an integral nonlocal condition"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads for resolvent evaluation")->check(CLI::Range(1u, 256u));

  std::string config_path, out;
  auto* solve = app.add_subcommand("solve", "Run a configuration file and print CSV");
  solve->add_option("--config", config_path, "key = value configuration")->required();
  solve->add_option("--out", out, "CSV path (overrides the config's 'out'; default stdout)");

  int example = 1, nodes = 16, N = 32;
  auto* reproduce = app.add_subcommand("reproduce", "One table entry of a reference example");
  reproduce->add_option("--example", example, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  reproduce->add_option("--n", nodes, "Number of Gauss points")->required();
  reproduce->add_option("--N", N, "Sinc truncation")->required();
  reproduce->add_option("--out", out, "CSV path (default stdout)");

  std::vector<int> Ns;
  auto* converge = app.add_subcommand("converge", "Error against N for example 1, with a sqrt(N+1) fit on stderr");
  converge->add_option("--example", example, "Only 1")->required()->check(CLI::IsMember({1}));
  converge->add_option("--n", nodes, "Number of Gauss points")->required();
  converge->add_option("--N-list", Ns, "Comma-separated N values")->required()->delimiter(',');
  converge->add_option("--out", out, "CSV path (default stdout)");

  for (auto* sub : {solve, reproduce, converge})
    sub->add_option("--threads", threads, "Worker threads for resolvent evaluation")->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return config_error;
  }

  try {
    if (*solve) return cmd_solve(config_path, out, threads);
    if (*reproduce) return cmd_reproduce(example, nodes, N, out, threads);
    return cmd_converge(example, nodes, Ns, out, threads);
  } catch (const nonlocal::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const nonlocal::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return config_error;
  } catch (const nonlocal::ExistenceError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return existence_refusal;
  } catch (const nonlocal::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  }
}
