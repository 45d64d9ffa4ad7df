#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "desolve/bench.hpp"
#include "desolve/error.hpp"
#include "desolve/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

int exit_code(desolve::ErrorCode code) {
  switch (code) {
    case desolve::ErrorCode::numeric_error:
    case desolve::ErrorCode::singular_jacobian:
    case desolve::ErrorCode::tuning_failure:
      return kExitNumeric;
    case desolve::ErrorCode::io_error:
      return kExitIo;
    default:
      return kExitInvalid;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) desolve::fail(desolve::ErrorCode::io_error, "cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string describe(const desolve::Hyperparameters& hp) {
  std::string out;
  if (hp.m) out += "m=" + std::to_string(*hp.m);
  if (hp.sigma) out += "sigma=" + desolve::format_double(*hp.sigma);
  if (hp.gamma) out += " gamma=" + desolve::format_double(*hp.gamma);
  return out;
}

struct SolveArgs {
  std::string problem;
  std::string method;
  int n = 0;
  std::optional<int> m;
  std::optional<double> sigma;
  std::optional<double> gamma;
  int test_points = 0;
};

struct BenchArgs {
  std::string spec;
  std::string out;
  std::string format = "csv";
  std::string curves;
};

int run_solve(const SolveArgs& a) {
  const desolve::BenchmarkProblem& problem = desolve::get_problem(desolve::parse_problem_id(a.problem));
  const desolve::MethodSpec method = desolve::parse_method(a.method);
  desolve::Hyperparameters hp{a.m, a.sigma, a.gamma};
  if (!hp.m && !hp.sigma && !hp.gamma) {
    desolve::RunSpec spec = desolve::make_run_spec(problem.id, method);
    hp = desolve::tune_hyperparameters(problem, method, a.n, spec).hp;
  } else if (method.method == desolve::Method::tfc ? (hp.sigma || hp.gamma) : bool(hp.m)) {
    desolve::fail(desolve::ErrorCode::invalid_argument,
                  "tfc takes --m; lssvm and csvm take --sigma and --gamma");
  }
  const desolve::ErrorReport r = desolve::solve_once(problem, method, a.n, hp, a.test_points);
  std::cout << desolve::to_csv({r});
  return kExitOk;
}

int run_tune(const SolveArgs& a) {
  const desolve::BenchmarkProblem& problem = desolve::get_problem(desolve::parse_problem_id(a.problem));
  const desolve::MethodSpec method = desolve::parse_method(a.method);
  const desolve::RunSpec spec = desolve::make_run_spec(problem.id, method);
  const desolve::TuningResult t = desolve::tune_hyperparameters(problem, method, a.n, spec);
  std::cout << describe(t.hp) << " score=" << desolve::format_double(t.score)
            << " candidates=" << t.candidates << "\n";
  return kExitOk;
}

int run_bench(const BenchArgs& a) {
  const desolve::RunSpec spec = desolve::parse_run_spec(read_file(a.spec));
  const auto format = a.format == "json" ? desolve::ReportFormat::json : desolve::ReportFormat::csv;
  const std::vector<desolve::ErrorReport> rows = desolve::run_benchmark(spec);
  desolve::emit_report(rows, format, a.out);
  if (!a.curves.empty()) desolve::emit_curves(rows, a.curves);
  for (const desolve::ErrorReport& r : rows) {
    std::printf("%s %s n=%d mse_test=%s converged=%s\n", r.problem.c_str(), r.method.c_str(), r.n_train,
                desolve::format_double(r.mse_test).c_str(), r.converged ? "true" : "false");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential equation solvers: TFC, LS-SVM and CSVM"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Solve one benchmark problem and print its error row");
  solve->add_option("--problem", solve_args.problem, "P1, P2, P3 or P4")->required();
  solve->add_option("--method", solve_args.method, "tfc, lssvm or csvm")->required();
  solve->add_option("--n", solve_args.n, "Training points (interior points for P4)")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* m_opt = solve->add_option("--m", solve_args.m, "Number of Chebyshev basis functions");
  auto* sigma_opt = solve->add_option("--sigma", solve_args.sigma, "Kernel bandwidth");
  auto* gamma_opt = solve->add_option("--gamma", solve_args.gamma, "Regularization");
  m_opt->excludes(sigma_opt)->excludes(gamma_opt);
  sigma_opt->needs(gamma_opt);
  gamma_opt->needs(sigma_opt);
  solve->add_option("--test-points", solve_args.test_points, "Test set size (0 = default)")
      ->check(CLI::NonNegativeNumber);

  SolveArgs tune_args;
  CLI::App* tune = app.add_subcommand("tune", "Tune hyperparameters for one problem and method");
  tune->add_option("--problem", tune_args.problem, "P1, P2, P3 or P4")->required();
  tune->add_option("--method", tune_args.method, "tfc, lssvm or csvm")->required();
  tune->add_option("--n", tune_args.n, "Training points (interior points for P4)")
      ->required()
      ->check(CLI::PositiveNumber);

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Run a benchmark sweep described by a JSON spec");
  bench->add_option("--spec", bench_args.spec, "Run spec (flat JSON)")->required();
  bench->add_option("--out", bench_args.out, "Report file")->required();
  bench->add_option("--format", bench_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--curves", bench_args.curves, "Directory for per-point error curves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*solve) return run_solve(solve_args);
    if (*tune) return run_tune(tune_args);
    return run_bench(bench_args);
  } catch (const desolve::Error& e) {
    std::cerr << "desolve: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "desolve: " << e.what() << "\n";
    return kExitInvalid;
  }
}
