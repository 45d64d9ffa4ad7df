#include "desolve/bench.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <tuple>

#include "json.hpp"

#include "desolve/csvm.hpp"
#include "desolve/error.hpp"
#include "desolve/lssvm.hpp"
#include "desolve/nelder_mead.hpp"
#include "desolve/tfc.hpp"

namespace desolve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view to_string(MethodVariant v) {
  switch (v) {
    case MethodVariant::any: return "any";
    case MethodVariant::linear: return "linear";
    case MethodVariant::nonlinear: return "nonlinear";
    case MethodVariant::pde: return "pde";
  }
  return "?";
}

KernelConfig kernel_config(const Hyperparameters& hp) {
  if (!hp.sigma || !hp.gamma) fail(ErrorCode::invalid_argument, "kernel methods need sigma and gamma");
  KernelConfig cfg{*hp.sigma, *hp.gamma};
  cfg.validate();
  return cfg;
}

int tfc_m(const Hyperparameters& hp) {
  if (!hp.m) fail(ErrorCode::invalid_argument, "tfc needs m");
  if (*hp.m < 1) fail(ErrorCode::invalid_argument, "m must be positive");
  return *hp.m;
}

double mse_against_exact(const BenchmarkProblem& problem, std::span<const double> t,
                         const std::vector<double>& y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double e = y[i] - analytic_solution(problem, t[i]);
    sum += e * e;
  }
  return sum / static_cast<double>(t.size());
}

double mse_against_exact(const BenchmarkProblem& problem, std::span<const Point2> p,
                         const std::vector<double>& z) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double e = z[i] - analytic_solution(problem, p[i].x, p[i].y);
    sum += e * e;
  }
  return sum / static_cast<double>(p.size());
}

// Smallest test set the solvers accept; tuning does not look at test errors.
constexpr int kTuningTestPoints1D = 2;
constexpr int kTuningTestPoints2D = 4;

int tuning_test_points(const BenchmarkProblem& problem) {
  return problem.is_pde() ? kTuningTestPoints2D : kTuningTestPoints1D;
}

double score_tfc(const BenchmarkProblem& problem, int n, int m) {
  const int tp = tuning_test_points(problem);
  if (problem.is_pde()) {
    const TfcResult r = solve_linear_pde_tfc(problem, n, m, tp);
    return tfc_residual_norm(r.solution, problem, validation_points_2d(n));
  }
  const std::vector<double> v = validation_points_1d(problem, n);
  if (problem.is_linear()) return tfc_residual_norm(solve_linear_ode_tfc(problem, n, m, tp).solution, problem, v);
  return tfc_residual_norm(solve_nonlinear_ode_tfc(problem, n, m, {}, tp).solution, problem, v);
}

double score_lssvm(const BenchmarkProblem& problem, int n, const KernelConfig& cfg) {
  const int tp = tuning_test_points(problem);
  if (problem.is_pde()) {
    const std::vector<Point2> v = validation_points_2d(n);
    return mse_against_exact(problem, v, evaluate_dual(solve_linear_pde_lssvm(problem, n, cfg, tp).solution, v));
  }
  const std::vector<double> v = validation_points_1d(problem, n);
  const LssvmResult r = problem.is_linear() ? solve_linear_ode_lssvm(problem, n, cfg, tp)
                                            : solve_nonlinear_ode_lssvm(problem, n, cfg, {}, tp);
  return mse_against_exact(problem, v, evaluate_dual(r.solution, v));
}

double score_csvm(const BenchmarkProblem& problem, int n, const KernelConfig& cfg) {
  const int tp = tuning_test_points(problem);
  if (problem.is_pde()) {
    const std::vector<Point2> v = validation_points_2d(n);
    return mse_against_exact(problem, v, evaluate_csvm(solve_pde_csvm(problem, n, cfg, tp).solution, v));
  }
  const std::vector<double> v = validation_points_1d(problem, n);
  const CsvmResult r = problem.is_linear() ? solve_linear_ode_csvm(problem, n, cfg, tp)
                                           : solve_nonlinear_ode_csvm(problem, n, cfg, {}, tp);
  return mse_against_exact(problem, v, evaluate_csvm(r.solution, v));
}

auto tie_key(const Hyperparameters& hp) {
  return std::make_tuple(hp.sigma.value_or(0.0), hp.gamma.value_or(0.0), hp.m.value_or(0));
}

ErrorReport failed_row(const BenchmarkProblem& problem, const MethodSpec& method, int n,
                       const Hyperparameters& hp) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ErrorReport r;
  r.problem = std::string(to_string(problem.id));
  r.method = std::string(to_string(method.method));
  r.n_train = n;
  r.train_time_s = nan;
  r.max_err_train = r.mse_train = r.max_err_test = r.mse_test = nan;
  r.hp_m = hp.m;
  r.hp_sigma = hp.sigma;
  r.hp_gamma = hp.gamma;
  r.converged = false;
  r.two_dimensional = problem.is_pde();
  return r;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size() / 2;
  return values.size() % 2 == 1 ? values[k] : 0.5 * (values[k - 1] + values[k]);
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::tfc: return "tfc";
    case Method::lssvm: return "lssvm";
    case Method::csvm: return "csvm";
  }
  return "?";
}

MethodSpec parse_method(std::string_view text) {
  const std::string s = lower(text);
  const std::size_t dash = s.find('-');
  const std::string base = s.substr(0, dash);
  MethodSpec out;
  if (base == "tfc") {
    out.method = Method::tfc;
  } else if (base == "lssvm") {
    out.method = Method::lssvm;
  } else if (base == "csvm") {
    out.method = Method::csvm;
  } else {
    fail(ErrorCode::invalid_argument, "unknown method '" + std::string(text) + "'");
  }
  if (dash != std::string::npos) {
    const std::string variant = s.substr(dash + 1);
    if (variant == "linear") {
      out.variant = MethodVariant::linear;
    } else if (variant == "nonlinear") {
      out.variant = MethodVariant::nonlinear;
    } else if (variant == "pde") {
      out.variant = MethodVariant::pde;
    } else {
      fail(ErrorCode::invalid_argument, "unknown method variant '" + std::string(text) + "'");
    }
  }
  return out;
}

bool supports(const MethodSpec& method, const BenchmarkProblem& problem) {
  switch (method.variant) {
    case MethodVariant::any: return true;
    case MethodVariant::linear: return problem.is_linear() && !problem.is_pde();
    case MethodVariant::nonlinear: return !problem.is_linear();
    case MethodVariant::pde: return problem.is_pde();
  }
  return false;
}

std::string_view to_string(TuningMode mode) {
  switch (mode) {
    case TuningMode::grid: return "grid";
    case TuningMode::simplex: return "simplex";
    case TuningMode::fixed: return "fixed";
  }
  return "?";
}

TuningMode parse_tuning_mode(std::string_view text) {
  const std::string s = lower(text);
  if (s == "grid") return TuningMode::grid;
  if (s == "simplex") return TuningMode::simplex;
  if (s == "fixed") return TuningMode::fixed;
  fail(ErrorCode::invalid_argument, "unknown tuning mode '" + std::string(text) + "'");
}

std::vector<int> default_point_counts(const BenchmarkProblem& problem) {
  if (problem.is_pde()) return {9, 16, 36, 64, 100};
  return {8, 16, 32, 50, 100};
}

RunSpec make_run_spec(ProblemId problem_id, MethodSpec method) {
  const BenchmarkProblem& problem = get_problem(problem_id);
  RunSpec spec;
  spec.problem = problem_id;
  spec.method = method;
  spec.point_counts = default_point_counts(problem);
  spec.tuning = (method.method != Method::tfc && !problem.is_linear()) ? TuningMode::simplex
                                                                         : TuningMode::grid;
  return spec;
}

void validate(const RunSpec& spec) {
  const BenchmarkProblem& problem = get_problem(spec.problem);
  if (!supports(spec.method, problem)) {
    fail(ErrorCode::invalid_argument,
         std::string(to_string(spec.method.method)) + "-" + std::string(to_string(spec.method.variant)) +
             " cannot solve " + std::string(to_string(spec.problem)));
  }
  if (spec.point_counts.empty()) fail(ErrorCode::invalid_argument, "point_counts is empty");
  for (int n : spec.point_counts) {
    if (n < 1) fail(ErrorCode::invalid_argument, "point counts must be positive");
  }
  if (spec.test_points < 0) fail(ErrorCode::invalid_argument, "test_points must be nonnegative");
  if (spec.repetitions < 1) fail(ErrorCode::invalid_argument, "repetitions must be positive");

  const bool tfc = spec.method.method == Method::tfc;
  const Hyperparameters& hp = spec.fixed;
  if (spec.tuning == TuningMode::fixed) {
    if (tfc) {
      if (!hp.m || hp.sigma || hp.gamma) fail(ErrorCode::invalid_argument, "fixed tfc tuning takes m only");
      tfc_m(hp);
    } else {
      if (hp.m) fail(ErrorCode::invalid_argument, "kernel methods take sigma and gamma, not m");
      kernel_config(hp);
    }
  } else {
    if (hp.m || hp.sigma || hp.gamma) {
      fail(ErrorCode::invalid_argument, "m, sigma and gamma are only allowed with fixed tuning");
    }
    if (spec.tuning == TuningMode::simplex && tfc) {
      fail(ErrorCode::invalid_argument, "simplex tuning applies to kernel methods only");
    }
  }
}

RunSpec parse_run_spec(const std::string& json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_argument, std::string("run spec: bad JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::invalid_argument, "run spec must be a JSON object");

  static const std::vector<std::string> known = {"problem", "method", "point_counts", "tuning", "m",
                                                 "sigma", "gamma", "seed", "test_points", "repetitions"};
  for (const auto& item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      fail(ErrorCode::invalid_argument, "run spec: unknown key '" + item.key() + "'");
    }
  }
  if (!doc.contains("problem") || !doc.contains("method")) {
    fail(ErrorCode::invalid_argument, "run spec needs 'problem' and 'method'");
  }

  try {
    RunSpec spec = make_run_spec(parse_problem_id(doc.at("problem").get<std::string>()),
                                 parse_method(doc.at("method").get<std::string>()));
    if (doc.contains("point_counts")) spec.point_counts = doc.at("point_counts").get<std::vector<int>>();
    if (doc.contains("m")) spec.fixed.m = doc.at("m").get<int>();
    if (doc.contains("sigma")) spec.fixed.sigma = doc.at("sigma").get<double>();
    if (doc.contains("gamma")) spec.fixed.gamma = doc.at("gamma").get<double>();
    if (doc.contains("tuning")) {
      spec.tuning = parse_tuning_mode(doc.at("tuning").get<std::string>());
    } else if (spec.fixed.m || spec.fixed.sigma || spec.fixed.gamma) {
      spec.tuning = TuningMode::fixed;
    }
    if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("test_points")) spec.test_points = doc.at("test_points").get<int>();
    if (doc.contains("repetitions")) spec.repetitions = doc.at("repetitions").get<int>();
    validate(spec);
    return spec;
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_argument, std::string("run spec: ") + e.what());
  }
}

std::vector<int> tfc_m_candidates(const BenchmarkProblem& problem, int n) {
  int cap = kTfcMaxM;
  if (problem.is_pde()) {
    const int side = square_grid_side(n);
    while (cap > 1 && cap * (cap + 1) / 2 > side * side) --cap;
  } else {
    cap = std::min(cap, n + 1);
  }
  std::vector<int> out;
  for (int m = std::min(kTfcMinM, cap); m <= cap; ++m) out.push_back(m);
  return out;
}

std::vector<double> sigma_grid() {
  std::vector<double> out;
  for (int k = 0; k < 13; ++k) out.push_back(std::pow(10.0, -2.0 + 0.25 * k));
  return out;
}

std::vector<double> gamma_grid() {
  std::vector<double> out;
  for (int k = 0; k < 16; ++k) out.push_back(std::pow(10.0, 5.0 + k));
  return out;
}

std::vector<double> validation_points_1d(const BenchmarkProblem& problem, int n) {
  return midpoints(svm_training_points(problem, n));
}

std::vector<Point2> validation_points_2d(int n_interior) {
  const int side = square_grid_side(n_interior);
  return tensor_grid(midpoints(make_collocation_grid(side - 1, 0.0, 1.0).t_points));
}

double validation_score(const BenchmarkProblem& problem, const MethodSpec& method, int n,
                        const Hyperparameters& hp) {
  try {
    double score = kInf;
    switch (method.method) {
      case Method::tfc: score = score_tfc(problem, n, tfc_m(hp)); break;
      case Method::lssvm: score = score_lssvm(problem, n, kernel_config(hp)); break;
      case Method::csvm: score = score_csvm(problem, n, kernel_config(hp)); break;
    }
    return std::isfinite(score) ? score : kInf;
  } catch (const NumericError&) {
    return kInf;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::singular_jacobian || e.code() == ErrorCode::numeric_error) return kInf;
    throw;
  }
}

TuningResult tune_over(const BenchmarkProblem& problem, const MethodSpec& method, int n,
                       const std::vector<Hyperparameters>& candidates) {
  if (candidates.empty()) fail(ErrorCode::invalid_argument, "no tuning candidates");
  TuningResult best;
  best.score = kInf;
  bool found = false;
  for (const Hyperparameters& hp : candidates) {
    const double s = validation_score(problem, method, n, hp);
    ++best.candidates;
    if (!std::isfinite(s)) continue;
    if (!found || s < best.score || (s == best.score && tie_key(hp) < tie_key(best.hp))) {
      best.hp = hp;
      best.score = s;
      found = true;
    }
  }
  if (!found) fail(ErrorCode::tuning_failure, "every tuning candidate failed");
  return best;
}

TuningResult tune_hyperparameters(const BenchmarkProblem& problem, const MethodSpec& method,
                                  int n, const RunSpec& spec) {
  if (!supports(method, problem)) fail(ErrorCode::invalid_argument, "method cannot solve this problem");
  if (spec.tuning == TuningMode::fixed) return TuningResult{spec.fixed, 0.0, 0};

  if (method.method == Method::tfc) {
    if (spec.tuning == TuningMode::simplex) {
      fail(ErrorCode::invalid_argument, "simplex tuning applies to kernel methods only");
    }
    std::vector<Hyperparameters> candidates;
    for (int m : tfc_m_candidates(problem, n)) candidates.push_back({m, std::nullopt, std::nullopt});
    return tune_over(problem, method, n, candidates);
  }

  if (spec.tuning == TuningMode::grid) {
    std::vector<Hyperparameters> candidates;
    for (double sigma : sigma_grid()) {
      for (double gamma : gamma_grid()) candidates.push_back({std::nullopt, sigma, gamma});
    }
    return tune_over(problem, method, n, candidates);
  }

  int evaluations = 0;
  const auto objective = [&](const Eigen::VectorXd& x) {
    ++evaluations;
    if (!(x[0] > 0.0)) return kInf;
    return validation_score(problem, method, n, {std::nullopt, x[0], kSimplexGamma});
  };
  const SimplexResult r =
      nelder_mead_minimize(objective, Eigen::VectorXd::Constant(1, kSimplexStartSigma));
  if (!std::isfinite(r.value)) fail(ErrorCode::tuning_failure, "simplex found no finite objective");
  return TuningResult{{std::nullopt, r.x[0], kSimplexGamma}, r.value, evaluations};
}

ErrorReport solve_once(const BenchmarkProblem& problem, const MethodSpec& method, int n,
                       const Hyperparameters& hp, int test_points) {
  if (!supports(method, problem)) fail(ErrorCode::invalid_argument, "method cannot solve this problem");
  switch (method.method) {
    case Method::tfc: {
      const int m = tfc_m(hp);
      if (problem.is_pde()) return solve_linear_pde_tfc(problem, n, m, test_points).report;
      if (problem.is_linear()) return solve_linear_ode_tfc(problem, n, m, test_points).report;
      return solve_nonlinear_ode_tfc(problem, n, m, {}, test_points).report;
    }
    case Method::lssvm: {
      const KernelConfig cfg = kernel_config(hp);
      if (problem.is_pde()) return solve_linear_pde_lssvm(problem, n, cfg, test_points).report;
      if (problem.is_linear()) return solve_linear_ode_lssvm(problem, n, cfg, test_points).report;
      return solve_nonlinear_ode_lssvm(problem, n, cfg, {}, test_points).report;
    }
    case Method::csvm: {
      const KernelConfig cfg = kernel_config(hp);
      if (problem.is_pde()) return solve_pde_csvm(problem, n, cfg, test_points).report;
      if (problem.is_linear()) return solve_linear_ode_csvm(problem, n, cfg, test_points).report;
      return solve_nonlinear_ode_csvm(problem, n, cfg, {}, test_points).report;
    }
  }
  fail(ErrorCode::invalid_argument, "unknown method");
}

std::vector<ErrorReport> run_benchmark(const RunSpec& spec) {
  validate(spec);
  const BenchmarkProblem& problem = get_problem(spec.problem);
  std::vector<ErrorReport> rows;
  for (int n : spec.point_counts) {
    Hyperparameters hp = spec.tuning == TuningMode::fixed ? spec.fixed : Hyperparameters{};
    try {
      hp = tune_hyperparameters(problem, spec.method, n, spec).hp;
      std::vector<double> times;
      ErrorReport row;
      for (int rep = 0; rep < spec.repetitions; ++rep) {
        row = solve_once(problem, spec.method, n, hp, spec.test_points);
        times.push_back(row.train_time_s);
      }
      row.train_time_s = median(times);
      rows.push_back(std::move(row));
    } catch (const Error&) {
      rows.push_back(failed_row(problem, spec.method, n, hp));
    }
  }
  return rows;
}

}  // namespace desolve
