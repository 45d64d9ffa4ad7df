#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "desolve/grid.hpp"
#include "desolve/problems.hpp"
#include "desolve/report.hpp"

namespace desolve {

enum class Method { tfc, lssvm, csvm };

/// Restricts a method to one problem class. "lssvm-linear" is the linear ODE
/// LS-SVM, "csvm-pde" the Poisson CSVM, and so on.
enum class MethodVariant { any, linear, nonlinear, pde };

struct MethodSpec {
  Method method = Method::tfc;
  MethodVariant variant = MethodVariant::any;
};

std::string_view to_string(Method method);

/// Accepts tfc, lssvm, csvm, optionally suffixed by -linear, -nonlinear or
/// -pde (case-insensitive).
MethodSpec parse_method(std::string_view text);

/// True when the method variant can solve the problem.
bool supports(const MethodSpec& method, const BenchmarkProblem& problem);

enum class TuningMode { grid, simplex, fixed };

std::string_view to_string(TuningMode mode);
TuningMode parse_tuning_mode(std::string_view text);

struct Hyperparameters {
  std::optional<int> m;
  std::optional<double> sigma;
  std::optional<double> gamma;
};

struct RunSpec {
  ProblemId problem = ProblemId::P1;
  MethodSpec method;
  std::vector<int> point_counts;
  TuningMode tuning = TuningMode::grid;
  Hyperparameters fixed;
  std::uint64_t seed = 0;
  /// 0 selects the default test set (1000 points, or 33 x 33 on the square).
  int test_points = 0;
  int repetitions = 5;
};

/// Default sweep sizes: 8, 16, 32, 50, 100 for ODEs and 9, 16, 36, 64, 100
/// interior points for the PDE.
std::vector<int> default_point_counts(const BenchmarkProblem& problem);

/// Spec with per-problem defaults for the sweep sizes and the tuning mode
/// (simplex for the SVM methods on the nonlinear problem, grid otherwise).
RunSpec make_run_spec(ProblemId problem, MethodSpec method);

/// Checks point counts, method/problem compatibility and that fixed tuning
/// carries the values the method needs. Throws invalid-argument.
void validate(const RunSpec& spec);

/// Parses a flat JSON object with keys problem, method, point_counts, tuning,
/// m, sigma, gamma, seed, test_points, repetitions. Unknown keys are rejected.
/// The result is validated.
RunSpec parse_run_spec(const std::string& json_text);

inline constexpr double kSimplexGamma = 1e10;
inline constexpr double kSimplexStartSigma = 0.4;
inline constexpr int kTfcMinM = 5;
inline constexpr int kTfcMaxM = 40;

/// Candidate grids searched by tune_hyperparameters.
std::vector<int> tfc_m_candidates(const BenchmarkProblem& problem, int n);
std::vector<double> sigma_grid();
std::vector<double> gamma_grid();

/// Validation abscissae: midpoints of the training grid (cell centers of the
/// tensor grid for the PDE).
std::vector<double> validation_points_1d(const BenchmarkProblem& problem, int n);
std::vector<Point2> validation_points_2d(int n_interior);

struct TuningResult {
  Hyperparameters hp;
  /// Validation MSE (SVMs) or residual norm (TFC) of the selected candidate.
  double score = 0.0;
  int candidates = 0;
};

/// Score of one candidate: DE residual norm at the validation points for TFC,
/// validation MSE against the exact solution for LS-SVM and CSVM. Returns
/// +infinity when the solve fails.
double validation_score(const BenchmarkProblem& problem, const MethodSpec& method, int n,
                        const Hyperparameters& hp);

/// Grid search over explicit candidates; ties go to the smaller sigma, then
/// the smaller gamma, then the smaller m. Throws tuning-failure when every
/// score is non-finite.
TuningResult tune_over(const BenchmarkProblem& problem, const MethodSpec& method, int n,
                       const std::vector<Hyperparameters>& candidates);

/// Selects hyperparameters according to spec.tuning: the fixed values, a grid
/// search, or a simplex search over sigma with gamma = 1e10 started at 0.4.
TuningResult tune_hyperparameters(const BenchmarkProblem& problem, const MethodSpec& method,
                                  int n, const RunSpec& spec);

/// Solves once with the given hyperparameters and returns the filled report.
ErrorReport solve_once(const BenchmarkProblem& problem, const MethodSpec& method, int n,
                       const Hyperparameters& hp, int test_points = 0);

/// Runs the sweep. Each row records the median training time over
/// spec.repetitions solves; a failing row is reported with converged = false
/// and NaN errors instead of aborting the sweep.
std::vector<ErrorReport> run_benchmark(const RunSpec& spec);

}  // namespace desolve
