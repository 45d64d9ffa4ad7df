#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "desolve/bench.hpp"
#include "desolve/problems.hpp"
#include "desolve/report.hpp"
#include "expect_error.hpp"

using namespace desolve;
namespace fs = std::filesystem;

namespace {

ErrorReport sample_row(bool tfc) {
  ErrorReport r;
  r.problem = "P1";
  r.method = tfc ? "tfc" : "lssvm";
  r.n_train = 16;
  r.train_time_s = 0.00123;
  r.max_err_train = 2.220446049250313e-16;
  r.mse_train = 1.0 / 3.0;
  r.max_err_test = 1e-300;
  r.mse_test = 4.9406564584124654e-324;
  if (tfc) {
    r.hp_m = 26;
  } else {
    r.hp_sigma = 0.1 + 0.2;
    r.hp_gamma = 2.154e13;
  }
  r.converged = !tfc;
  return r;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("desolve_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<double> curve_column(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  std::vector<double> out;
  while (std::getline(in, line)) out.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  return out;
}

}  // namespace

TEST(Report, CsvHeaderAndEmptyColumns) {
  const std::string csv = to_csv({sample_row(true)});
  const std::string header = csv.substr(0, csv.find('\n'));
  EXPECT_EQ(header,
            "problem,method,n_train,train_time_s,max_err_train,mse_train,max_err_test,mse_test,hp_m,"
            "hp_sigma,hp_gamma,converged");
  const std::string row = csv.substr(csv.find('\n') + 1);
  EXPECT_NE(row.find(",26,,,false"), std::string::npos) << row;
}

TEST(Report, CsvRoundTrip) {
  const std::vector<ErrorReport> rows = {sample_row(true), sample_row(false)};
  const std::vector<ErrorReport> back = parse_csv(to_csv(rows));
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_TRUE(rows[i].same_record(back[i]));
  EXPECT_EQ(*back[1].hp_sigma, 0.1 + 0.2);
}

TEST(Report, JsonRoundTrip) {
  std::vector<ErrorReport> rows = {sample_row(true), sample_row(false)};
  rows[1].mse_test = std::numeric_limits<double>::quiet_NaN();
  const std::vector<ErrorReport> back = parse_json(to_json(rows));
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_TRUE(rows[i].same_record(back[i]));
}

TEST(Report, ShortestRoundTripFormatting) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e10), "1e+10");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Report, RejectsMalformedCsv) {
  EXPECT_DESOLVE_ERROR(parse_csv("problem,method\nP1,tfc\n"), ErrorCode::invalid_argument);
  const std::string csv = to_csv({sample_row(true)});
  EXPECT_DESOLVE_ERROR(parse_csv(csv + "P1,tfc,3\n"), ErrorCode::invalid_argument);
}

TEST(Report, EmitWritesFileAndRejectsBadPath) {
  const fs::path dir = scratch_dir("emit");
  emit_report({sample_row(false)}, ReportFormat::json, dir / "rows.json");
  EXPECT_TRUE(parse_json(slurp(dir / "rows.json"))[0].same_record(sample_row(false)));
  EXPECT_DESOLVE_ERROR(emit_report({sample_row(false)}, ReportFormat::csv, dir / "missing" / "x.csv"),
                       ErrorCode::io_error);
  EXPECT_DESOLVE_ERROR(emit_report({}, ReportFormat::csv, dir / "empty.csv"), ErrorCode::invalid_argument);
}

TEST(RunSpecParsing, AcceptsFlatSpec) {
  const RunSpec spec = parse_run_spec(R"({"problem": "P1", "method": "tfc", "point_counts": [16, 100], "m": 26})");
  EXPECT_EQ(spec.problem, ProblemId::P1);
  EXPECT_EQ(spec.method.method, Method::tfc);
  EXPECT_EQ(spec.tuning, TuningMode::fixed);
  EXPECT_EQ(spec.fixed.m, 26);
  EXPECT_EQ(spec.point_counts, (std::vector<int>{16, 100}));
}

TEST(RunSpecParsing, DefaultsFollowProblem) {
  const RunSpec ode = parse_run_spec(R"({"problem": "P2", "method": "csvm"})");
  EXPECT_EQ(ode.tuning, TuningMode::simplex);
  EXPECT_EQ(ode.point_counts, (std::vector<int>{8, 16, 32, 50, 100}));
  const RunSpec pde = parse_run_spec(R"({"problem": "P4", "method": "lssvm"})");
  EXPECT_EQ(pde.tuning, TuningMode::grid);
  EXPECT_EQ(pde.point_counts, (std::vector<int>{9, 16, 36, 64, 100}));
}

TEST(RunSpecParsing, RejectsInvalidSpecs) {
  EXPECT_DESOLVE_ERROR(parse_run_spec(R"({"problem": "P1", "method": "tfc", "colour": 1})"),
                       ErrorCode::invalid_argument);
  EXPECT_DESOLVE_ERROR(parse_run_spec(R"({"problem": "P2", "method": "lssvm-linear"})"),
                       ErrorCode::invalid_argument);
  EXPECT_DESOLVE_ERROR(parse_run_spec(R"({"problem": "P1", "method": "csvm-pde"})"), ErrorCode::invalid_argument);
  EXPECT_DESOLVE_ERROR(parse_run_spec(R"({"problem": "P1", "method": "tfc", "point_counts": []})"),
                       ErrorCode::invalid_argument);
  EXPECT_DESOLVE_ERROR(parse_run_spec(R"({"problem": "P1", "method": "tfc", "sigma": 1.0})"),
                       ErrorCode::invalid_argument);
  EXPECT_DESOLVE_ERROR(parse_run_spec(R"({"problem": "P1", "method": "lssvm", "sigma": 1.0})"),
                       ErrorCode::invalid_argument);
  EXPECT_DESOLVE_ERROR(parse_run_spec("not json"), ErrorCode::invalid_argument);
}

TEST(Tuning, SingleCandidateGridReturnsIt) {
  const BenchmarkProblem& p = get_problem(ProblemId::P1);
  const MethodSpec lssvm = parse_method("lssvm");
  const Hyperparameters only{std::nullopt, 0.5, 1e8};
  const TuningResult r = tune_over(p, lssvm, 16, {only});
  EXPECT_EQ(r.hp.sigma, 0.5);
  EXPECT_EQ(r.hp.gamma, 1e8);
  EXPECT_EQ(r.candidates, 1);
}

TEST(Tuning, AllFailingCandidatesRaise) {
  const BenchmarkProblem p = make_linear_ode_problem(
      {0.0, 1.0}, [](double) { return 1.0; },
      [](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0);
  const MethodSpec tfc = parse_method("tfc");
  EXPECT_DESOLVE_ERROR(tune_over(p, tfc, 16, {Hyperparameters{8, std::nullopt, std::nullopt}}),
                       ErrorCode::tuning_failure);
  EXPECT_DESOLVE_ERROR(tune_over(get_problem(ProblemId::P1), tfc, 16, {Hyperparameters{1, std::nullopt, std::nullopt}}),
                       ErrorCode::invalid_argument);
}

TEST(Tuning, FirstProblemGridIsNearExhaustiveOptimum) {
  const BenchmarkProblem& p = get_problem(ProblemId::P1);
  const MethodSpec lssvm = parse_method("lssvm");
  const TuningResult chosen = tune_hyperparameters(p, lssvm, 100, make_run_spec(ProblemId::P1, lssvm));
  // Exhaustive oracle on a grid three times denser in each log-axis.
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 36; ++i) {
    for (int j = 0; j <= 45; ++j) {
      const Hyperparameters hp{std::nullopt, std::pow(10.0, -2.0 + i / 12.0), std::pow(10.0, 5.0 + j / 3.0)};
      best = std::min(best, validation_score(p, lssvm, 100, hp));
    }
  }
  ASSERT_TRUE(std::isfinite(best));
  EXPECT_LE(chosen.score, 10 * best);
}

TEST(Tuning, SecondProblemSimplexBandwidth) {
  // Reference bandwidth for N = 100 under the simplex search.
  const BenchmarkProblem& p = get_problem(ProblemId::P2);
  const MethodSpec lssvm = parse_method("lssvm");
  const TuningResult r = tune_hyperparameters(p, lssvm, 100, make_run_spec(ProblemId::P2, lssvm));
  ASSERT_TRUE(r.hp.sigma.has_value());
  EXPECT_EQ(r.hp.gamma, 1e10);
  EXPECT_NEAR(*r.hp.sigma, 4.853e-1, 0.25 * 4.853e-1);
}

TEST(Tuning, TfcCandidatesRespectGrid) {
  const std::vector<int> small = tfc_m_candidates(get_problem(ProblemId::P1), 8);
  EXPECT_EQ(small.front(), kTfcMinM);
  EXPECT_EQ(small.back(), 9);
  const std::vector<int> large = tfc_m_candidates(get_problem(ProblemId::P1), 100);
  EXPECT_EQ(large.back(), kTfcMaxM);
  EXPECT_EQ(sigma_grid().size(), 13u);
  EXPECT_EQ(gamma_grid().size(), 16u);
  EXPECT_EQ(gamma_grid().back(), 1e20);
}

TEST(Benchmark, FixedTfcRow) {
  RunSpec spec = parse_run_spec(R"({"problem": "P1", "method": "tfc", "point_counts": [100], "m": 26})");
  const std::vector<ErrorReport> rows = run_benchmark(spec);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_LE(rows[0].mse_test, 1e-28);
  EXPECT_EQ(rows[0].hp_m, 26);
  EXPECT_TRUE(rows[0].converged);
}

TEST(Benchmark, FixedCsvmPdeRow) {
  const RunSpec spec = parse_run_spec(
      R"({"problem": "P4", "method": "csvm", "point_counts": [100], "sigma": 0.8891, "gamma": 1e14, "repetitions": 1})");
  const std::vector<ErrorReport> rows = run_benchmark(spec);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_LE(rows[0].mse_test, 1e-13);
}

TEST(Benchmark, DeterministicApartFromTiming) {
  const RunSpec spec =
      parse_run_spec(R"({"problem": "P3", "method": "lssvm", "point_counts": [8, 16], "repetitions": 1})");
  const std::vector<ErrorReport> a = run_benchmark(spec);
  const std::vector<ErrorReport> b = run_benchmark(spec);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ErrorReport x = a[i];
    x.train_time_s = b[i].train_time_s;
    EXPECT_TRUE(x.same_record(b[i]));
  }
}

TEST(Benchmark, FailedRowDoesNotAbortSweep) {
  RunSpec spec = make_run_spec(ProblemId::P1, parse_method("tfc"));
  spec.point_counts = {2, 16};
  spec.tuning = TuningMode::fixed;
  spec.fixed.m = 1;
  spec.repetitions = 1;
  const std::vector<ErrorReport> rows = run_benchmark(spec);
  ASSERT_EQ(rows.size(), 2u);
  for (const ErrorReport& r : rows) {
    EXPECT_FALSE(r.converged);
    EXPECT_TRUE(std::isnan(r.mse_test));
  }
}

TEST(Benchmark, TfcErrorShrinksAcrossSweep) {
  const RunSpec spec =
      parse_run_spec(R"({"problem": "P3", "method": "tfc", "point_counts": [8, 100], "repetitions": 1})");
  const std::vector<ErrorReport> rows = run_benchmark(spec);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_LE(rows[1].mse_test, rows[0].mse_test);
}

TEST(Benchmark, AccuracyGainCurve) {
  const BenchmarkProblem& p = get_problem(ProblemId::P1);
  std::vector<ErrorReport> rows;
  rows.push_back(solve_once(p, parse_method("lssvm"), 100, {std::nullopt, 3.162e-1, 2.154e13}));
  rows.push_back(solve_once(p, parse_method("tfc"), 100, {26, std::nullopt, std::nullopt}));
  const fs::path dir = scratch_dir("curves");
  const std::vector<fs::path> files = emit_curves(rows, dir);
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(files[0].filename(), "P1_lssvm_100.csv");
  EXPECT_EQ(slurp(files[1]).substr(0, 12), "t,abs_error\n");
  const std::vector<double> svm = curve_column(files[0]);
  const std::vector<double> tfc = curve_column(files[1]);
  ASSERT_EQ(svm.size(), tfc.size());
  std::size_t gained = 0;
  for (std::size_t i = 0; i < svm.size(); ++i) {
    if (svm[i] > 1e3 * tfc[i]) ++gained;
  }
  EXPECT_GE(static_cast<double>(gained), 0.9 * static_cast<double>(svm.size()));
}
