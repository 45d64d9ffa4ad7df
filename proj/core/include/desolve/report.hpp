#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace desolve {

/// |error| of a solution at one test point; y is unused for 1-D problems.
struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
  double abs_error = 0.0;
};

/// One benchmark row. The first twelve fields form the serialized schema; the
/// remaining members are in-memory diagnostics.
struct ErrorReport {
  std::string problem;
  std::string method;
  int n_train = 0;
  double train_time_s = 0.0;
  double max_err_train = 0.0;
  double mse_train = 0.0;
  double max_err_test = 0.0;
  double mse_test = 0.0;
  std::optional<int> hp_m;
  std::optional<double> hp_sigma;
  std::optional<double> hp_gamma;
  bool converged = true;

  double condition_estimate = 0.0;
  int iterations = 0;
  bool two_dimensional = false;
  std::vector<CurvePoint> curve;

  /// Compares the serialized fields only.
  bool same_record(const ErrorReport& other) const;
};

enum class ReportFormat { csv, json };

inline constexpr const char* kCsvHeader =
    "problem,method,n_train,train_time_s,max_err_train,mse_train,max_err_test,mse_test,hp_m,"
    "hp_sigma,hp_gamma,converged";

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

std::string to_csv(const std::vector<ErrorReport>& reports);
std::string to_json(const std::vector<ErrorReport>& reports);
std::vector<ErrorReport> parse_csv(const std::string& text);
std::vector<ErrorReport> parse_json(const std::string& text);

/// Writes the reports; throws io-error when the file cannot be written and
/// invalid-argument for an empty report list.
void emit_report(const std::vector<ErrorReport>& reports, ReportFormat format,
                 const std::filesystem::path& path);

/// One CSV per report named <problem>_<method>_<n>.csv with columns
/// t,abs_error (1-D) or x,y,abs_error (2-D). Returns the written paths.
std::vector<std::filesystem::path> emit_curves(const std::vector<ErrorReport>& reports,
                                               const std::filesystem::path& directory);

}  // namespace desolve
