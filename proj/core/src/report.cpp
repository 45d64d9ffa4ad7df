#include "desolve/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string_view>

#include "json.hpp"

#include "desolve/error.hpp"

namespace desolve {

namespace {

using nlohmann::json;

bool same_double(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

bool same_optional(const std::optional<double>& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || same_double(*a, *b);
}

double parse_double(std::string_view text) {
  if (text == "nan" || text == "-nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(ErrorCode::invalid_argument, "report: not a number: '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(ErrorCode::invalid_argument, "report: not an integer: '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  fail(ErrorCode::invalid_argument, "report: not a boolean: '" + std::string(text) + "'");
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// JSON has no NaN or infinity; those are written as null.
json number(double value) {
  return std::isfinite(value) ? json(value) : json(nullptr);
}

double read_number(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) fail(ErrorCode::invalid_argument, std::string("report: '") + key + "' is not a number");
  return v.get<double>();
}

json to_record(const ErrorReport& r) {
  json j = json::object();
  j["problem"] = r.problem;
  j["method"] = r.method;
  j["n_train"] = r.n_train;
  j["train_time_s"] = number(r.train_time_s);
  j["max_err_train"] = number(r.max_err_train);
  j["mse_train"] = number(r.mse_train);
  j["max_err_test"] = number(r.max_err_test);
  j["mse_test"] = number(r.mse_test);
  j["hp_m"] = r.hp_m ? json(*r.hp_m) : json(nullptr);
  j["hp_sigma"] = r.hp_sigma ? number(*r.hp_sigma) : json(nullptr);
  j["hp_gamma"] = r.hp_gamma ? number(*r.hp_gamma) : json(nullptr);
  j["converged"] = r.converged;
  return j;
}

ErrorReport from_record(const json& j) {
  if (!j.is_object()) fail(ErrorCode::invalid_argument, "report: record is not an object");
  ErrorReport r;
  r.problem = j.at("problem").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.n_train = j.at("n_train").get<int>();
  r.train_time_s = read_number(j, "train_time_s");
  r.max_err_train = read_number(j, "max_err_train");
  r.mse_train = read_number(j, "mse_train");
  r.max_err_test = read_number(j, "max_err_test");
  r.mse_test = read_number(j, "mse_test");
  if (!j.at("hp_m").is_null()) r.hp_m = j.at("hp_m").get<int>();
  if (!j.at("hp_sigma").is_null()) r.hp_sigma = read_number(j, "hp_sigma");
  if (!j.at("hp_gamma").is_null()) r.hp_gamma = read_number(j, "hp_gamma");
  r.converged = j.at("converged").get<bool>();
  return r;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io_error, "cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::io_error, "failed writing '" + path.string() + "'");
}

}  // namespace

bool ErrorReport::same_record(const ErrorReport& other) const {
  return problem == other.problem && method == other.method && n_train == other.n_train &&
         same_double(train_time_s, other.train_time_s) &&
         same_double(max_err_train, other.max_err_train) &&
         same_double(mse_train, other.mse_train) &&
         same_double(max_err_test, other.max_err_test) &&
         same_double(mse_test, other.mse_test) && hp_m == other.hp_m &&
         same_optional(hp_sigma, other.hp_sigma) && same_optional(hp_gamma, other.hp_gamma) &&
         converged == other.converged;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) fail(ErrorCode::numeric_error, "format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

std::string to_csv(const std::vector<ErrorReport>& reports) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const ErrorReport& r : reports) {
    out << r.problem << ',' << r.method << ',' << r.n_train << ',' << format_double(r.train_time_s)
        << ',' << format_double(r.max_err_train) << ',' << format_double(r.mse_train) << ','
        << format_double(r.max_err_test) << ',' << format_double(r.mse_test) << ',';
    if (r.hp_m) out << *r.hp_m;
    out << ',';
    if (r.hp_sigma) out << format_double(*r.hp_sigma);
    out << ',';
    if (r.hp_gamma) out << format_double(*r.hp_gamma);
    out << ',' << (r.converged ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string to_json(const std::vector<ErrorReport>& reports) {
  json array = json::array();
  for (const ErrorReport& r : reports) array.push_back(to_record(r));
  return array.dump(2) + "\n";
}

std::vector<ErrorReport> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::invalid_argument, "report: empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) fail(ErrorCode::invalid_argument, "report: unexpected CSV header");

  std::vector<ErrorReport> reports;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 12) fail(ErrorCode::invalid_argument, "report: CSV row must have 12 fields");
    ErrorReport r;
    r.problem = std::string(f[0]);
    r.method = std::string(f[1]);
    r.n_train = parse_int(f[2]);
    r.train_time_s = parse_double(f[3]);
    r.max_err_train = parse_double(f[4]);
    r.mse_train = parse_double(f[5]);
    r.max_err_test = parse_double(f[6]);
    r.mse_test = parse_double(f[7]);
    if (!f[8].empty()) r.hp_m = parse_int(f[8]);
    if (!f[9].empty()) r.hp_sigma = parse_double(f[9]);
    if (!f[10].empty()) r.hp_gamma = parse_double(f[10]);
    r.converged = parse_bool(f[11]);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<ErrorReport> parse_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_argument, std::string("report: bad JSON: ") + e.what());
  }
  if (!doc.is_array()) fail(ErrorCode::invalid_argument, "report: JSON root must be an array");
  std::vector<ErrorReport> reports;
  try {
    for (const json& j : doc) reports.push_back(from_record(j));
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_argument, std::string("report: bad record: ") + e.what());
  }
  return reports;
}

void emit_report(const std::vector<ErrorReport>& reports, ReportFormat format,
                 const std::filesystem::path& path) {
  if (reports.empty()) fail(ErrorCode::invalid_argument, "emit_report: no reports");
  write_file(path, format == ReportFormat::csv ? to_csv(reports) : to_json(reports));
}

std::vector<std::filesystem::path> emit_curves(const std::vector<ErrorReport>& reports,
                                               const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) fail(ErrorCode::io_error, "cannot create '" + directory.string() + "': " + ec.message());

  std::vector<std::filesystem::path> written;
  for (const ErrorReport& r : reports) {
    if (r.curve.empty()) continue;
    const auto path = directory / (r.problem + "_" + r.method + "_" + std::to_string(r.n_train) + ".csv");
    std::ostringstream out;
    out << (r.two_dimensional ? "x,y,abs_error\n" : "t,abs_error\n");
    for (const CurvePoint& p : r.curve) {
      out << format_double(p.x) << ',';
      if (r.two_dimensional) out << format_double(p.y) << ',';
      out << format_double(p.abs_error) << '\n';
    }
    write_file(path, out.str());
    written.push_back(path);
  }
  return written;
}

}  // namespace desolve
