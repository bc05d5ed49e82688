// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "mwlab/error.hpp"

namespace mwlab {
namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json json_real(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_csv(const StudyReport& report) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const StudyRow& r : report.rows) {
    out += report.study;
    out += ',' + r.param_name;
    out += ',' + format_real(r.param_value);
    out += ',' + format_real(r.gap);
    out += ',' + format_real(r.stderr_);
    out += ',' + std::to_string(r.seed_count);
    out += ',' + format_real(r.t_final);
    out += ',' + std::to_string(r.m);
    out += ',' + std::to_string(r.N);
    out += ',' + format_real(r.p);
    out += ',' + format_real(r.q);
    out += ',' + r.extra;
    out += '\n';
  }
  return out;
}

std::string render_traces(const StudyReport& report) {
  std::string out = kTraceHeader;
  out += '\n';
  for (const TracePoint& p : report.traces) {
    out += format_real(p.t);
    out += ',' + std::to_string(p.node_id);
    out += ',' + format_real(p.value);
    out += ',' + p.series;
    out += '\n';
  }
  return out;
}

std::string render_metadata(const StudyReport& report, bool with_timestamp) {
  nlohmann::json j = report.metadata;
  j["study"] = report.study;
  j["stem"] = report.stem;
  j["code_version"] = kCodeVersion;
  j["row_count"] = report.rows.size();
  j["csv_header"] = kCsvHeader;
  if (report.fit) {
    j["fit"] = {{"slope", json_real(report.fit->slope)},
                {"intercept", json_real(report.fit->intercept)},
                {"residual", json_real(report.fit->residual)},
                {"used_rows", report.fit->used_rows},
                {"warnings", report.fit->warnings}};
  } else {
    j["fit"] = nullptr;
  }
  if (!report.fit_error.empty()) j["fit_error"] = report.fit_error;
  if (with_timestamp) j["generated_at"] = utc_timestamp();
  return j.dump(2) + "\n";
}

WrittenFiles write_report(const StudyReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  const fs::path base(dir);
  WrittenFiles files;
  files.csv = (base / (report.stem + ".csv")).string();
  files.metadata = (base / (report.stem + ".metadata.json")).string();
  write_file(files.csv, render_csv(report));
  write_file(files.metadata, render_metadata(report));
  if (!report.traces.empty()) {
    files.traces = (base / (report.stem + ".traces.csv")).string();
    write_file(files.traces, render_traces(report));
  }
  return files;
}

}  // namespace mwlab
