// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mwlab/stats.hpp"

namespace mwlab {

inline constexpr const char* kCsvHeader =
    "study,param_name,param_value,gap,stderr,seed_count,t_final,m,N,p,q,extra";
inline constexpr const char* kTraceHeader = "t,node_id,value,series";
inline constexpr const char* kCodeVersion = "0.1.0";

struct StudyRow {
  std::string param_name;
  double param_value = 0.0;
  double gap = 0.0;
  double stderr_ = 0.0;
  std::size_t seed_count = 1;
  double t_final = 0.0;
  std::size_t m = 0;
  std::size_t N = 0;
  double p = 1.0;
  double q = 1.0;
  std::string extra;
};

struct TracePoint {
  double t = 0.0;
  std::size_t node_id = 0;
  double value = 0.0;
  std::string series;
};

struct StudyReport {
  std::string study;  // study kind, first CSV column
  std::string stem;   // output file stem
  std::vector<StudyRow> rows;
  std::optional<LogLogFit> fit;
  std::string fit_error;  // set when the fit was attempted and failed
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<TracePoint> traces;
};

// 17 significant digits; "inf"/"-inf"/"nan" for non-finite values.
std::string format_real(double v);

std::string render_csv(const StudyReport& report);
std::string render_traces(const StudyReport& report);
// Metadata sidecar; the timestamp is the only field that varies between runs.
std::string render_metadata(const StudyReport& report, bool with_timestamp = true);

struct WrittenFiles {
  std::string csv;
  std::string metadata;
  std::string traces;  // empty when the study has no traces
};

// Writes <dir>/<stem>.csv, <dir>/<stem>.metadata.json and, if present,
// <dir>/<stem>.traces.csv. Creates dir. IoError on failure.
WrittenFiles write_report(const StudyReport& report, const std::string& dir);

}  // namespace mwlab
