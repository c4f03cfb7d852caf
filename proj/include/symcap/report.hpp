#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "symcap/family.hpp"
#include "symcap/stats.hpp"

namespace symcap {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;
inline constexpr int kCsvSchemaVersion = 1;

struct ReportDocument {
  std::string command;
  /// Spec echo; null for multi-body commands, which echo specs per result.
  nlohmann::json body;
  std::uint64_t seed = 0;
  std::int64_t n_samples = 0;
  nlohmann::json results = nlohmann::json::object();
  std::int64_t timing_ms = 0;
  /// Per-step wall times; excluded from the determinism hash like timing_ms.
  nlohmann::json timing_detail;
  std::string version = kVersion;
};

/// 64-bit FNV-1a over the canonical dump of every field except the timings.
std::uint64_t determinism_hash(const ReportDocument& doc);
std::string hex64(std::uint64_t x);

/// Full document including schema_version and determinism_hash.
nlohmann::json to_json(const ReportDocument& doc);

/// {"estimate", "std_error", "n_samples", "seed", "confidence", "half_width"}
nlohmann::json to_json(const EstimatorResult& r);

/// Appends an (x, y, y_err) triple to results.plot under `series`.
void add_plot_point(ReportDocument& doc, const std::string& series, double x, double y, double y_err);

/// Flattened projection. With plot data: series,x,y,y_err rows. Otherwise one
/// path,value row per scalar leaf of results.
std::string to_csv(const ReportDocument& doc);

}  // namespace symcap
