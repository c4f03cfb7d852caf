#include "symcap/report.hpp"

#include <cstdio>
#include <sstream>

namespace symcap {

namespace {

nlohmann::json canonical(const ReportDocument& doc) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = doc.command;
  j["body"] = doc.body;
  j["seed"] = doc.seed;
  j["n_samples"] = doc.n_samples;
  j["results"] = doc.results;
  j["version"] = doc.version;
  return j;
}

void flatten(const nlohmann::json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

}  // namespace

std::uint64_t determinism_hash(const ReportDocument& doc) {
  const std::string text = canonical(doc).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

nlohmann::json to_json(const ReportDocument& doc) {
  nlohmann::json j = canonical(doc);
  j["timing_ms"] = doc.timing_ms;
  if (!doc.timing_detail.is_null()) j["timing_detail"] = doc.timing_detail;
  j["determinism_hash"] = hex64(determinism_hash(doc));
  return j;
}

nlohmann::json to_json(const EstimatorResult& r) {
  return {{"estimate", r.estimate},     {"std_error", r.std_error},   {"n_samples", r.n_samples},
          {"seed", r.seed},             {"confidence", r.confidence}, {"half_width", r.half_width()}};
}

void add_plot_point(ReportDocument& doc, const std::string& series, double x, double y, double y_err) {
  doc.results["plot"].push_back({{"series", series}, {"x", x}, {"y", y}, {"y_err", y_err}});
}

std::string to_csv(const ReportDocument& doc) {
  std::ostringstream out;
  out << "# symcap csv schema " << kCsvSchemaVersion << " command=" << doc.command << " seed=" << doc.seed
      << " hash=" << hex64(determinism_hash(doc)) << '\n';
  if (doc.results.contains("plot")) {
    out << "series,x,y,y_err\n";
    for (const auto& p : doc.results["plot"])
      out << p["series"].get<std::string>() << ',' << p["x"].dump() << ',' << p["y"].dump() << ','
          << p["y_err"].dump() << '\n';
  } else {
    out << "path,value\n";
    flatten(doc.results, "", out);
  }
  return out.str();
}

}  // namespace symcap
