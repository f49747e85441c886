// SPDX-License-Identifier: Apache-2.0
#include "depthsep/report.hpp"

#include <cmath>

#include "depthsep/errors.hpp"
#include "depthsep/io.hpp"

#ifndef DEPTHSEP_VERSION
#define DEPTHSEP_VERSION "0.0.0"
#endif

namespace depthsep {

const char* tool_version() { return DEPTHSEP_VERSION; }

Json report_header(const std::string& command, Json config) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["tool"] = "depthsep";
  out["tool_version"] = tool_version();
  out["command"] = command;
  out["config"] = std::move(config);
  return out;
}

void put_log(Json& obj, const std::string& key, const LogNumber& v) {
  if (v.is_zero()) {
    obj[key + "_log_e"] = nullptr;
    obj[key + "_log_2"] = nullptr;
  } else {
    obj[key + "_log_e"] = v.log_abs;
    obj[key + "_log_2"] = v.log2_abs();
  }
  obj[key + "_sign"] = v.sign;
}

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void flatten(const Json& node, const std::string& path, std::string& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) flatten(value, path.empty() ? key : path + "." + key, out);
    return;
  }
  if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) flatten(node[i], path + "." + std::to_string(i), out);
    return;
  }
  std::string value;
  if (node.is_number_float()) {
    const double v = node.get<double>();
    value = std::isfinite(v) ? format_double(v) : "";
  } else if (node.is_string()) {
    value = node.get<std::string>();
  } else if (node.is_null()) {
    value = "";
  } else {
    value = node.dump();
  }
  out += csv_field(path) + "," + csv_field(value) + "\n";
}

}  // namespace

std::string render_csv(const Json& report) {
  std::string out = "path,value\n";
  flatten(report, "", out);
  return out;
}

std::string render(const Json& report, ReportFormat format) {
  return format == ReportFormat::json ? render_json(report) : render_csv(report);
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw DomainError("unknown report format '" + name + "' (expected json or csv)");
}

}  // namespace depthsep
