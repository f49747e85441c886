// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>
#include <string>

#include "depthsep/special_fn.hpp"

namespace depthsep {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class ReportFormat { json, csv };

const char* tool_version();

/// {"schema_version", "tool", "tool_version", "command", "config"}; the caller
/// appends results.
Json report_header(const std::string& command, Json config);

/// Adds `<key>_log_e`, `<key>_log_2` and `<key>_sign` for a log-scale value.
void put_log(Json& obj, const std::string& key, const LogNumber& v);

/// Pretty-printed JSON with a trailing newline. Doubles use the shortest
/// decimal that reads back to the same value.
std::string render_json(const Json& report);

/// One "path,value" row per leaf, paths joined with '.', array elements by
/// index. Numbers are written with the same shortest round-trip rule as JSON.
std::string render_csv(const Json& report);

std::string render(const Json& report, ReportFormat format);
ReportFormat parse_report_format(const std::string& name);

}  // namespace depthsep
