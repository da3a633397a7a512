// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "collabflow/scenario.hpp"

namespace collabflow {

// All documents use insertion-ordered JSON so serialized field order is fixed.
using Json = nlohmann::ordered_json;

Json to_json(const ScenarioConfig& config);
ScenarioConfig config_from_json(const Json& j);  // throws ConfigError

Json to_json(const EngineEvent& event);
EngineEvent event_from_json(const Json& j);

/// One event per line: seq, at, kind, instance, process, activity, actor,
/// object, version, detail, annotations. Absent optionals are omitted.
Json to_json(const TraceEvent& event);
void write_trace_jsonl(const TraceStore& store, std::ostream& out);
void load_trace_jsonl(std::istream& in, TraceStore& store);  // throws ConfigError

Json to_json(const RunReport& report);
Json to_json(const IndicatorValue& value);
Json to_json(const CycleReport& cycle);

/// The monitored-vs-control table: one row per process plus group totals.
std::string comparison_csv(const RunReport& report);
std::string indicators_csv(const std::vector<IndicatorRow>& rows);

/// Write-temp-then-rename; parent directories must exist.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace collabflow
