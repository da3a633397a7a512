// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "collabflow/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "collabflow/errors.hpp"
#include "collabflow/json_io.hpp"
#include "collabflow/scenario.hpp"

namespace collabflow::cli {

namespace fs = std::filesystem;

namespace {

Json parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error("'" + path + "' is not valid JSON: " + e.what());
  }
}

void load_trace_file(const std::string& path, TraceStore& store) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  load_trace_jsonl(in, store);
}

/// An indicator spec is either a full scenario configuration or a bare
/// document carrying "indicators" (plus optional weights and cutoff).
struct IndicatorSpec {
  std::vector<Indicator> indicators;
  std::optional<WeightFunction> weights;
  double cutoff = 0.0;
  std::vector<ObjectId> objects;  // delta universe; empty -> trace objects
};

IndicatorSpec load_indicator_spec(const Json& j) {
  IndicatorSpec spec;
  if (j.contains("workload") || j.contains("definitions")) {
    ScenarioConfig config = config_from_json(j);
    spec.indicators = monitored_indicators(config);
    if (!config.weights.weights.empty()) {
      spec.weights = config.weights;
      spec.cutoff = config.collaborative_cutoff;
      for (const auto& o : config.objects) spec.objects.push_back(o.id);
    }
    return spec;
  }
  ScenarioConfig bare;  // reuse the config parser for the shared sections
  Json wrapper = j;
  wrapper["seed"] = 0;
  wrapper["horizon"] = 0;
  bare = config_from_json(wrapper);
  spec.indicators = bare.indicators;
  if (!bare.weights.weights.empty()) {
    spec.weights = bare.weights;
    spec.cutoff = bare.collaborative_cutoff;
  }
  return spec;
}

std::vector<IndicatorRow> evaluate_rows(const std::vector<Indicator>& indicators,
                                        const TraceStore& store,
                                        std::optional<SimTime> window_override) {
  std::vector<IndicatorRow> rows;
  for (const auto& ind : indicators) {
    Indicator effective = ind;
    if (window_override) effective.window = *window_override;
    IndicatorRow row;
    row.indicator = effective;
    row.value = evaluate(effective.calculation, store, resolve_window(effective, store));
    row.value.indicator_id = effective.id;
    row.breached = threshold_crossed(effective.threshold, row.value);
    rows.push_back(std::move(row));
  }
  return rows;
}

Json rows_to_json(const std::vector<IndicatorRow>& rows) {
  // Mirrors the "indicators" section of a run report so offline evaluation
  // can be compared field by field.
  RunReport shim;
  shim.indicators = rows;
  return to_json(shim)["indicators"];
}

}  // namespace

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

int cmd_validate(const std::string& config_path, std::ostream& out, std::ostream& err) {
  ScenarioConfig config;
  try {
    config = config_from_json(parse_file(config_path));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  auto faults = validate_config(config);
  if (faults.empty()) {
    out << "ok: " << config.name << " (" << config.definitions.size() << " definitions, "
        << config.workload.size() << " arrivals)\n";
    return kExitOk;
  }
  for (const auto& f : faults) out << "fault: " << f.str() << '\n';
  out << faults.size() << " fault(s)\n";
  return kExitValidation;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override, std::ostream& out,
            std::ostream& err) {
  ScenarioConfig config;
  try {
    config = config_from_json(parse_file(config_path));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  if (seed_override) config.seed = *seed_override;

  auto faults = validate_config(config);
  if (!faults.empty()) {
    for (const auto& f : faults) out << "fault: " << f.str() << '\n';
    return kExitValidation;
  }

  try {
    RunResult result = run(config);

    fs::create_directories(out_dir);
    std::ostringstream trace;
    write_trace_jsonl(*result.trace, trace);
    write_file_atomic(fs::path(out_dir) / "trace.jsonl", trace.str());
    write_file_atomic(fs::path(out_dir) / "report.json",
                      to_json(result.report).dump(2) + "\n");
    write_file_atomic(fs::path(out_dir) / "comparison.csv", comparison_csv(result.report));
    // The resolved configuration travels with the artifacts, unless that would
    // overwrite the input file itself.
    const auto config_copy = fs::path(out_dir) / "config.json";
    std::error_code ec;
    if (!fs::exists(config_copy, ec) || !fs::equivalent(config_copy, config_path, ec))
      write_file_atomic(config_copy, to_json(config).dump(2) + "\n");

    int breaches = 0;
    for (const auto& row : result.report.indicators)
      if (row.breached) ++breaches;
    int mutations = 0;
    for (const auto& cycle : result.report.cycles)
      mutations += cycle.definition_mutations;
    out << "run: " << config.name << " seed=" << config.seed << " events="
        << result.report.total_events << " instances=" << result.report.instances_total
        << " breached=" << breaches << " definition_mutations=" << mutations << '\n';
    out << "wrote " << (fs::path(out_dir) / "trace.jsonl").string() << ", report.json, "
        << "comparison.csv, config.json\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

// ---------------------------------------------------------------------------
// indicators
// ---------------------------------------------------------------------------

int cmd_indicators(const std::string& trace_path, const std::string& spec_path,
                   const std::optional<std::string>& out_path,
                   std::optional<SimTime> window_override, const std::string& format,
                   std::ostream& out, std::ostream& err) {
  try {
    TraceStore store;
    load_trace_file(trace_path, store);
    IndicatorSpec spec = load_indicator_spec(parse_file(spec_path));

    auto rows = evaluate_rows(spec.indicators, store, window_override);
    for (const auto& row : rows) {
      const auto& scope = row.indicator.calculation.scope;
      if (scope.kind != ScopeKind::Global && store.size() > 0) {
        // Unknown scopes still evaluate (to zero), but deserve a warning.
        bool seen = false;
        for (Seq s = 0; s < store.size() && !seen; ++s) {
          const auto& ev = store.at(s).event;
          seen = (scope.kind == ScopeKind::Object && ev.object_id &&
                  *ev.object_id == scope.id) ||
                 (scope.kind == ScopeKind::Activity && ev.activity_id &&
                  *ev.activity_id == scope.id) ||
                 (scope.kind == ScopeKind::Process && ev.process_id == scope.id);
        }
        if (!seen)
          err << "warning: scope '" << scope.id << "' of indicator '" << row.indicator.id
              << "' never appears in the trace\n";
      }
    }

    Json doc;
    doc["trace"] = trace_path;
    doc["events"] = store.size();
    doc["indicators"] = rows_to_json(rows);
    if (spec.weights) {
      std::map<ObjectId, ObjectUsageStats> stats;
      if (spec.objects.empty()) {
        for (const auto& oid : objects_in(store)) stats[oid] = compute_stats(store, oid);
      } else {
        for (const auto& oid : spec.objects) stats[oid] = compute_stats(store, oid);
      }
      Json delta{{"cutoff", spec.cutoff}};
      delta["objects"] = Json::array();
      for (const auto& [oid, st] : stats) {
        const double value = delta_c(*spec.weights, st);
        delta["objects"].push_back(Json{
            {"object", oid}, {"value", value}, {"selected", value >= spec.cutoff}});
      }
      delta["selected"] = select_collaborative_objects(*spec.weights, stats, spec.cutoff);
      doc["delta_c"] = delta;
    }

    std::string rendered =
        format == "csv" ? indicators_csv(rows) : doc.dump(2) + "\n";
    out << rendered;
    if (out_path) write_file_atomic(*out_path, rendered);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

// ---------------------------------------------------------------------------
// replay
// ---------------------------------------------------------------------------

int cmd_replay(const std::string& trace_path, std::ostream& out, std::ostream& err) {
  try {
    TraceStore store;
    load_trace_file(trace_path, store);
    auto sequences = reconstruct_emerging(store);
    for (const auto& [instance, activities] : sequences) {
      out << instance << ':';
      for (const auto& a : activities) out << ' ' << a;
      out << '\n';
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

// ---------------------------------------------------------------------------
// case
// ---------------------------------------------------------------------------

int cmd_emit_case(const std::string& out_path, std::ostream& out, std::ostream& err) {
  try {
    write_file_atomic(out_path, to_json(build_rfp_case()).dump(2) + "\n");
    out << "wrote " << out_path << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace collabflow::cli
