// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "collabflow/engine.hpp"
#include "collabflow/indicators.hpp"
#include "collabflow/metamodel.hpp"
#include "collabflow/observation.hpp"
#include "collabflow/regulation.hpp"

namespace collabflow {

struct Arrival {
  DefinitionId definition;
  SimTime at = 0;
  std::map<ObjectClass, ObjectId> bindings;
};

struct VotesConfig {
  enum class Mode { Fixed, Random };
  Mode mode = Mode::Fixed;
  std::map<ActorId, bool> fixed;
  double p_yes = 1.0;  // Random mode
};

struct ScenarioConfig {
  std::string name;
  std::uint64_t seed = 0;
  SimTime horizon = 0;
  SimTime session_gap = kDefaultSessionGap;
  std::int64_t regulation_cadence = 50;  // run a cycle every N collected events; 0 = never
  std::vector<ObjectClass> object_classes;
  std::vector<Actor> actors;
  std::vector<Role> roles;
  std::vector<BusinessObject> objects;
  std::vector<ProcessDefinition> definitions;
  WeightFunction weights;
  double collaborative_cutoff = 0.0;
  std::vector<Indicator> indicators;
  std::vector<Rule> rules;
  Regulator regulator;
  VotesConfig votes;
  std::set<DefinitionId> monitored;  // the rest form the control group
  std::vector<Arrival> workload;
  std::map<ActivityKind, DurationDistribution> durations;
};

/// Cross-reference and invariant checks over a whole configuration, including
/// validate_definition on every definition. Empty means runnable.
std::vector<ValidationFault> validate_config(const ScenarioConfig& config);

/// The indicators a run evaluates: all of them except those scoped to an
/// unmonitored (control) process.
std::vector<Indicator> monitored_indicators(const ScenarioConfig& config);

struct ProcessReport {
  DefinitionId id;
  bool monitored = false;
  std::int64_t revision_initial = 0;
  std::int64_t revision_final = 0;
  int instances = 0;
  int stalled = 0;
  SimTime makespan_total = 0;
  SimTime makespan_max = 0;
  double makespan_mean = 0.0;
  std::int64_t validation_events = 0;
  std::int64_t total_events = 0;
  std::map<std::string, std::int64_t> events_by_kind;
};

struct DeltaRow {
  ObjectId object;
  double value = 0.0;
  bool selected = false;
};

struct IndicatorRow {
  Indicator indicator;
  IndicatorValue value;
  bool breached = false;
};

struct RunReport {
  std::string config_name;
  std::uint64_t seed = 0;
  SimTime horizon = 0;
  std::int64_t total_events = 0;
  std::map<std::string, std::int64_t> events_by_kind;
  double collaborative_cutoff = 0.0;
  std::vector<DeltaRow> delta_c;                 // every configured object, by id
  std::vector<ObjectId> collaborative_objects;   // the selection at the cutoff
  std::vector<IndicatorRow> indicators;          // end-of-run evaluation
  std::vector<CycleReport> cycles;
  std::vector<ProcessReport> processes;          // by id
  int instances_total = 0;
};

struct RunResult {
  RunReport report;
  std::shared_ptr<TraceStore> trace;
  DefinitionStore definitions;  // final revisions
  RoleTable roles;
  ObjectStore objects;
};

/// The request-for-proposal case: three chained sub-processes (technical
/// design, internal RFPs, response construction) run monitored next to an
/// identical unmonitored control group.
ScenarioConfig build_rfp_case();

/// Deterministic single run: workload to horizon, observation agents over the
/// trace, indicator evaluation for monitored processes, regulation cycles at
/// the configured cadence.
RunResult run(const ScenarioConfig& config);

/// Replaces the config's definitions with the store's latest revisions
/// (second-pass runs on regulated definitions).
ScenarioConfig with_definitions(ScenarioConfig config, const DefinitionStore& defs);

}  // namespace collabflow
