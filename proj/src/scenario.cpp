// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "collabflow/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "collabflow/errors.hpp"

namespace collabflow {

// ---------------------------------------------------------------------------
// validate_config
// ---------------------------------------------------------------------------

namespace {

void check_unique(std::set<std::string>& seen, const std::string& id, const char* what,
                  std::vector<ValidationFault>& faults) {
  if (!seen.insert(id).second)
    faults.push_back({FaultCode::DuplicateId, id, std::string(what) + " id appears twice"});
}

}  // namespace

std::vector<ValidationFault> validate_config(const ScenarioConfig& config) {
  std::vector<ValidationFault> faults;
  auto fault = [&](FaultCode code, const std::string& element, const std::string& message) {
    faults.push_back({code, element, message});
  };

  std::set<ObjectClass> classes(config.object_classes.begin(), config.object_classes.end());
  RoleTable roles;
  std::set<std::string> seen_roles, seen_actors, seen_objects, seen_defs, seen_inds, seen_rules;

  for (const auto& r : config.roles) {
    check_unique(seen_roles, r.id, "role", faults);
    roles[r.id] = r;
    for (const auto& right : r.rights)
      if (!classes.count(right.object_class))
        fault(FaultCode::DanglingReference, r.id,
              "right on undeclared class '" + right.object_class + "'");
  }

  std::set<ActorId> actor_ids;
  for (const auto& a : config.actors) {
    check_unique(seen_actors, a.id, "actor", faults);
    actor_ids.insert(a.id);
    if (a.role_ids.empty())
      fault(FaultCode::BadValue, a.id, "actor must hold at least one role");
    for (const auto& rid : a.role_ids)
      if (!roles.count(rid))
        fault(FaultCode::DanglingReference, a.id, "actor role '" + rid + "' does not resolve");
  }

  std::map<ObjectId, ObjectClass> object_classes_by_id;
  for (const auto& o : config.objects) {
    check_unique(seen_objects, o.id, "object", faults);
    object_classes_by_id[o.id] = o.object_class;
    if (!classes.count(o.object_class))
      fault(FaultCode::DanglingReference, o.id,
            "object class '" + o.object_class + "' is not declared");
    if (o.version < 0) fault(FaultCode::BadValue, o.id, "version must be non-negative");
  }

  std::map<DefinitionId, const ProcessDefinition*> defs;
  for (const auto& d : config.definitions) {
    check_unique(seen_defs, d.id, "definition", faults);
    defs[d.id] = &d;
    for (auto f : validate_definition(d, roles)) faults.push_back(std::move(f));
    for (const auto& act : d.activities)
      for (const auto& cls : {act.inputs, act.outputs})
        for (const auto& c : cls)
          if (!classes.count(c))
            fault(FaultCode::DanglingReference, act.id,
                  "activity references undeclared class '" + c + "'");
  }

  for (const auto& id : config.monitored)
    if (!defs.count(id))
      fault(FaultCode::DanglingReference, id, "monitored process is not defined");

  for (std::size_t i = 0; i < config.workload.size(); ++i) {
    const auto& arrival = config.workload[i];
    const std::string where = "workload[" + std::to_string(i) + "]";
    auto def_it = defs.find(arrival.definition);
    if (def_it == defs.end()) {
      fault(FaultCode::DanglingReference, where,
            "arrival references unknown definition '" + arrival.definition + "'");
      continue;
    }
    if (arrival.at < 0) fault(FaultCode::BadValue, where, "arrival time must be >= 0");
    for (const auto& [cls, oid] : arrival.bindings) {
      auto obj = object_classes_by_id.find(oid);
      if (obj == object_classes_by_id.end())
        fault(FaultCode::DanglingReference, where, "binding to unknown object '" + oid + "'");
      else if (obj->second != cls)
        fault(FaultCode::BadValue, where,
              "object '" + oid + "' is not of class '" + cls + "'");
    }
    // Every class the definition touches must be bound so a run cannot die
    // halfway through an instance.
    for (const auto& act : def_it->second->activities)
      for (const auto& cls : {act.inputs, act.outputs})
        for (const auto& c : cls)
          if (!arrival.bindings.count(c))
            fault(FaultCode::DanglingReference, where,
                  "no binding for class '" + c + "' used by activity '" + act.id + "'");
  }

  if (config.weights.weights.empty())
    fault(FaultCode::BadValue, "weights", "weight function needs at least one criterion");
  for (const auto& [criterion, alpha] : config.weights.weights)
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
      fault(FaultCode::BadValue, criterion, "weight must be finite and non-negative");
  if (!std::isfinite(config.collaborative_cutoff))
    fault(FaultCode::BadValue, "collaborative_cutoff", "cutoff must be finite");

  for (const auto& ind : config.indicators) {
    check_unique(seen_inds, ind.id, "indicator", faults);
    if (ind.objective.empty())
      fault(FaultCode::BadValue, ind.id, "indicator objective must not be empty");
    if (!std::isfinite(ind.threshold.value))
      fault(FaultCode::BadValue, ind.id, "threshold must be finite");
    if (ind.window && *ind.window <= 0)
      fault(FaultCode::BadValue, ind.id, "window span must be positive");
    if (!scope_kind_allowed(ind.calculation.kind, ind.calculation.scope.kind))
      fault(FaultCode::BadValue, ind.id,
            "scope kind '" + to_string(ind.calculation.scope.kind) +
                "' does not fit indicator kind '" + to_string(ind.calculation.kind) + "'");
  }

  // Rule ACTION targets are deliberately not cross-checked: a target that no
  // longer resolves (e.g. an activity removed by an earlier regulation pass)
  // is a normal runtime condition handled by the adaptation phase.
  std::map<IndicatorId, std::set<int>> priorities;
  for (const auto& rule : config.rules) {
    check_unique(seen_rules, rule.id, "rule", faults);
    const bool indicator_known =
        std::any_of(config.indicators.begin(), config.indicators.end(),
                    [&](const Indicator& i) { return i.id == rule.indicator_id; });
    if (!indicator_known)
      fault(FaultCode::DanglingReference, rule.id,
            "rule references unknown indicator '" + rule.indicator_id + "'");
    if (!priorities[rule.indicator_id].insert(rule.priority).second)
      fault(FaultCode::DuplicateId, rule.id,
            "priority " + std::to_string(rule.priority) + " reused on indicator '" +
                rule.indicator_id + "'");
  }

  const auto& policy = config.regulator.acceptance_policy;
  if (policy.kind == PolicyKind::Quorum && (policy.quorum <= 0.0 || policy.quorum > 1.0))
    fault(FaultCode::BadValue, config.regulator.id, "quorum must lie in (0, 1]");
  for (const auto& s : policy.stakeholders) {
    if (!actor_ids.count(s))
      fault(FaultCode::DanglingReference, config.regulator.id,
            "stakeholder '" + s + "' is not an actor");
    if (policy.kind != PolicyKind::Auto && config.votes.mode == VotesConfig::Mode::Fixed &&
        !config.votes.fixed.count(s))
      fault(FaultCode::DanglingReference, config.regulator.id,
            "no fixed vote for stakeholder '" + s + "'");
  }

  if (config.horizon < 0) fault(FaultCode::BadValue, "horizon", "horizon must be >= 0");
  if (config.regulation_cadence < 0)
    fault(FaultCode::BadValue, "regulation_cadence", "cadence must be >= 0");
  if (config.session_gap < 0)
    fault(FaultCode::BadValue, "session_gap", "session gap must be >= 0");
  for (const auto& [kind, dist] : config.durations) {
    if (dist.kind == DurationDistribution::Kind::Uniform && (dist.min > dist.max || dist.min < 0))
      fault(FaultCode::BadValue, to_string(kind), "uniform duration needs 0 <= min <= max");
    if (dist.kind == DurationDistribution::Kind::Fixed && dist.value < 0)
      fault(FaultCode::BadValue, to_string(kind), "fixed duration must be >= 0");
  }

  return faults;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string instance_name(std::size_t n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "i-%04zu", n);
  return buf;
}

std::map<ActorId, bool> draw_votes(const ScenarioConfig& config, std::mt19937_64& rng) {
  if (config.votes.mode == VotesConfig::Mode::Fixed) return config.votes.fixed;
  std::map<ActorId, bool> votes;
  for (const auto& s : config.regulator.acceptance_policy.stakeholders)
    votes[s] = (rng() >> 11) * 0x1.0p-53 < config.votes.p_yes;
  return votes;
}

struct ActiveInstance {
  ProcessInstance instance;
  std::mt19937_64 rng;
  SimTime arrived = 0;
};

}  // namespace

// Indicators tied to an unmonitored process are not evaluated; object-scoped
// and global ones are process-agnostic and stay.
std::vector<Indicator> monitored_indicators(const ScenarioConfig& config) {
  auto in_monitored = [&](const Indicator& ind) {
    const auto& scope = ind.calculation.scope;
    switch (scope.kind) {
      case ScopeKind::Object:
      case ScopeKind::Global:
        return true;
      case ScopeKind::Process:
        return config.monitored.count(scope.id) > 0;
      case ScopeKind::Activity:
        for (const auto& def : config.definitions)
          if (def.find_activity(scope.id)) return config.monitored.count(def.id) > 0;
        return true;
    }
    return true;
  };
  std::vector<Indicator> out;
  for (const auto& ind : config.indicators)
    if (in_monitored(ind)) out.push_back(ind);
  return out;
}

RunResult run(const ScenarioConfig& config) {
  auto faults = validate_config(config);
  if (!faults.empty())
    throw ConfigError("configuration invalid: " + faults.front().str() +
                      (faults.size() > 1
                           ? " (+" + std::to_string(faults.size() - 1) + " more)"
                           : ""));

  RunResult result;
  result.trace = std::make_shared<TraceStore>();
  TraceStore& store = *result.trace;
  for (const auto& r : config.roles) result.roles[r.id] = r;
  for (const auto& o : config.objects) result.objects[o.id] = o;
  for (const auto& d : config.definitions) result.definitions.add(d);

  RunPolicy policy;
  for (const auto& a : config.actors) policy.actors[a.id] = a;
  policy.durations = config.durations;

  const std::vector<Indicator> active_indicators = monitored_indicators(config);

  RegulationContext ctx{&result.definitions, &result.roles, config.monitored};
  std::mt19937_64 vote_rng(splitmix64(config.seed ^ 0x766f7465ULL));  // "vote"

  // Arrivals inside the horizon, stably ordered by time.
  std::vector<const Arrival*> arrivals;
  for (const auto& a : config.workload)
    if (a.at <= config.horizon) arrivals.push_back(&a);
  std::stable_sort(arrivals.begin(), arrivals.end(),
                   [](const Arrival* a, const Arrival* b) { return a->at < b->at; });

  std::map<InstanceId, ActiveInstance> active;
  std::map<DefinitionId, std::vector<SimTime>> makespans;
  std::map<DefinitionId, int> instances_started, instances_stalled;
  std::size_t next_arrival = 0;
  std::size_t spawned = 0;
  SimTime now = 0;
  std::uint64_t cycle_count = 0;
  std::int64_t next_cycle_at =
      config.regulation_cadence > 0 ? config.regulation_cadence : -1;
  std::vector<CycleReport> cycles;

  auto maybe_cycle = [&]() {
    while (next_cycle_at > 0 && static_cast<std::int64_t>(store.size()) >= next_cycle_at) {
      ++cycle_count;
      auto votes = draw_votes(config, vote_rng);
      auto report = regulation_cycle(active_indicators, config.rules, config.regulator,
                                     votes, ctx, store, now,
                                     "cyc" + std::to_string(cycle_count) + "/");
      next_cycle_at += config.regulation_cadence;
      if (!report.cases.empty()) cycles.push_back(std::move(report));
    }
  };

  auto retire_if_done = [&](const InstanceId& id) {
    auto it = active.find(id);
    if (it == active.end()) return;
    auto& inst = it->second.instance;
    if (!inst.enabled().empty()) return;
    const DefinitionId def_id = inst.definition->id;
    if (inst.all_completed()) {
      makespans[def_id].push_back(inst.clock - it->second.arrived);
    } else {
      for (auto& [aid, st] : inst.activity_states)
        if (st != ActivityState::Completed) st = ActivityState::Skipped;
      instances_stalled[def_id] += 1;
    }
    active.erase(it);
  };

  for (;;) {
    // Next step: the earliest arrival or the runnable instance with the
    // smallest clock (ties to the arrival, then to the lowest instance id).
    const ActiveInstance* best = nullptr;
    InstanceId best_id;
    for (const auto& [id, a] : active) {
      if (a.instance.enabled().empty()) continue;
      if (!best || a.instance.clock < best->instance.clock) {
        best = &a;
        best_id = id;
      }
    }
    const bool arrival_due =
        next_arrival < arrivals.size() &&
        (!best || arrivals[next_arrival]->at <= best->instance.clock);

    if (arrival_due) {
      const Arrival& arrival = *arrivals[next_arrival++];
      ++spawned;
      const InstanceId id = instance_name(spawned);
      ActiveInstance entry;
      entry.rng.seed(splitmix64(config.seed + 0x9e37 * spawned));
      entry.arrived = arrival.at;
      entry.instance = instantiate(result.definitions.latest(arrival.definition),
                                   arrival.bindings, arrival.at, id, store);
      instances_started[arrival.definition] += 1;
      now = std::max(now, arrival.at);
      active.emplace(id, std::move(entry));
      retire_if_done(id);  // a definition with no runnable entry stalls at once
      maybe_cycle();
      continue;
    }
    if (!best) break;

    auto& entry = active.at(best_id);
    auto& inst = entry.instance;
    const ActivityId aid = inst.enabled().front();
    const Activity* act = inst.definition->find_activity(aid);
    const Actor& actor = policy.pick_actor(*act, entry.rng);
    const SimTime duration = policy.draw_duration(*act, entry.rng);
    try {
      perform(inst, aid, actor, result.roles, result.objects, duration, store);
      now = std::max(now, inst.clock);
    } catch (const AccessDeniedError&) {
      // The denial is on the trace; the activity cannot run under this
      // configuration, so it is skipped and the instance winds down.
      inst.activity_states[aid] = ActivityState::Skipped;
    }
    retire_if_done(best_id);
    maybe_cycle();
  }

  // Structuring agent pass: sessions, labels, write-back annotations.
  structure(store, config.session_gap);

  // ---- report ----
  RunReport& report = result.report;
  report.config_name = config.name;
  report.seed = config.seed;
  report.horizon = config.horizon;
  report.collaborative_cutoff = config.collaborative_cutoff;
  report.cycles = std::move(cycles);
  report.instances_total = static_cast<int>(spawned);

  const std::size_t n = store.size();
  report.total_events = static_cast<std::int64_t>(n);
  std::map<DefinitionId, std::map<std::string, std::int64_t>> per_process_kind;
  for (Seq s = 0; s < n; ++s) {
    const auto& ev = store.at(s).event;
    report.events_by_kind[to_string(ev.kind)] += 1;
    if (!ev.process_id.empty()) per_process_kind[ev.process_id][to_string(ev.kind)] += 1;
  }

  std::map<ObjectId, ObjectUsageStats> all_stats;
  for (const auto& o : config.objects) all_stats[o.id] = compute_stats(store, o.id);
  for (const auto& [oid, stats] : all_stats) {
    const double value = delta_c(config.weights, stats);
    report.delta_c.push_back({oid, value, value >= config.collaborative_cutoff});
  }
  report.collaborative_objects =
      select_collaborative_objects(config.weights, all_stats, config.collaborative_cutoff);

  for (const auto& ind : active_indicators) {
    IndicatorRow row;
    row.indicator = ind;
    row.value = evaluate(ind.calculation, store, resolve_window(ind, store));
    row.value.indicator_id = ind.id;
    row.breached = threshold_crossed(ind.threshold, row.value);
    report.indicators.push_back(std::move(row));
  }

  for (const auto& d : config.definitions) {
    ProcessReport pr;
    pr.id = d.id;
    pr.monitored = config.monitored.count(d.id) > 0;
    pr.revision_initial = d.revision;
    pr.revision_final = result.definitions.latest(d.id)->revision;
    pr.instances = instances_started[d.id];
    pr.stalled = instances_stalled[d.id];
    for (SimTime m : makespans[d.id]) {
      pr.makespan_total += m;
      pr.makespan_max = std::max(pr.makespan_max, m);
    }
    if (!makespans[d.id].empty())
      pr.makespan_mean = static_cast<double>(pr.makespan_total) /
                         static_cast<double>(makespans[d.id].size());
    pr.events_by_kind = per_process_kind[d.id];
    for (const auto& [kind, count] : pr.events_by_kind) pr.total_events += count;
    auto vr = pr.events_by_kind.find(to_string(EngineEventKind::ValidationRequested));
    pr.validation_events = vr == pr.events_by_kind.end() ? 0 : vr->second;
    report.processes.push_back(std::move(pr));
  }
  std::sort(report.processes.begin(), report.processes.end(),
            [](const ProcessReport& a, const ProcessReport& b) { return a.id < b.id; });

  return result;
}

ScenarioConfig with_definitions(ScenarioConfig config, const DefinitionStore& defs) {
  for (auto& d : config.definitions)
    if (defs.contains(d.id)) d = *defs.latest(d.id);
  return config;
}

}  // namespace collabflow
