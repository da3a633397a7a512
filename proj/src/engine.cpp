// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "collabflow/engine.hpp"

#include <algorithm>

namespace collabflow {

std::string to_string(ActivityState s) {
  switch (s) {
    case ActivityState::Pending: return "pending";
    case ActivityState::Enabled: return "enabled";
    case ActivityState::Running: return "running";
    case ActivityState::Completed: return "completed";
    case ActivityState::Skipped: return "skipped";
  }
  return "?";
}

std::vector<ActivityId> ProcessInstance::enabled() const {
  std::vector<ActivityId> out;
  for (const auto& [id, st] : activity_states)
    if (st == ActivityState::Enabled) out.push_back(id);
  return out;  // map iteration is already ascending
}

bool ProcessInstance::all_completed() const {
  return std::all_of(activity_states.begin(), activity_states.end(),
                     [](const auto& kv) { return kv.second == ActivityState::Completed; });
}

ActivityState ProcessInstance::state_of(const ActivityId& id) const {
  auto it = activity_states.find(id);
  return it == activity_states.end() ? ActivityState::Pending : it->second;
}

// ---------------------------------------------------------------------------
// instantiate
// ---------------------------------------------------------------------------

namespace {

/// Structural-core checks: enough to execute, less than full validation
/// (which also needs the role table and the one-start rule).
void require_executable(const ProcessDefinition& def) {
  if (def.activities.empty())
    throw DefinitionInvalidError("definition '" + def.id + "' has no activities");
  if (def.structuring == Structuring::Emerging)
    throw DefinitionInvalidError("emerging definition '" + def.id +
                                 "' supports reconstruction only, not execution");
  for (const auto& t : def.transitions) {
    if (t.from == t.to)
      throw DefinitionInvalidError("self loop on '" + t.from + "'");
    if (!def.find_activity(t.from) || !def.find_activity(t.to))
      throw DefinitionInvalidError("transition endpoint does not resolve");
  }
  for (const auto& tr : def.triggers)
    if (!def.find_activity(tr.activity))
      throw DefinitionInvalidError("trigger target does not resolve");
  if (def.structuring == Structuring::Mechanistic) {
    // Cycle check via repeated in-degree elimination.
    std::map<ActivityId, int> indeg;
    for (const auto& a : def.activities) indeg[a.id] = 0;
    for (const auto& t : def.transitions) ++indeg[t.to];
    std::vector<ActivityId> ready;
    for (const auto& [id, d] : indeg)
      if (d == 0) ready.push_back(id);
    std::size_t visited = 0;
    while (!ready.empty()) {
      auto cur = ready.back();
      ready.pop_back();
      ++visited;
      for (const auto& t : def.transitions)
        if (t.from == cur && --indeg[t.to] == 0) ready.push_back(t.to);
    }
    if (visited != def.activities.size())
      throw DefinitionInvalidError("definition '" + def.id + "' contains a cycle");
  }
}

std::vector<ActivityId> initially_enabled(const ProcessDefinition& def) {
  std::vector<ActivityId> out;
  if (def.structuring == Structuring::Mechanistic) {
    for (const auto& a : def.activities)
      if (def.predecessors(a.id).empty()) out.push_back(a.id);
  } else {
    for (const auto& a : def.activities)
      if (a.entry) out.push_back(a.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

EngineEvent make_event(const ProcessInstance& instance, EngineEventKind kind, SimTime at) {
  EngineEvent ev;
  ev.kind = kind;
  ev.instance_id = instance.id;
  ev.process_id = instance.definition->id;
  ev.at = at;
  return ev;
}

}  // namespace

ProcessInstance instantiate(std::shared_ptr<const ProcessDefinition> def,
                            const std::map<ObjectClass, ObjectId>& bindings, SimTime at,
                            const InstanceId& instance_id, TraceSink& sink) {
  require_executable(*def);

  ProcessInstance instance;
  instance.id = instance_id;
  instance.definition = std::move(def);
  instance.clock = at;
  instance.bound_objects = bindings;
  for (const auto& a : instance.definition->activities)
    instance.activity_states[a.id] = ActivityState::Pending;

  auto starts = initially_enabled(*instance.definition);
  for (const auto& aid : starts) {
    const Activity* act = instance.definition->find_activity(aid);
    for (const auto& cls : act->inputs)
      if (!bindings.count(cls))
        throw MissingBindingError("start activity '" + aid + "' needs an object of class '" +
                                  cls + "'");
  }
  for (const auto& aid : starts) {
    instance.activity_states[aid] = ActivityState::Enabled;
    auto ev = make_event(instance, EngineEventKind::ActivityEnabled, at);
    ev.activity_id = aid;
    sink.append(ev);
  }
  return instance;
}

// ---------------------------------------------------------------------------
// perform
// ---------------------------------------------------------------------------

namespace {

/// The permission an activity kind demands on the object classes it touches.
Permission required_permission(ActivityKind kind) {
  switch (kind) {
    case ActivityKind::Task:
    case ActivityKind::ChangeRequest:
      return Permission::Write;
    case ActivityKind::Validation:
      return Permission::Validate;
    case ActivityKind::InformationSearch:
    case ActivityKind::Exchange:
      return Permission::Read;
  }
  return Permission::Read;
}

/// Output classes when the activity produces anything, input classes otherwise.
std::vector<ObjectClass> touched_classes(const Activity& a) {
  const auto& src = a.outputs.empty() ? a.inputs : a.outputs;
  return {src.begin(), src.end()};  // sets iterate in ascending order
}

bool matches(const EventPattern& pattern, const EngineEvent& ev,
             const std::map<ObjectClass, ObjectId>& bindings) {
  if (pattern.kind != ev.kind) return false;
  if (!pattern.object_class) return true;
  if (!ev.object_id) return false;
  auto it = bindings.find(*pattern.object_class);
  return it != bindings.end() && it->second == *ev.object_id;
}

}  // namespace

std::vector<EngineEvent> perform(ProcessInstance& instance, const ActivityId& activity_id,
                                 const Actor& actor, const RoleTable& roles,
                                 ObjectStore& objects, SimTime duration, TraceSink& sink) {
  const Activity* act = instance.definition->find_activity(activity_id);
  if (!act || instance.state_of(activity_id) != ActivityState::Enabled)
    throw NotEnabledError("activity '" + activity_id + "' is not enabled on instance '" +
                          instance.id + "'");
  if (duration < 0) throw Error("negative duration");

  auto bound = [&](const ObjectClass& cls) -> const ObjectId& {
    auto it = instance.bound_objects.find(cls);
    if (it == instance.bound_objects.end())
      throw MissingBindingError("activity '" + activity_id + "' touches unbound class '" +
                                cls + "'");
    return it->second;
  };

  const SimTime start_at = instance.clock;
  std::vector<ObjectClass> in_classes(act->inputs.begin(), act->inputs.end());
  std::vector<ObjectClass> out_classes(act->outputs.begin(), act->outputs.end());
  for (const auto& cls : in_classes) bound(cls);
  for (const auto& cls : out_classes) bound(cls);

  // Access control before anything runs; the denial itself is observable.
  const Permission needed = required_permission(act->kind);
  for (const auto& cls : touched_classes(*act)) {
    if (!check_access(actor, roles, needed, cls)) {
      auto denied = make_event(instance, EngineEventKind::ObjectAccessed, start_at);
      denied.activity_id = activity_id;
      denied.actor_id = actor.id;
      denied.object_id = bound(cls);
      denied.detail = "denied";
      sink.append(denied);
      throw AccessDeniedError("actor '" + actor.id + "' lacks " + to_string(needed) +
                              " on '" + cls + "'");
    }
  }

  std::vector<EngineEvent> emitted;
  auto emit = [&](EngineEvent ev) {
    ev.activity_id = activity_id;
    ev.actor_id = actor.id;
    emitted.push_back(ev);
  };

  instance.activity_states[activity_id] = ActivityState::Running;
  emit(make_event(instance, EngineEventKind::ActivityStarted, start_at));
  for (const auto& cls : in_classes) {
    auto ev = make_event(instance, EngineEventKind::ObjectAccessed, start_at);
    ev.object_id = bound(cls);
    emit(ev);
  }

  const SimTime end_at = start_at + duration;
  for (const auto& cls : out_classes) {
    const ObjectId& oid = bound(cls);
    auto obj = objects.find(oid);
    if (obj == objects.end())
      throw MissingBindingError("bound object '" + oid + "' is not in the object store");
    obj->second.version += 1;
    auto ev = make_event(instance, EngineEventKind::ObjectModified, end_at);
    ev.object_id = oid;
    ev.version = obj->second.version;
    emit(ev);
  }

  switch (act->kind) {
    case ActivityKind::Task:
      break;
    case ActivityKind::Validation:
    case ActivityKind::ChangeRequest: {
      const auto kind = act->kind == ActivityKind::Validation
                            ? EngineEventKind::ValidationRequested
                            : EngineEventKind::ChangeRequested;
      if (out_classes.empty()) {
        emit(make_event(instance, kind, end_at));
      } else {
        for (const auto& cls : out_classes) {
          auto ev = make_event(instance, kind, end_at);
          ev.object_id = bound(cls);
          emit(ev);
        }
      }
      break;
    }
    case ActivityKind::InformationSearch: {
      if (in_classes.empty()) {
        emit(make_event(instance, EngineEventKind::SearchPerformed, end_at));
      } else {
        for (const auto& cls : in_classes) {
          auto ev = make_event(instance, EngineEventKind::SearchPerformed, end_at);
          ev.object_id = bound(cls);
          emit(ev);
        }
      }
      break;
    }
    case ActivityKind::Exchange: {
      auto ev = make_event(instance, EngineEventKind::ExchangePerformed, end_at);
      ev.detail = act->exchange_type.empty() ? "message" : act->exchange_type;
      emit(ev);
      break;
    }
  }

  if (duration > act->expected_duration)
    emit(make_event(instance, EngineEventKind::DeadlineMissed, end_at));

  instance.activity_states[activity_id] = ActivityState::Completed;
  instance.clock = end_at;
  emit(make_event(instance, EngineEventKind::ActivityCompleted, end_at));

  // Successor enabling.
  std::vector<ActivityId> newly;
  const auto& def = *instance.definition;
  if (def.structuring == Structuring::Mechanistic) {
    for (const auto& next : def.successors(activity_id)) {
      if (instance.state_of(next) != ActivityState::Pending) continue;
      auto preds = def.predecessors(next);
      bool all_done = std::all_of(preds.begin(), preds.end(), [&](const ActivityId& p) {
        return instance.state_of(p) == ActivityState::Completed;
      });
      if (all_done) newly.push_back(next);
    }
  } else {
    // Triggers match only events emitted within this perform call.
    for (const auto& tr : def.triggers) {
      if (instance.state_of(tr.activity) != ActivityState::Pending) continue;
      for (const auto& ev : emitted) {
        if (matches(tr.pattern, ev, instance.bound_objects)) {
          newly.push_back(tr.activity);
          break;
        }
      }
    }
  }
  std::sort(newly.begin(), newly.end());
  newly.erase(std::unique(newly.begin(), newly.end()), newly.end());
  for (const auto& next : newly) {
    instance.activity_states[next] = ActivityState::Enabled;
    auto ev = make_event(instance, EngineEventKind::ActivityEnabled, end_at);
    ev.activity_id = next;
    ev.actor_id = actor.id;
    emitted.push_back(ev);
  }

  for (const auto& ev : emitted) sink.append(ev);
  return emitted;
}

// ---------------------------------------------------------------------------
// run_to_completion
// ---------------------------------------------------------------------------

SimTime DurationDistribution::draw(std::mt19937_64& rng) const {
  switch (kind) {
    case Kind::Fixed:
      return value;
    case Kind::Uniform: {
      // Hand-rolled bounded draw keeps streams identical across standard
      // library implementations.
      const auto span = static_cast<std::uint64_t>(max - min + 1);
      return min + static_cast<SimTime>(rng() % span);
    }
  }
  return value;
}

const Actor& RunPolicy::pick_actor(const Activity& activity, std::mt19937_64& rng) const {
  std::vector<const Actor*> candidates;
  for (const auto& [id, actor] : actors)
    if (actor.role_ids.count(activity.required_role)) candidates.push_back(&actor);
  if (candidates.empty())
    throw UnknownRoleError("no actor holds role '" + activity.required_role + "'");
  return *candidates[rng() % candidates.size()];
}

SimTime RunPolicy::draw_duration(const Activity& activity, std::mt19937_64& rng) const {
  if (activity.expected_duration == 0) return 0;  // notifications are instantaneous
  auto it = durations.find(activity.kind);
  if (it == durations.end()) return activity.expected_duration;
  return it->second.draw(rng);
}

std::vector<EngineEvent> run_to_completion(ProcessInstance& instance, const RunPolicy& policy,
                                           std::uint64_t seed, ObjectStore& objects,
                                           TraceSink& sink) {
  std::mt19937_64 rng(seed);
  std::vector<EngineEvent> all;
  for (;;) {
    auto ready = instance.enabled();
    if (ready.empty()) {
      if (instance.all_completed()) break;
      throw StalledError("instance '" + instance.id +
                         "' has non-completed activities but none enabled");
    }
    const ActivityId& next = ready.front();  // lowest id first
    const Activity* act = instance.definition->find_activity(next);
    const Actor& actor = policy.pick_actor(*act, rng);
    const SimTime duration = policy.draw_duration(*act, rng);
    auto events = perform(instance, next, actor, policy.roles, objects, duration, sink);
    all.insert(all.end(), events.begin(), events.end());
  }
  return all;
}

// ---------------------------------------------------------------------------
// reconstruct_emerging
// ---------------------------------------------------------------------------

std::map<InstanceId, std::vector<ActivityId>> reconstruct_emerging(
    const std::vector<EngineEvent>& trace) {
  struct Row {
    SimTime at;
    std::size_t order;
    ActivityId activity;
  };
  std::map<InstanceId, std::vector<Row>> rows;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& ev = trace[i];
    if (ev.kind != EngineEventKind::ActivityCompleted || !ev.activity_id) continue;
    rows[ev.instance_id].push_back({ev.at, i, *ev.activity_id});
  }
  std::map<InstanceId, std::vector<ActivityId>> out;
  for (auto& [instance, list] : rows) {
    std::sort(list.begin(), list.end(), [](const Row& a, const Row& b) {
      return a.at != b.at ? a.at < b.at : a.order < b.order;
    });
    auto& seq = out[instance];
    seq.reserve(list.size());
    for (const auto& row : list) seq.push_back(row.activity);
  }
  return out;
}

}  // namespace collabflow
