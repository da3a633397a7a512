// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "collabflow/metamodel.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "collabflow/errors.hpp"

namespace collabflow {

// ---------------------------------------------------------------------------
// Enum names
// ---------------------------------------------------------------------------

namespace {

template <typename E>
E parse_enum(const std::map<std::string, E>& table, const std::string& s,
             const char* what) {
  auto it = table.find(s);
  if (it == table.end()) throw Error(std::string("unknown ") + what + ": " + s);
  return it->second;
}

const std::map<std::string, Permission> kPermissionNames = {
    {"read", Permission::Read},
    {"write", Permission::Write},
    {"validate", Permission::Validate},
};

const std::map<std::string, EngineEventKind> kEventKindNames = {
    {"activity_enabled", EngineEventKind::ActivityEnabled},
    {"activity_started", EngineEventKind::ActivityStarted},
    {"activity_completed", EngineEventKind::ActivityCompleted},
    {"object_modified", EngineEventKind::ObjectModified},
    {"object_accessed", EngineEventKind::ObjectAccessed},
    {"validation_requested", EngineEventKind::ValidationRequested},
    {"change_requested", EngineEventKind::ChangeRequested},
    {"search_performed", EngineEventKind::SearchPerformed},
    {"exchange_performed", EngineEventKind::ExchangePerformed},
    {"deadline_missed", EngineEventKind::DeadlineMissed},
    {"definition_revised", EngineEventKind::DefinitionRevised},
};

const std::map<std::string, ActivityKind> kActivityKindNames = {
    {"task", ActivityKind::Task},
    {"validation", ActivityKind::Validation},
    {"change_request", ActivityKind::ChangeRequest},
    {"information_search", ActivityKind::InformationSearch},
    {"exchange", ActivityKind::Exchange},
};

const std::map<std::string, Structuring> kStructuringNames = {
    {"mechanistic", Structuring::Mechanistic},
    {"systemic", Structuring::Systemic},
    {"emerging", Structuring::Emerging},
};

const std::map<std::string, ProcessCategory> kCategoryNames = {
    {"administrative", ProcessCategory::Administrative},
    {"production", ProcessCategory::Production},
};

const std::map<std::string, Variability> kVariabilityNames = {
    {"permanent", Variability::Permanent},
    {"varying", Variability::Varying},
};

const std::map<std::string, ThresholdDirection> kDirectionNames = {
    {"at_least", ThresholdDirection::AtLeast},
    {"at_most", ThresholdDirection::AtMost},
};

const std::map<std::string, IndicatorKindTag> kIndicatorKindNames = {
    {"change_requests_per_object", IndicatorKindTag::ChangeRequestsPerObject},
    {"validation_requests_per_object", IndicatorKindTag::ValidationRequestsPerObject},
    {"time_on_task", IndicatorKindTag::TimeOnTask},
    {"process_modification_count", IndicatorKindTag::ProcessModificationCount},
    {"missed_deadline_count", IndicatorKindTag::MissedDeadlineCount},
    {"info_search_time", IndicatorKindTag::InfoSearchTime},
    {"exchange_type_profile", IndicatorKindTag::ExchangeTypeProfile},
    {"user_count", IndicatorKindTag::UserCount},
    {"exploitation_ability", IndicatorKindTag::ExploitationAbility},
    {"use_stability", IndicatorKindTag::UseStability},
};

const std::map<std::string, ScopeKind> kScopeKindNames = {
    {"object", ScopeKind::Object},
    {"activity", ScopeKind::Activity},
    {"process", ScopeKind::Process},
    {"global", ScopeKind::Global},
};

const std::map<std::string, RegulatorKind> kRegulatorKindNames = {
    {"human", RegulatorKind::Human},
    {"automated", RegulatorKind::Automated},
};

const std::map<std::string, PolicyKind> kPolicyKindNames = {
    {"auto", PolicyKind::Auto},
    {"quorum", PolicyKind::Quorum},
    {"unanimous", PolicyKind::Unanimous},
};

const std::map<std::string, ActionKind> kActionKindNames = {
    {"remove_validation_step", ActionKind::RemoveValidationStep},
    {"merge_activities", ActionKind::MergeActivities},
    {"parallelize_activities", ActionKind::ParallelizeActivities},
    {"grant_access_right", ActionKind::GrantAccessRight},
    {"reassign_role", ActionKind::ReassignRole},
    {"add_notification", ActionKind::AddNotification},
};

const std::map<std::string, ViewTarget> kViewTargetNames = {
    {"orga", ViewTarget::Orga},
    {"proc", ViewTarget::Proc},
    {"prod", ViewTarget::Prod},
};

template <typename E>
std::string enum_name(const std::map<std::string, E>& table, E v) {
  for (const auto& [name, value] : table)
    if (value == v) return name;
  return "?";
}

}  // namespace

std::string to_string(Permission p) { return enum_name(kPermissionNames, p); }
std::string to_string(EngineEventKind k) { return enum_name(kEventKindNames, k); }
std::string to_string(ActivityKind k) { return enum_name(kActivityKindNames, k); }
std::string to_string(Structuring s) { return enum_name(kStructuringNames, s); }
std::string to_string(ProcessCategory c) { return enum_name(kCategoryNames, c); }
std::string to_string(Variability v) { return enum_name(kVariabilityNames, v); }
std::string to_string(ThresholdDirection d) { return enum_name(kDirectionNames, d); }
std::string to_string(IndicatorKindTag t) { return enum_name(kIndicatorKindNames, t); }
std::string to_string(ScopeKind k) { return enum_name(kScopeKindNames, k); }
std::string to_string(RegulatorKind k) { return enum_name(kRegulatorKindNames, k); }
std::string to_string(PolicyKind k) { return enum_name(kPolicyKindNames, k); }
std::string to_string(ActionKind k) { return enum_name(kActionKindNames, k); }
std::string to_string(ViewTarget t) { return enum_name(kViewTargetNames, t); }

Permission permission_from_string(const std::string& s) {
  return parse_enum(kPermissionNames, s, "permission");
}
EngineEventKind event_kind_from_string(const std::string& s) {
  return parse_enum(kEventKindNames, s, "event kind");
}
ActivityKind activity_kind_from_string(const std::string& s) {
  return parse_enum(kActivityKindNames, s, "activity kind");
}
Structuring structuring_from_string(const std::string& s) {
  return parse_enum(kStructuringNames, s, "structuring");
}
ProcessCategory category_from_string(const std::string& s) {
  return parse_enum(kCategoryNames, s, "process category");
}
Variability variability_from_string(const std::string& s) {
  return parse_enum(kVariabilityNames, s, "variability");
}
ThresholdDirection direction_from_string(const std::string& s) {
  return parse_enum(kDirectionNames, s, "threshold direction");
}
IndicatorKindTag indicator_kind_from_string(const std::string& s) {
  return parse_enum(kIndicatorKindNames, s, "indicator kind");
}
ScopeKind scope_kind_from_string(const std::string& s) {
  return parse_enum(kScopeKindNames, s, "scope kind");
}
RegulatorKind regulator_kind_from_string(const std::string& s) {
  return parse_enum(kRegulatorKindNames, s, "regulator kind");
}
PolicyKind policy_kind_from_string(const std::string& s) {
  return parse_enum(kPolicyKindNames, s, "policy kind");
}
ActionKind action_kind_from_string(const std::string& s) {
  return parse_enum(kActionKindNames, s, "action kind");
}
ViewTarget view_target_from_string(const std::string& s) {
  return parse_enum(kViewTargetNames, s, "view target");
}

std::string to_string(FaultCode c) {
  switch (c) {
    case FaultCode::EmptyDefinition: return "empty_definition";
    case FaultCode::DuplicateActivity: return "duplicate_activity";
    case FaultCode::UnknownActivityRef: return "unknown_activity_ref";
    case FaultCode::UnknownRole: return "unknown_role";
    case FaultCode::SelfLoop: return "self_loop";
    case FaultCode::Cycle: return "cycle";
    case FaultCode::NoStart: return "no_start";
    case FaultCode::MultipleStarts: return "multiple_starts";
    case FaultCode::NoEnd: return "no_end";
    case FaultCode::Unreachable: return "unreachable";
    case FaultCode::StructureMismatch: return "structure_mismatch";
    case FaultCode::EmergingHasStructure: return "emerging_has_structure";
    case FaultCode::NonPositiveDuration: return "non_positive_duration";
    case FaultCode::Permission: return "permission";
    case FaultCode::DanglingReference: return "dangling_reference";
    case FaultCode::BadValue: return "bad_value";
    case FaultCode::DuplicateId: return "duplicate_id";
  }
  return "?";
}

std::string ValidationFault::str() const {
  return to_string(code) + "(" + element + "): " + message;
}

// ---------------------------------------------------------------------------
// ProcessDefinition helpers
// ---------------------------------------------------------------------------

const Activity* ProcessDefinition::find_activity(const ActivityId& aid) const {
  for (const auto& a : activities)
    if (a.id == aid) return &a;
  return nullptr;
}

std::vector<ActivityId> ProcessDefinition::predecessors(const ActivityId& aid) const {
  std::vector<ActivityId> out;
  for (const auto& t : transitions)
    if (t.to == aid) out.push_back(t.from);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ActivityId> ProcessDefinition::successors(const ActivityId& aid) const {
  std::vector<ActivityId> out;
  for (const auto& t : transitions)
    if (t.from == aid) out.push_back(t.to);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// validate_definition
// ---------------------------------------------------------------------------

namespace {

void validate_graph_shape(const ProcessDefinition& def, std::vector<ValidationFault>& faults) {
  // Endpoint resolution, self loops.
  bool endpoints_ok = true;
  for (const auto& t : def.transitions) {
    if (t.from == t.to) {
      faults.push_back({FaultCode::SelfLoop, t.from, "transition from an activity to itself"});
      endpoints_ok = false;
      continue;
    }
    for (const auto& end : {t.from, t.to}) {
      if (!def.find_activity(end)) {
        faults.push_back({FaultCode::UnknownActivityRef, end,
                          "transition endpoint not among the activities"});
        endpoints_ok = false;
      }
    }
  }
  if (!endpoints_ok) return;  // graph checks below need a resolvable edge set

  // Kahn's algorithm; leftovers mean a cycle.
  std::map<ActivityId, int> indeg;
  std::map<ActivityId, std::vector<ActivityId>> adj;
  for (const auto& a : def.activities) indeg[a.id] = 0;
  for (const auto& t : def.transitions) {
    adj[t.from].push_back(t.to);
    ++indeg[t.to];
  }
  std::deque<ActivityId> ready;
  std::vector<ActivityId> starts;
  for (const auto& [id, d] : indeg)
    if (d == 0) {
      ready.push_back(id);
      starts.push_back(id);
    }
  std::size_t visited = 0;
  while (!ready.empty()) {
    auto cur = ready.front();
    ready.pop_front();
    ++visited;
    for (const auto& next : adj[cur])
      if (--indeg[next] == 0) ready.push_back(next);
  }
  if (visited != def.activities.size()) {
    faults.push_back({FaultCode::Cycle, def.id, "transitions contain a cycle"});
    return;
  }
  if (starts.empty())
    faults.push_back({FaultCode::NoStart, def.id, "no activity with in-degree zero"});
  else if (starts.size() > 1)
    faults.push_back({FaultCode::MultipleStarts, starts[1],
                      "mechanistic definition must have exactly one start"});

  bool has_end = false;
  for (const auto& a : def.activities)
    if (def.successors(a.id).empty()) has_end = true;
  if (!has_end && !def.activities.empty())
    faults.push_back({FaultCode::NoEnd, def.id, "no activity with out-degree zero"});

  // Reachability from the start; with one start and no cycle every activity
  // is reachable, so this only fires on graphs already reported above.
  if (starts.size() == 1) {
    std::set<ActivityId> seen{starts[0]};
    std::deque<ActivityId> frontier{starts[0]};
    while (!frontier.empty()) {
      auto cur = frontier.front();
      frontier.pop_front();
      for (const auto& next : adj[cur])
        if (seen.insert(next).second) frontier.push_back(next);
    }
    for (const auto& a : def.activities)
      if (!seen.count(a.id))
        faults.push_back({FaultCode::Unreachable, a.id, "not reachable from the start"});
  }
}

}  // namespace

std::vector<ValidationFault> validate_definition(const ProcessDefinition& def,
                                                 const RoleTable& roles) {
  std::vector<ValidationFault> faults;

  if (def.activities.empty()) {
    faults.push_back({FaultCode::EmptyDefinition, def.id, "definition has no activities"});
    return faults;
  }

  std::set<ActivityId> ids;
  for (const auto& a : def.activities) {
    if (!ids.insert(a.id).second)
      faults.push_back({FaultCode::DuplicateActivity, a.id, "activity id appears twice"});

    const SimTime min_duration = a.kind == ActivityKind::Exchange ? 0 : 1;
    if (a.expected_duration < min_duration)
      faults.push_back({FaultCode::NonPositiveDuration, a.id,
                        "expected_duration must be positive"});

    auto role_it = roles.find(a.required_role);
    if (role_it == roles.end()) {
      faults.push_back({FaultCode::UnknownRole, a.id,
                        "required role '" + a.required_role + "' does not resolve"});
    } else if (a.kind == ActivityKind::Validation) {
      for (const auto& cls : a.outputs) {
        if (!role_it->second.rights.count({cls, Permission::Validate}))
          faults.push_back({FaultCode::Permission, a.id,
                            "role '" + a.required_role + "' lacks validate on '" + cls + "'"});
      }
    }
  }

  switch (def.structuring) {
    case Structuring::Mechanistic:
      if (!def.triggers.empty())
        faults.push_back({FaultCode::StructureMismatch, def.id,
                          "mechanistic definition carries triggers"});
      validate_graph_shape(def, faults);
      break;
    case Structuring::Systemic: {
      if (!def.transitions.empty())
        faults.push_back({FaultCode::StructureMismatch, def.id,
                          "systemic definition carries transitions"});
      std::set<ActivityId> triggered;
      for (const auto& tr : def.triggers) {
        if (!def.find_activity(tr.activity))
          faults.push_back({FaultCode::UnknownActivityRef, tr.activity,
                            "trigger targets an unknown activity"});
        else
          triggered.insert(tr.activity);
      }
      for (const auto& a : def.activities)
        if (!a.entry && !triggered.count(a.id))
          faults.push_back({FaultCode::Unreachable, a.id,
                            "neither marked entry nor targeted by a trigger"});
      break;
    }
    case Structuring::Emerging:
      if (!def.transitions.empty() || !def.triggers.empty())
        faults.push_back({FaultCode::EmergingHasStructure, def.id,
                          "emerging definition must carry no transitions or triggers"});
      break;
  }

  return faults;
}

// ---------------------------------------------------------------------------
// check_access
// ---------------------------------------------------------------------------

bool check_access(const Actor& actor, const RoleTable& roles, Permission permission,
                  const ObjectClass& object_class) {
  for (const auto& rid : actor.role_ids) {
    auto it = roles.find(rid);
    if (it == roles.end())
      throw UnknownRoleError("actor '" + actor.id + "' holds unknown role '" + rid + "'");
    if (it->second.rights.count({object_class, permission})) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// view_query
// ---------------------------------------------------------------------------

namespace {

bool readable(const InterfaceView& view, const std::string& cls) {
  return view.granted.count({cls, Permission::Read}) > 0;
}

}  // namespace

ScenarioUniverse view_query(const InterfaceView& view, const ScenarioUniverse& universe) {
  ScenarioUniverse out;
  switch (view.target) {
    case ViewTarget::Orga:
      if (view.visible_classes.count("Actor")) {
        for (const auto& a : universe.actors) {
          if (readable(view, "Actor")) {
            out.actors.push_back(a);
          } else {
            out.actors.push_back(Actor{a.id, "", {}, false});
          }
        }
      }
      if (view.visible_classes.count("Role")) {
        for (const auto& r : universe.roles)
          out.roles.push_back(readable(view, "Role") ? r : Role{r.id, "", {}});
      }
      break;
    case ViewTarget::Proc:
      if (view.visible_classes.count("ProcessDefinition")) {
        for (const auto& d : universe.definitions) {
          if (readable(view, "ProcessDefinition")) {
            out.definitions.push_back(d);
          } else {
            ProcessDefinition stub;
            stub.id = d.id;
            out.definitions.push_back(stub);
          }
        }
      }
      break;
    case ViewTarget::Prod:
      for (const auto& o : universe.objects) {
        if (!view.visible_classes.count(o.object_class)) continue;
        if (readable(view, o.object_class)) {
          out.objects.push_back(o);
        } else {
          out.objects.push_back(BusinessObject{o.id, o.object_class, 0, ""});
        }
      }
      break;
  }
  return out;
}

}  // namespace collabflow
