// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "collabflow/types.hpp"

namespace collabflow {

// ---------------------------------------------------------------------------
// Organization
// ---------------------------------------------------------------------------

struct AccessRight {
  ObjectClass object_class;
  Permission permission = Permission::Read;
  auto operator<=>(const AccessRight&) const = default;
};

struct Role {
  RoleId id;
  std::string name;
  std::set<AccessRight> rights;  // empty = maximally restricted, still legal
};

/// An actor may hold many roles, never zero.
struct Actor {
  ActorId id;
  std::string name;
  std::set<RoleId> role_ids;
  bool external = false;  // partner outside the enterprise
};

using RoleTable = std::map<RoleId, Role>;
using ActorTable = std::map<ActorId, Actor>;

// ---------------------------------------------------------------------------
// Product
// ---------------------------------------------------------------------------

struct BusinessObject {
  ObjectId id;
  ObjectClass object_class;
  std::int64_t version = 0;  // monotonically non-decreasing
  std::string state;
};

using ObjectStore = std::map<ObjectId, BusinessObject>;

// ---------------------------------------------------------------------------
// Process
// ---------------------------------------------------------------------------

enum class ActivityKind { Task, Validation, ChangeRequest, InformationSearch, Exchange };
enum class Structuring { Mechanistic, Systemic, Emerging };
enum class ProcessCategory { Administrative, Production };
enum class Variability { Permanent, Varying };

struct Activity {
  ActivityId id;
  std::string name;
  ActivityKind kind = ActivityKind::Task;
  RoleId required_role;
  std::set<ObjectClass> inputs;
  std::set<ObjectClass> outputs;
  SimTime expected_duration = 1;  // > 0, except Exchange which may be 0
  bool entry = false;             // systemic entry point
  std::string exchange_type;      // Exchange only; empty means "message"
};

struct Transition {
  ActivityId from;
  ActivityId to;
  std::string guard;  // opaque label; unknown guards evaluate to true
};

struct EventPattern {
  EngineEventKind kind = EngineEventKind::ActivityCompleted;
  std::optional<ObjectClass> object_class;
};

struct Trigger {
  EventPattern pattern;
  ActivityId activity;
};

struct ProcessDefinition {
  DefinitionId id;
  std::string name;
  Structuring structuring = Structuring::Mechanistic;
  ProcessCategory category = ProcessCategory::Administrative;
  Variability variability = Variability::Permanent;
  std::vector<Activity> activities;
  std::vector<Transition> transitions;  // mechanistic only
  std::vector<Trigger> triggers;        // systemic only
  std::int64_t revision = 0;            // +1 per applied regulation action

  const Activity* find_activity(const ActivityId& id) const;
  std::vector<ActivityId> predecessors(const ActivityId& id) const;
  std::vector<ActivityId> successors(const ActivityId& id) const;
};

// ---------------------------------------------------------------------------
// Monitoring extension: Indicator / Regulator / Rule / interface views
// ---------------------------------------------------------------------------

enum class ThresholdDirection { AtLeast, AtMost };

/// Crossing is inclusive: AtLeast breaches on value >= threshold,
/// AtMost on value <= threshold.
struct Threshold {
  ThresholdDirection direction = ThresholdDirection::AtLeast;
  double value = 0.0;
};

enum class IndicatorKindTag {
  ChangeRequestsPerObject,
  ValidationRequestsPerObject,
  TimeOnTask,
  ProcessModificationCount,
  MissedDeadlineCount,
  InfoSearchTime,
  ExchangeTypeProfile,  // categorical; reportable but never breachable
  UserCount,
  ExploitationAbility,
  UseStability,
};

enum class ScopeKind { Object, Activity, Process, Global };

struct Scope {
  ScopeKind kind = ScopeKind::Global;
  std::string id;  // unset for Global
};

struct IndicatorCalc {
  IndicatorKindTag kind = IndicatorKindTag::UserCount;
  Scope scope;
};

struct Indicator {
  IndicatorId id;
  std::string objective;
  IndicatorCalc calculation;
  Threshold threshold;
  std::optional<SimTime> window;  // span ending at the newest event; unset = whole trace
};

enum class RegulatorKind { Human, Automated };
enum class PolicyKind { Auto, Quorum, Unanimous };

struct AcceptancePolicy {
  PolicyKind kind = PolicyKind::Auto;
  double quorum = 1.0;  // Quorum only; must lie in (0, 1]
  std::vector<ActorId> stakeholders;
};

/// The single regulation authority of a scenario.
struct Regulator {
  std::string id;
  RegulatorKind kind = RegulatorKind::Automated;
  AcceptancePolicy acceptance_policy;
};

enum class ActionKind {
  RemoveValidationStep,
  MergeActivities,
  ParallelizeActivities,
  GrantAccessRight,
  ReassignRole,
  AddNotification,
};

struct RegulationAction {
  ActionKind kind = ActionKind::RemoveValidationStep;
  DefinitionId process;     // definition-targeting actions
  ActivityId activity_a;    // primary target
  ActivityId activity_b;    // Merge/Parallelize partner
  RoleId role;              // GrantAccessRight target / ReassignRole replacement
  AccessRight right;        // GrantAccessRight payload
  std::vector<ActorId> notify;  // AddNotification recipients
};

struct Rule {
  RuleId id;
  IndicatorId indicator_id;
  RegulationAction action;
  int priority = 0;  // lower value wins; unique per indicator
};

enum class ViewTarget { Orga, Proc, Prod };

struct InterfaceView {
  ViewTarget target = ViewTarget::Prod;
  std::set<std::string> visible_classes;  // object classes, or type names for Orga/Proc
  std::set<AccessRight> granted;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class FaultCode {
  EmptyDefinition,
  DuplicateActivity,
  UnknownActivityRef,
  UnknownRole,
  SelfLoop,
  Cycle,
  NoStart,
  MultipleStarts,
  NoEnd,
  Unreachable,
  StructureMismatch,    // transitions on systemic, triggers on mechanistic
  EmergingHasStructure,
  NonPositiveDuration,
  Permission,           // validation role lacks Validate on an output class
  DanglingReference,    // config-level cross reference
  BadValue,
  DuplicateId,
};

struct ValidationFault {
  FaultCode code;
  std::string element;  // offending id
  std::string message;
  std::string str() const;
};

/// Structural validation of one definition. The role table is needed to check
/// that validation activities are performable at all. Idempotent, no side effects.
std::vector<ValidationFault> validate_definition(const ProcessDefinition& def,
                                                 const RoleTable& roles);

/// True iff some role held by the actor grants (object_class, permission).
/// Throws UnknownRoleError when a held role id does not resolve.
bool check_access(const Actor& actor, const RoleTable& roles, Permission permission,
                  const ObjectClass& object_class);

struct ScenarioUniverse {
  std::vector<Actor> actors;
  std::vector<Role> roles;
  std::vector<ProcessDefinition> definitions;
  std::vector<BusinessObject> objects;
};

/// Navigation through one of the I-Orga/Proc/Prod interfaces: entities outside
/// visible_classes are dropped; visible entities without a Read grant keep only
/// their identity.
ScenarioUniverse view_query(const InterfaceView& view, const ScenarioUniverse& universe);

// Enum names (used by serialization and fault messages).
std::string to_string(ActivityKind k);
std::string to_string(Structuring s);
std::string to_string(ProcessCategory c);
std::string to_string(Variability v);
std::string to_string(ThresholdDirection d);
std::string to_string(IndicatorKindTag t);
std::string to_string(ScopeKind k);
std::string to_string(RegulatorKind k);
std::string to_string(PolicyKind k);
std::string to_string(ActionKind k);
std::string to_string(ViewTarget t);
std::string to_string(FaultCode c);
ActivityKind activity_kind_from_string(const std::string& s);
Structuring structuring_from_string(const std::string& s);
ProcessCategory category_from_string(const std::string& s);
Variability variability_from_string(const std::string& s);
ThresholdDirection direction_from_string(const std::string& s);
IndicatorKindTag indicator_kind_from_string(const std::string& s);
ScopeKind scope_kind_from_string(const std::string& s);
RegulatorKind regulator_kind_from_string(const std::string& s);
PolicyKind policy_kind_from_string(const std::string& s);
ActionKind action_kind_from_string(const std::string& s);
ViewTarget view_target_from_string(const std::string& s);

}  // namespace collabflow
