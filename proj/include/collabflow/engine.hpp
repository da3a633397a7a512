// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "collabflow/errors.hpp"
#include "collabflow/metamodel.hpp"
#include "collabflow/types.hpp"

namespace collabflow {

/// One atomic observation. Everything analysis needs must be on the event:
/// traces are replayed offline with no access to the stores that produced them.
struct EngineEvent {
  EngineEventKind kind = EngineEventKind::ActivityEnabled;
  InstanceId instance_id;
  DefinitionId process_id;
  std::optional<ActivityId> activity_id;
  ActorId actor_id;
  std::optional<ObjectId> object_id;
  std::optional<std::int64_t> version;  // ObjectModified: the new version
  std::string detail;  // exchange type, "denied", or the applied action kind
  SimTime at = 0;
};

/// Where engine events go. The observation module's collector implements this.
class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual Seq append(const EngineEvent& event) = 0;
};

enum class ActivityState { Pending, Enabled, Running, Completed, Skipped };

std::string to_string(ActivityState s);

struct ProcessInstance {
  InstanceId id;
  std::shared_ptr<const ProcessDefinition> definition;  // pinned revision
  std::map<ActivityId, ActivityState> activity_states;
  SimTime clock = 0;
  std::map<ObjectClass, ObjectId> bound_objects;

  /// Enabled activity ids in ascending id order (the scheduling order).
  std::vector<ActivityId> enabled() const;
  bool all_completed() const;
  ActivityState state_of(const ActivityId& id) const;
};

/// Creates an instance with start (mechanistic, in-degree zero) or entry
/// (systemic) activities enabled, emitting one ActivityEnabled per enabled
/// activity. Full validation is the caller's contract; structurally unusable
/// definitions (emerging, empty, cyclic, dangling refs) are rejected here.
ProcessInstance instantiate(std::shared_ptr<const ProcessDefinition> def,
                            const std::map<ObjectClass, ObjectId>& bindings, SimTime at,
                            const InstanceId& instance_id, TraceSink& sink);

/// Completes one enabled activity: advances the clock by `duration`, versions
/// the bound output objects, emits the kind-specific and deadline events, and
/// enables successors. A denied access is traced before AccessDeniedError is
/// thrown, and the activity stays enabled.
std::vector<EngineEvent> perform(ProcessInstance& instance, const ActivityId& activity_id,
                                 const Actor& actor, const RoleTable& roles,
                                 ObjectStore& objects, SimTime duration, TraceSink& sink);

struct DurationDistribution {
  enum class Kind { Fixed, Uniform };
  Kind kind = Kind::Fixed;
  SimTime value = 0;  // Fixed
  SimTime min = 0;    // Uniform, inclusive
  SimTime max = 0;    // Uniform, inclusive
  SimTime draw(std::mt19937_64& rng) const;
};

/// Assigns actors and draws durations for unattended runs. Deterministic for a
/// given rng stream: the candidate set is sorted by actor id before picking.
struct RunPolicy {
  ActorTable actors;
  RoleTable roles;
  std::map<ActivityKind, DurationDistribution> durations;  // fallback: expected_duration

  const Actor& pick_actor(const Activity& activity, std::mt19937_64& rng) const;
  SimTime draw_duration(const Activity& activity, std::mt19937_64& rng) const;
};

/// Runs the instance until nothing is enabled, always performing the enabled
/// activity with the lowest id. Throws StalledError when non-completed
/// activities remain but none can run.
std::vector<EngineEvent> run_to_completion(ProcessInstance& instance, const RunPolicy& policy,
                                           std::uint64_t seed, ObjectStore& objects,
                                           TraceSink& sink);

/// Redraws per-instance activity sequences from a trace: ActivityCompleted
/// events in timestamp order, ties broken by position.
std::map<InstanceId, std::vector<ActivityId>> reconstruct_emerging(
    const std::vector<EngineEvent>& trace);

}  // namespace collabflow
