// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

namespace collabflow {

/// Abstract simulated time. All durations and timestamps are integer ticks.
using SimTime = std::int64_t;

/// Position of an event in the trace store. Assigned at append, strictly increasing.
using Seq = std::uint64_t;

using ActorId = std::string;
using RoleId = std::string;
using ObjectId = std::string;
using ObjectClass = std::string;
using DefinitionId = std::string;
using ActivityId = std::string;
using InstanceId = std::string;
using IndicatorId = std::string;
using RuleId = std::string;

enum class Permission { Read, Write, Validate };

/// Everything the engine (and the regulation audit) can put on the trace.
enum class EngineEventKind {
  ActivityEnabled,
  ActivityStarted,
  ActivityCompleted,
  ObjectModified,
  ObjectAccessed,
  ValidationRequested,
  ChangeRequested,
  SearchPerformed,
  ExchangePerformed,
  DeadlineMissed,
  DefinitionRevised,  // audit record appended when a definition mutation lands
};

inline constexpr int kEngineEventKindCount = 11;

std::string to_string(Permission p);
std::string to_string(EngineEventKind k);
Permission permission_from_string(const std::string& s);
EngineEventKind event_kind_from_string(const std::string& s);

}  // namespace collabflow
