// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <deque>
#include <map>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "collabflow/engine.hpp"

namespace collabflow {

/// Default idle gap (in simulated time) after which an actor's activity on an
/// object counts as a new session.
inline constexpr SimTime kDefaultSessionGap = 10;

struct TraceEvent {
  Seq seq = 0;
  EngineEvent event;  // immutable once appended
  std::map<std::string, std::string> annotations;  // structuring agent only
};

/// Append-only event log. Appends from concurrent producers get a total order;
/// element references are stable (deque) so readers may hold them across
/// appends. Analysis runs on the prefix visible through size().
class TraceStore final : public TraceSink {
 public:
  TraceStore() = default;
  TraceStore(const TraceStore&) = delete;
  TraceStore& operator=(const TraceStore&) = delete;

  Seq append(const EngineEvent& event) override;
  void annotate(Seq seq, const std::string& key, const std::string& value);

  std::size_t size() const;
  const TraceEvent& at(Seq seq) const;

 private:
  mutable std::shared_mutex mu_;
  std::deque<TraceEvent> events_;
  std::atomic<std::uint64_t> size_{0};
};

struct UsageSession {
  ActorId actor;
  SimTime first_at = 0;
  SimTime last_at = 0;
  Seq seq_first = 0;
  Seq seq_last = 0;
};

struct ObjectUsageRecord {
  ObjectId object_id;
  std::vector<UsageSession> sessions;  // ordered by first seq
  std::set<std::string> labels;        // "multi-actor", "contested"
};

/// Per-object criterion values, the A_j inputs of the weight function.
struct ObjectUsageStats {
  ObjectId object_id;
  std::int64_t modification_count = 0;       // A1
  std::int64_t multi_actor_access_count = 0; // A2: accesses by the 3rd+ distinct actor
  std::int64_t output_flow_count = 0;        // A3: tasks producing the object
  std::map<std::string, double> extra;       // further criteria, by id

  /// "A1"/"A2"/"A3" or an extra criterion id; missing ids read as 0.
  double criterion(const std::string& id) const;
};

/// The collector agent: appends one event, returns its sequence number.
Seq collect(TraceStore& store, const EngineEvent& event);

/// The structuring agent: groups events into per-object actor sessions
/// (split on gaps > session_gap), derives labels, and writes the
/// "multi-actor" annotation back onto the object's events.
std::vector<ObjectUsageRecord> structure(TraceStore& store,
                                         SimTime session_gap = kDefaultSessionGap);

/// The statistical agent: single linear scan restricted to one object.
/// Objects that never appear get all-zero stats.
ObjectUsageStats compute_stats(const TraceStore& store, const ObjectId& object_id);

/// Every object id referenced by any event in the store.
std::set<ObjectId> objects_in(const TraceStore& store);

/// Convenience overload over a stored trace.
std::map<InstanceId, std::vector<ActivityId>> reconstruct_emerging(const TraceStore& store);

}  // namespace collabflow
