// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "collabflow/observation.hpp"

#include <algorithm>
#include <mutex>

#include "collabflow/errors.hpp"

namespace collabflow {

// ---------------------------------------------------------------------------
// TraceStore
// ---------------------------------------------------------------------------

Seq TraceStore::append(const EngineEvent& event) {
  std::unique_lock lock(mu_);
  const Seq seq = events_.size();
  events_.push_back(TraceEvent{seq, event, {}});
  size_.store(events_.size(), std::memory_order_release);
  return seq;
}

void TraceStore::annotate(Seq seq, const std::string& key, const std::string& value) {
  std::unique_lock lock(mu_);
  if (seq >= events_.size()) throw Error("annotate: sequence number out of range");
  events_[seq].annotations[key] = value;
}

std::size_t TraceStore::size() const { return size_.load(std::memory_order_acquire); }

const TraceEvent& TraceStore::at(Seq seq) const {
  std::shared_lock lock(mu_);
  if (seq >= events_.size()) throw Error("trace store: sequence number out of range");
  return events_[seq];  // deque references stay valid across appends
}

Seq collect(TraceStore& store, const EngineEvent& event) { return store.append(event); }

// ---------------------------------------------------------------------------
// Structuring agent
// ---------------------------------------------------------------------------

std::vector<ObjectUsageRecord> structure(TraceStore& store, SimTime session_gap) {
  struct Touch {
    Seq seq;
    SimTime at;
  };
  // (object, actor) -> touches in seq order.
  std::map<ObjectId, std::map<ActorId, std::vector<Touch>>> touches;
  const std::size_t n = store.size();
  for (Seq s = 0; s < n; ++s) {
    const auto& ev = store.at(s).event;
    if (!ev.object_id) continue;
    touches[*ev.object_id][ev.actor_id].push_back({s, ev.at});
  }

  std::vector<ObjectUsageRecord> records;
  for (auto& [object_id, per_actor] : touches) {
    ObjectUsageRecord rec;
    rec.object_id = object_id;
    for (auto& [actor, list] : per_actor) {
      std::sort(list.begin(), list.end(),
                [](const Touch& a, const Touch& b) { return a.seq < b.seq; });
      UsageSession session{actor, list.front().at, list.front().at, list.front().seq,
                           list.front().seq};
      for (std::size_t i = 1; i < list.size(); ++i) {
        if (list[i].at - session.last_at > session_gap) {
          rec.sessions.push_back(session);
          session = {actor, list[i].at, list[i].at, list[i].seq, list[i].seq};
        } else {
          session.last_at = list[i].at;
          session.seq_last = list[i].seq;
        }
      }
      rec.sessions.push_back(session);
    }
    std::sort(rec.sessions.begin(), rec.sessions.end(),
              [](const UsageSession& a, const UsageSession& b) {
                return a.seq_first < b.seq_first;
              });

    if (per_actor.size() >= 2) {
      rec.labels.insert("multi-actor");
      // Contested: two actors' sessions overlap in time.
      for (std::size_t i = 0; i < rec.sessions.size() && !rec.labels.count("contested"); ++i) {
        for (std::size_t j = i + 1; j < rec.sessions.size(); ++j) {
          const auto& a = rec.sessions[i];
          const auto& b = rec.sessions[j];
          if (a.actor != b.actor && a.first_at <= b.last_at && b.first_at <= a.last_at) {
            rec.labels.insert("contested");
            break;
          }
        }
      }
    }
    records.push_back(std::move(rec));
  }

  // Write the multi-actor label back onto the object's events.
  for (const auto& rec : records) {
    if (!rec.labels.count("multi-actor")) continue;
    for (const auto& session : rec.sessions)
      for (Seq s = session.seq_first; s <= session.seq_last; ++s) {
        const auto& ev = store.at(s).event;
        if (ev.object_id && *ev.object_id == rec.object_id)
          store.annotate(s, "multi-actor", "true");
      }
  }
  return records;
}

// ---------------------------------------------------------------------------
// Statistical agent
// ---------------------------------------------------------------------------

double ObjectUsageStats::criterion(const std::string& id) const {
  if (id == "A1") return static_cast<double>(modification_count);
  if (id == "A2") return static_cast<double>(multi_actor_access_count);
  if (id == "A3") return static_cast<double>(output_flow_count);
  auto it = extra.find(id);
  return it == extra.end() ? 0.0 : it->second;
}

ObjectUsageStats compute_stats(const TraceStore& store, const ObjectId& object_id) {
  ObjectUsageStats stats;
  stats.object_id = object_id;
  std::vector<ActorId> seen;  // distinct actors in first-touch order
  std::set<std::pair<InstanceId, ActivityId>> producing_tasks;
  const std::size_t n = store.size();
  for (Seq s = 0; s < n; ++s) {
    const auto& ev = store.at(s).event;
    if (!ev.object_id || *ev.object_id != object_id) continue;

    if (ev.kind == EngineEventKind::ObjectModified) {
      stats.modification_count += 1;
      if (ev.activity_id) producing_tasks.insert({ev.instance_id, *ev.activity_id});
    }
    if (ev.kind == EngineEventKind::ObjectModified ||
        ev.kind == EngineEventKind::ObjectAccessed) {
      auto pos = std::find(seen.begin(), seen.end(), ev.actor_id);
      std::size_t rank;
      if (pos == seen.end()) {
        seen.push_back(ev.actor_id);
        rank = seen.size();
      } else {
        rank = static_cast<std::size_t>(pos - seen.begin()) + 1;
      }
      if (rank >= 3) stats.multi_actor_access_count += 1;
    }
  }
  stats.output_flow_count = static_cast<std::int64_t>(producing_tasks.size());
  return stats;
}

std::set<ObjectId> objects_in(const TraceStore& store) {
  std::set<ObjectId> out;
  const std::size_t n = store.size();
  for (Seq s = 0; s < n; ++s) {
    const auto& ev = store.at(s).event;
    if (ev.object_id) out.insert(*ev.object_id);
  }
  return out;
}

std::map<InstanceId, std::vector<ActivityId>> reconstruct_emerging(const TraceStore& store) {
  std::vector<EngineEvent> events;
  const std::size_t n = store.size();
  events.reserve(n);
  for (Seq s = 0; s < n; ++s) events.push_back(store.at(s).event);
  return reconstruct_emerging(events);
}

}  // namespace collabflow
