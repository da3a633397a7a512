// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "collabflow/indicators.hpp"

#include <algorithm>
#include <cmath>

namespace collabflow {

double delta_c(const WeightFunction& wf, const ObjectUsageStats& stats) {
  double sum = 0.0;
  for (const auto& [criterion, alpha] : wf.weights) sum += alpha * stats.criterion(criterion);
  return sum;
}

std::vector<ObjectId> select_collaborative_objects(
    const WeightFunction& wf, const std::map<ObjectId, ObjectUsageStats>& all_stats,
    double cutoff) {
  std::vector<ObjectId> out;
  for (const auto& [id, stats] : all_stats)
    if (delta_c(wf, stats) >= cutoff) out.push_back(id);
  return out;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

namespace {

bool in_scope(const EngineEvent& ev, const Scope& scope) {
  switch (scope.kind) {
    case ScopeKind::Object:
      return ev.object_id && *ev.object_id == scope.id;
    case ScopeKind::Activity:
      return ev.activity_id && *ev.activity_id == scope.id;
    case ScopeKind::Process:
      return ev.process_id == scope.id;
    case ScopeKind::Global:
      return true;
  }
  return false;
}

struct Episode {
  std::optional<SimTime> started;
  std::optional<SimTime> completed;
  bool search_hit = false;
};

using EpisodeKey = std::pair<InstanceId, ActivityId>;

}  // namespace

IndicatorValue evaluate(const IndicatorCalc& calc, const TraceStore& store,
                        std::optional<TimeWindow> window) {
  IndicatorValue result;
  result.window = window;
  const std::size_t n = store.size();
  result.seq_end = n;

  std::map<EpisodeKey, Episode> episodes;  // TimeOnTask / InfoSearchTime
  std::set<ActorId> actors;
  std::map<ActorId, std::set<EngineEventKind>> kinds_by_actor;
  std::vector<SimTime> event_times;  // UseStability
  std::int64_t count = 0;
  double time_sum = 0.0;
  SimTime newest = 0;
  bool any = false;

  for (Seq s = 0; s < n; ++s) {
    const auto& ev = store.at(s).event;
    if (window && !window->contains(ev.at)) continue;
    if (!any || ev.at > newest) newest = ev.at;
    any = true;
    result.events_seen += 1;

    switch (calc.kind) {
      case IndicatorKindTag::ChangeRequestsPerObject:
        if (ev.kind == EngineEventKind::ChangeRequested && in_scope(ev, calc.scope)) ++count;
        break;
      case IndicatorKindTag::ValidationRequestsPerObject:
        if (ev.kind == EngineEventKind::ValidationRequested && in_scope(ev, calc.scope))
          ++count;
        break;
      case IndicatorKindTag::MissedDeadlineCount:
        if (ev.kind == EngineEventKind::DeadlineMissed && in_scope(ev, calc.scope)) ++count;
        break;
      case IndicatorKindTag::ProcessModificationCount:
        if (ev.kind == EngineEventKind::DefinitionRevised && in_scope(ev, calc.scope)) ++count;
        break;
      case IndicatorKindTag::TimeOnTask: {
        if (!ev.activity_id || *ev.activity_id != calc.scope.id) break;
        auto& ep = episodes[{ev.instance_id, *ev.activity_id}];
        if (ev.kind == EngineEventKind::ActivityStarted) ep.started = ev.at;
        if (ev.kind == EngineEventKind::ActivityCompleted) ep.completed = ev.at;
        break;
      }
      case IndicatorKindTag::InfoSearchTime: {
        if (!ev.activity_id) break;
        auto& ep = episodes[{ev.instance_id, *ev.activity_id}];
        if (ev.kind == EngineEventKind::ActivityStarted) ep.started = ev.at;
        if (ev.kind == EngineEventKind::ActivityCompleted) ep.completed = ev.at;
        if (ev.kind == EngineEventKind::SearchPerformed && in_scope(ev, calc.scope))
          ep.search_hit = true;
        break;
      }
      case IndicatorKindTag::ExchangeTypeProfile:
        if (ev.kind == EngineEventKind::ExchangePerformed && in_scope(ev, calc.scope))
          result.histogram[ev.detail.empty() ? "message" : ev.detail] += 1;
        break;
      case IndicatorKindTag::UserCount:
        if (!ev.actor_id.empty() && in_scope(ev, calc.scope)) actors.insert(ev.actor_id);
        break;
      case IndicatorKindTag::ExploitationAbility:
        if (!ev.actor_id.empty()) kinds_by_actor[ev.actor_id].insert(ev.kind);
        break;
      case IndicatorKindTag::UseStability:
        if (in_scope(ev, calc.scope)) event_times.push_back(ev.at);
        break;
    }
  }
  result.at = newest;

  switch (calc.kind) {
    case IndicatorKindTag::ChangeRequestsPerObject:
    case IndicatorKindTag::ValidationRequestsPerObject:
    case IndicatorKindTag::MissedDeadlineCount:
    case IndicatorKindTag::ProcessModificationCount:
      result.value = static_cast<double>(count);
      break;
    case IndicatorKindTag::TimeOnTask:
      for (const auto& [key, ep] : episodes)
        if (ep.started && ep.completed) time_sum += static_cast<double>(*ep.completed - *ep.started);
      result.value = time_sum;
      break;
    case IndicatorKindTag::InfoSearchTime:
      for (const auto& [key, ep] : episodes)
        if (ep.search_hit && ep.started && ep.completed)
          time_sum += static_cast<double>(*ep.completed - *ep.started);
      result.value = time_sum;
      break;
    case IndicatorKindTag::ExchangeTypeProfile:
      result.is_histogram = true;
      result.value = 0.0;
      for (const auto& [label, c] : result.histogram) result.value += static_cast<double>(c);
      break;
    case IndicatorKindTag::UserCount:
      result.value = static_cast<double>(actors.size());
      break;
    case IndicatorKindTag::ExploitationAbility: {
      if (kinds_by_actor.empty()) {
        result.value = 0.0;
        break;
      }
      double sum = 0.0;
      for (const auto& [actor, kinds] : kinds_by_actor)
        sum += static_cast<double>(kinds.size()) / kEngineEventKindCount;
      result.value = sum / static_cast<double>(kinds_by_actor.size());
      break;
    }
    case IndicatorKindTag::UseStability: {
      if (event_times.empty()) {
        result.value = 1.0;  // nothing happened, nothing varied
        break;
      }
      SimTime start, end;
      if (window) {
        start = window->start;
        end = window->end;
      } else {
        auto [lo, hi] = std::minmax_element(event_times.begin(), event_times.end());
        start = *lo;
        end = *hi;
      }
      const SimTime span = end - start + 1;
      std::vector<std::int64_t> buckets(kStabilitySubWindows, 0);
      for (SimTime t : event_times) {
        auto b = static_cast<std::size_t>((t - start) * kStabilitySubWindows / span);
        buckets[std::min<std::size_t>(b, kStabilitySubWindows - 1)] += 1;
      }
      double mean = 0.0;
      for (auto b : buckets) mean += static_cast<double>(b);
      mean /= kStabilitySubWindows;
      double variance = 0.0;
      for (auto b : buckets) {
        const double d = static_cast<double>(b) - mean;
        variance += d * d;
      }
      variance /= kStabilitySubWindows;
      result.value = 1.0 / (1.0 + variance);
      break;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

std::optional<TimeWindow> resolve_window(const Indicator& indicator, const TraceStore& store) {
  if (!indicator.window) return std::nullopt;
  const std::size_t n = store.size();
  if (n == 0) return std::nullopt;
  SimTime newest = store.at(0).event.at;
  for (Seq s = 1; s < n; ++s) newest = std::max(newest, store.at(s).event.at);
  return TimeWindow{newest - *indicator.window, newest};
}

bool scope_kind_allowed(IndicatorKindTag tag, ScopeKind kind) {
  switch (tag) {
    case IndicatorKindTag::ChangeRequestsPerObject:
    case IndicatorKindTag::ValidationRequestsPerObject:
    case IndicatorKindTag::InfoSearchTime:
      return kind == ScopeKind::Object;
    case IndicatorKindTag::TimeOnTask:
      return kind == ScopeKind::Activity;
    case IndicatorKindTag::ProcessModificationCount:
      return kind == ScopeKind::Process;
    case IndicatorKindTag::MissedDeadlineCount:
      return kind == ScopeKind::Activity || kind == ScopeKind::Process ||
             kind == ScopeKind::Global;
    case IndicatorKindTag::ExchangeTypeProfile:
    case IndicatorKindTag::UserCount:
    case IndicatorKindTag::UseStability:
      return kind == ScopeKind::Global || kind == ScopeKind::Process;
    case IndicatorKindTag::ExploitationAbility:
      return kind == ScopeKind::Global;
  }
  return false;
}

bool threshold_crossed(const Threshold& threshold, const IndicatorValue& value) {
  if (value.is_histogram) return false;  // categorical, cannot bear a threshold
  if (value.events_seen == 0) return false;
  return threshold.direction == ThresholdDirection::AtLeast
             ? value.value >= threshold.value
             : value.value <= threshold.value;
}

std::optional<Breach> check(const Indicator& indicator, const TraceStore& store) {
  auto value = evaluate(indicator.calculation, store, resolve_window(indicator, store));
  value.indicator_id = indicator.id;
  if (!threshold_crossed(indicator.threshold, value)) return std::nullopt;
  return Breach{indicator.id, std::move(value), indicator.threshold};
}

}  // namespace collabflow
