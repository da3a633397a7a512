// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "collabflow/metamodel.hpp"
#include "collabflow/observation.hpp"

namespace collabflow {

/// Number of equal sub-windows the stability metric splits its window into.
inline constexpr int kStabilitySubWindows = 10;

/// The collaborative weight: delta_c = sum_j alpha_j * A_j over the listed
/// criteria. Weights are non-negative and finite.
struct WeightFunction {
  std::vector<std::pair<std::string, double>> weights;  // (criterion id, alpha)
};

/// Exact weighted sum; criteria missing from the stats contribute 0.
double delta_c(const WeightFunction& wf, const ObjectUsageStats& stats);

/// Objects whose weight reaches the cutoff (inclusive), in ascending id order.
std::vector<ObjectId> select_collaborative_objects(
    const WeightFunction& wf, const std::map<ObjectId, ObjectUsageStats>& all_stats,
    double cutoff);

/// Closed interval of simulated time.
struct TimeWindow {
  SimTime start = 0;
  SimTime end = 0;
  bool contains(SimTime t) const { return t >= start && t <= end; }
};

using Histogram = std::map<std::string, std::int64_t>;

struct IndicatorValue {
  IndicatorId indicator_id;
  double value = 0.0;
  Histogram histogram;        // ExchangeTypeProfile only
  bool is_histogram = false;
  Seq seq_begin = 0;          // computed over store positions [seq_begin, seq_end)
  Seq seq_end = 0;
  std::int64_t events_seen = 0;  // events inside the window
  std::optional<TimeWindow> window;
  SimTime at = 0;             // newest event time in the scanned range
};

/// Evaluates one indicator kind over the store, optionally restricted to a
/// time window. Scopes that never appear yield 0 / an empty histogram.
IndicatorValue evaluate(const IndicatorCalc& calc, const TraceStore& store,
                        std::optional<TimeWindow> window = std::nullopt);

struct Breach {
  IndicatorId indicator_id;
  IndicatorValue value;
  Threshold threshold;
};

/// Inclusive threshold comparison; categorical values and values computed over
/// zero events never cross (nothing observed, nothing to flag).
bool threshold_crossed(const Threshold& threshold, const IndicatorValue& value);

/// Evaluates the indicator (resolving its window span against the newest event)
/// and reports a breach iff the threshold is crossed, inclusively. Categorical
/// indicators never breach.
std::optional<Breach> check(const Indicator& indicator, const TraceStore& store);

/// Resolves an indicator's span window against the newest event in the store.
std::optional<TimeWindow> resolve_window(const Indicator& indicator, const TraceStore& store);

/// Whether a scope kind is meaningful for an indicator kind (per-object
/// indicators take object scopes, and so on).
bool scope_kind_allowed(IndicatorKindTag tag, ScopeKind kind);

}  // namespace collabflow
