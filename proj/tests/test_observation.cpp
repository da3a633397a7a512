// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <thread>

#include "doctest.h"

#include "collabflow/json_io.hpp"
#include "collabflow/observation.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace collabflow;
namespace ts = collabflow::testsupport;

namespace {

EngineEvent touch(EngineEventKind kind, ObjectId object, ActorId actor, SimTime at) {
  EngineEvent ev;
  ev.kind = kind;
  ev.instance_id = "i-1";
  ev.process_id = "p";
  ev.activity_id = "a1";
  ev.actor_id = std::move(actor);
  ev.object_id = std::move(object);
  ev.at = at;
  return ev;
}

}  // namespace

TEST_SUITE("observation") {

TEST_CASE("collect assigns consecutive sequence numbers") {
  TraceStore store;
  CHECK(collect(store, touch(EngineEventKind::ObjectAccessed, "x", "u", 0)) == 0);
  CHECK(collect(store, touch(EngineEventKind::ObjectAccessed, "x", "u", 1)) == 1);
  CHECK(store.size() == 2);
}

TEST_CASE("concurrent producers get a contiguous total order") {
  TraceStore store;
  constexpr int kThreads = 8;
  constexpr int kPerThread = 125;
  std::vector<std::thread> threads;
  std::vector<std::vector<Seq>> seen(kThreads);
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < kPerThread; ++i)
        seen[t].push_back(
            collect(store, touch(EngineEventKind::ObjectAccessed, "x", "u", i)));
    });
  }
  for (auto& th : threads) th.join();

  // Oracle: sort all handed-out seqs and check contiguity 0..999.
  std::vector<Seq> all;
  for (const auto& v : seen) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end());
  REQUIRE(all.size() == kThreads * kPerThread);
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);
  CHECK(store.size() == all.size());
}

TEST_CASE("structure on a store without object events is empty") {
  TraceStore store;
  EngineEvent ev;
  ev.kind = EngineEventKind::ActivityStarted;
  ev.at = 0;
  store.append(ev);
  CHECK(structure(store).empty());
}

TEST_CASE("one actor with contiguous touches forms a single session") {
  TraceStore store;
  store.append(touch(EngineEventKind::ObjectAccessed, "x", "u1", 0));
  store.append(touch(EngineEventKind::ObjectModified, "x", "u1", 4));
  store.append(touch(EngineEventKind::ObjectAccessed, "x", "u1", 9));
  auto records = structure(store, 10);
  REQUIRE(records.size() == 1);
  CHECK(records[0].object_id == "x");
  REQUIRE(records[0].sessions.size() == 1);
  CHECK(records[0].sessions[0].first_at == 0);
  CHECK(records[0].sessions[0].last_at == 9);
  CHECK(records[0].labels.empty());
}

TEST_CASE("session gaps split an actor's usage") {
  TraceStore store;
  store.append(touch(EngineEventKind::ObjectAccessed, "x", "u1", 0));
  store.append(touch(EngineEventKind::ObjectAccessed, "x", "u1", 5));
  store.append(touch(EngineEventKind::ObjectAccessed, "x", "u1", 30));  // gap 25 > 10
  auto records = structure(store, 10);
  REQUIRE(records.size() == 1);
  CHECK(records[0].sessions.size() == 2);
}

TEST_CASE("alternating actors produce a multi-actor record and annotations") {
  TraceStore store;
  store.append(touch(EngineEventKind::ObjectAccessed, "x", "u1", 0));
  store.append(touch(EngineEventKind::ObjectModified, "x", "u2", 1));
  store.append(touch(EngineEventKind::ObjectAccessed, "x", "u1", 2));
  store.append(touch(EngineEventKind::ObjectModified, "x", "u2", 3));

  // Oracle: group by (object, actor) with gap splitting; both actors alternate
  // within the gap, so one session each.
  auto records = structure(store, 10);
  REQUIRE(records.size() == 1);
  CHECK(records[0].labels.count("multi-actor") == 1);
  CHECK(records[0].labels.count("contested") == 1);
  CHECK(records[0].sessions.size() == 2);
  for (Seq s = 0; s < store.size(); ++s)
    CHECK(store.at(s).annotations.at("multi-actor") == "true");
}

TEST_CASE("annotations never alter the embedded event") {
  TraceStore store;
  store.append(touch(EngineEventKind::ObjectModified, "x", "u1", 0));
  store.append(touch(EngineEventKind::ObjectAccessed, "x", "u2", 1));
  store.append(touch(EngineEventKind::ObjectAccessed, "x", "u3", 2));
  std::vector<std::string> before;
  for (Seq s = 0; s < store.size(); ++s) before.push_back(to_json(store.at(s).event).dump());
  structure(store);
  for (Seq s = 0; s < store.size(); ++s)
    CHECK(to_json(store.at(s).event).dump() == before[s]);
}

TEST_CASE("stats of an untouched object are all zero") {
  TraceStore store;
  store.append(touch(EngineEventKind::ObjectModified, "x", "u1", 0));
  auto stats = compute_stats(store, "never-seen");
  CHECK(stats.modification_count == 0);
  CHECK(stats.multi_actor_access_count == 0);
  CHECK(stats.output_flow_count == 0);
}

TEST_CASE("modifications by a single actor never count as multi-actor access") {
  TraceStore store;
  for (int i = 0; i < 4; ++i)
    store.append(touch(EngineEventKind::ObjectModified, "x", "lone", i));
  auto stats = compute_stats(store, "x");
  CHECK(stats.modification_count == 4);
  CHECK(stats.multi_actor_access_count == 0);
}

TEST_CASE("the third and later distinct actors feed the A2 criterion") {
  TraceStore store;
  store.append(touch(EngineEventKind::ObjectAccessed, "x", "u1", 0));
  store.append(touch(EngineEventKind::ObjectAccessed, "x", "u2", 1));
  store.append(touch(EngineEventKind::ObjectAccessed, "x", "u3", 2));  // counts
  store.append(touch(EngineEventKind::ObjectAccessed, "x", "u1", 3));  // rank 1, ignored
  store.append(touch(EngineEventKind::ObjectModified, "x", "u3", 4));  // counts again
  store.append(touch(EngineEventKind::ValidationRequested, "x", "u4", 5));  // wrong kind
  auto stats = compute_stats(store, "x");
  CHECK(stats.multi_actor_access_count == 2);
}

TEST_CASE("randomized traces agree with the independent single-pass oracle") {
  std::mt19937_64 rng(613);
  for (int trial = 0; trial < 25; ++trial) {
    TraceStore store;
    ts::RandomTraceOptions opt;
    opt.max_events = 200;
    ts::fill_random_trace(store, rng, opt);
    for (const auto& object : objects_in(store)) {
      auto got = compute_stats(store, object);
      auto expected = oracle::usage_stats(store, object);
      CHECK(got.modification_count == expected.modification_count);
      CHECK(got.multi_actor_access_count == expected.multi_actor_access_count);
      CHECK(got.output_flow_count == expected.output_flow_count);
    }
  }
}

TEST_CASE("modification counts are conserved across objects") {
  std::mt19937_64 rng(614);
  for (int trial = 0; trial < 10; ++trial) {
    TraceStore store;
    ts::fill_random_trace(store, rng);
    std::int64_t total = 0;
    for (const auto& object : objects_in(store))
      total += compute_stats(store, object).modification_count;
    std::int64_t expected = 0;
    for (Seq s = 0; s < store.size(); ++s) {
      const auto& ev = store.at(s).event;
      if (ev.kind == EngineEventKind::ObjectModified && ev.object_id) ++expected;
    }
    CHECK(total == expected);
  }
}

TEST_CASE("agents are pure functions of the store prefix") {
  std::mt19937_64 rng(615);
  TraceStore store;
  ts::fill_random_trace(store, rng);
  const auto objects = objects_in(store);
  REQUIRE(!objects.empty());
  const auto& object = *objects.begin();
  auto first = compute_stats(store, object);
  auto second = compute_stats(store, object);
  CHECK(first.modification_count == second.modification_count);
  CHECK(first.multi_actor_access_count == second.multi_actor_access_count);
  CHECK(first.output_flow_count == second.output_flow_count);

  auto records_a = structure(store);
  auto records_b = structure(store);
  REQUIRE(records_a.size() == records_b.size());
  for (std::size_t i = 0; i < records_a.size(); ++i) {
    CHECK(records_a[i].object_id == records_b[i].object_id);
    CHECK(records_a[i].sessions.size() == records_b[i].sessions.size());
    CHECK(records_a[i].labels == records_b[i].labels);
  }
}

TEST_CASE("trace round-trips through the line-delimited format") {
  std::mt19937_64 rng(616);
  TraceStore store;
  ts::RandomTraceOptions opt;
  opt.max_events = 120;
  ts::fill_random_trace(store, rng, opt);
  structure(store);  // add some annotations

  std::ostringstream out;
  write_trace_jsonl(store, out);
  std::istringstream in(out.str());
  TraceStore loaded;
  load_trace_jsonl(in, loaded);

  REQUIRE(loaded.size() == store.size());
  std::ostringstream out2;
  write_trace_jsonl(loaded, out2);
  CHECK(out.str() == out2.str());
}

}  // TEST_SUITE
