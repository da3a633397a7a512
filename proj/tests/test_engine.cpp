// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <random>

#include "doctest.h"

#include "collabflow/engine.hpp"
#include "collabflow/errors.hpp"
#include "collabflow/json_io.hpp"
#include "collabflow/observation.hpp"
#include "support/builders.hpp"

using namespace collabflow;
namespace ts = collabflow::testsupport;

namespace {

std::vector<EngineEventKind> kinds_of(const std::vector<EngineEvent>& events) {
  std::vector<EngineEventKind> out;
  for (const auto& ev : events) out.push_back(ev.kind);
  return out;
}

std::string dump_trace(const TraceStore& store) {
  std::ostringstream os;
  write_trace_jsonl(store, os);
  return os.str();
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("instantiate enables the single start of a linear chain") {
  auto world = ts::simple_world();
  auto def = std::make_shared<const ProcessDefinition>(ts::linear_chain(3));
  TraceStore store;
  auto instance = instantiate(def, ts::doc_bindings(), 0, "i-1", store);
  CHECK(instance.state_of("a1") == ActivityState::Enabled);
  CHECK(instance.state_of("a2") == ActivityState::Pending);
  CHECK(instance.state_of("a3") == ActivityState::Pending);
  REQUIRE(store.size() == 1);
  CHECK(store.at(0).event.kind == EngineEventKind::ActivityEnabled);
}

TEST_CASE("instantiate enables the entry activity of a systemic definition") {
  ProcessDefinition def;
  def.id = "p.sys";
  def.structuring = Structuring::Systemic;
  def.activities = {ts::activity("s1", ActivityKind::Task, "r", {}, {"Doc"}),
                    ts::activity("s2", ActivityKind::Task, "r", {}, {"Doc"})};
  def.activities[0].entry = true;
  def.triggers.push_back({{EngineEventKind::ActivityCompleted, std::nullopt}, "s2"});
  TraceStore store;
  auto instance = instantiate(std::make_shared<const ProcessDefinition>(def),
                              ts::doc_bindings(), 0, "i-1", store);
  CHECK(instance.state_of("s1") == ActivityState::Enabled);
  CHECK(instance.state_of("s2") == ActivityState::Pending);
}

TEST_CASE("instantiate enables every in-degree-zero activity") {
  // Oracle: the in-degree-zero scan over the transition list.
  ProcessDefinition def = ts::linear_chain(3);
  def.activities.push_back(ts::activity("b1", ActivityKind::Task, "r", {}, {"Doc"}));
  def.transitions.push_back({"b1", "a2", ""});  // two parallel starts: a1, b1
  TraceStore store;
  auto instance = instantiate(std::make_shared<const ProcessDefinition>(def),
                              ts::doc_bindings(), 0, "i-1", store);
  std::set<ActivityId> expected;
  for (const auto& a : def.activities)
    if (def.predecessors(a.id).empty()) expected.insert(a.id);
  for (const auto& a : def.activities)
    CHECK((instance.state_of(a.id) == ActivityState::Enabled) == (expected.count(a.id) > 0));
}

TEST_CASE("instantiate rejects emerging definitions and missing bindings") {
  ProcessDefinition emerging;
  emerging.id = "p.em";
  emerging.structuring = Structuring::Emerging;
  emerging.activities = {ts::activity("e1", ActivityKind::Task, "r", {}, {})};
  TraceStore store;
  CHECK_THROWS_AS(instantiate(std::make_shared<const ProcessDefinition>(emerging), {}, 0,
                              "i-1", store),
                  DefinitionInvalidError);

  auto chain = ts::linear_chain(2);
  chain.activities[0].inputs = {"Doc"};
  CHECK_THROWS_AS(instantiate(std::make_shared<const ProcessDefinition>(chain), {}, 0, "i-1",
                              store),
                  MissingBindingError);
}

TEST_CASE("perform completes an activity and enables its successor") {
  auto world = ts::simple_world();
  auto def = std::make_shared<const ProcessDefinition>(ts::linear_chain(3));
  TraceStore store;
  auto instance = instantiate(def, ts::doc_bindings(), 0, "i-1", store);

  auto events = perform(instance, "a1", world.actors.at("u1"), world.roles, world.objects, 3,
                        store);
  CHECK(instance.state_of("a1") == ActivityState::Completed);
  CHECK(instance.state_of("a2") == ActivityState::Enabled);
  CHECK(instance.clock == 3);
  CHECK(kinds_of(events) ==
        std::vector<EngineEventKind>{
            EngineEventKind::ActivityStarted, EngineEventKind::ObjectModified,
            EngineEventKind::ActivityCompleted, EngineEventKind::ActivityEnabled});
  CHECK(world.objects.at("o.doc").version == 1);
}

TEST_CASE("perform emits DeadlineMissed when the duration overruns") {
  auto world = ts::simple_world();
  auto def = ts::linear_chain(1);
  def.activities[0].kind = ActivityKind::Validation;
  def.activities[0].expected_duration = 3;
  TraceStore store;
  auto instance = instantiate(std::make_shared<const ProcessDefinition>(def),
                              ts::doc_bindings(), 0, "i-1", store);
  auto events = perform(instance, "a1", world.actors.at("u1"), world.roles, world.objects, 5,
                        store);
  auto kinds = kinds_of(events);
  CHECK(std::count(kinds.begin(), kinds.end(), EngineEventKind::DeadlineMissed) == 1);
  CHECK(std::count(kinds.begin(), kinds.end(), EngineEventKind::ValidationRequested) == 1);
}

TEST_CASE("kind-specific events carry the touched objects") {
  auto world = ts::simple_world();
  ProcessDefinition def;
  def.id = "p.kinds";
  def.structuring = Structuring::Mechanistic;
  def.activities = {
      ts::activity("c1", ActivityKind::ChangeRequest, "r", {}, {"Doc"}),
      ts::activity("s1", ActivityKind::InformationSearch, "r", {"Doc"}, {}),
      ts::activity("x1", ActivityKind::Exchange, "r", {}, {}),
  };
  def.activities[2].exchange_type = "meeting";
  def.transitions = {{"c1", "s1", ""}, {"s1", "x1", ""}};
  TraceStore store;
  auto instance = instantiate(std::make_shared<const ProcessDefinition>(def),
                              ts::doc_bindings(), 0, "i-1", store);

  auto ev1 = perform(instance, "c1", world.actors.at("u1"), world.roles, world.objects, 1,
                     store);
  bool change_on_doc = false;
  for (const auto& ev : ev1)
    if (ev.kind == EngineEventKind::ChangeRequested && ev.object_id == ObjectId("o.doc"))
      change_on_doc = true;
  CHECK(change_on_doc);

  auto ev2 = perform(instance, "s1", world.actors.at("u1"), world.roles, world.objects, 1,
                     store);
  bool search_on_doc = false;
  for (const auto& ev : ev2)
    if (ev.kind == EngineEventKind::SearchPerformed && ev.object_id == ObjectId("o.doc"))
      search_on_doc = true;
  CHECK(search_on_doc);

  auto ev3 = perform(instance, "x1", world.actors.at("u1"), world.roles, world.objects, 1,
                     store);
  bool exchange_meeting = false;
  for (const auto& ev : ev3)
    if (ev.kind == EngineEventKind::ExchangePerformed && ev.detail == "meeting")
      exchange_meeting = true;
  CHECK(exchange_meeting);
}

TEST_CASE("a diamond join waits for both branches under every interleaving") {
  // Oracle: exhaustive enumeration of the two possible interleavings.
  for (bool a2_first : {true, false}) {
    auto world = ts::simple_world();
    ProcessDefinition def;
    def.id = "p.diamond";
    def.structuring = Structuring::Mechanistic;
    def.activities = {ts::activity("a1", ActivityKind::Task, "r", {}, {"Doc"}),
                      ts::activity("a2", ActivityKind::Task, "r", {}, {"Doc"}),
                      ts::activity("a3", ActivityKind::Task, "r", {}, {"Doc"}),
                      ts::activity("a4", ActivityKind::Task, "r", {}, {"Doc"})};
    def.transitions = {{"a1", "a2", ""}, {"a1", "a3", ""}, {"a2", "a4", ""}, {"a3", "a4", ""}};
    TraceStore store;
    auto instance = instantiate(std::make_shared<const ProcessDefinition>(def),
                                ts::doc_bindings(), 0, "i-1", store);
    auto& u1 = world.actors.at("u1");
    perform(instance, "a1", u1, world.roles, world.objects, 1, store);
    perform(instance, a2_first ? "a2" : "a3", u1, world.roles, world.objects, 1, store);
    CHECK(instance.state_of("a4") == ActivityState::Pending);
    perform(instance, a2_first ? "a3" : "a2", u1, world.roles, world.objects, 1, store);
    CHECK(instance.state_of("a4") == ActivityState::Enabled);
  }
}

TEST_CASE("perform refuses non-enabled activities") {
  auto world = ts::simple_world();
  auto def = std::make_shared<const ProcessDefinition>(ts::linear_chain(3));
  TraceStore store;
  auto instance = instantiate(def, ts::doc_bindings(), 0, "i-1", store);
  CHECK_THROWS_AS(perform(instance, "a2", world.actors.at("u1"), world.roles, world.objects,
                          1, store),
                  NotEnabledError);
  perform(instance, "a1", world.actors.at("u1"), world.roles, world.objects, 1, store);
  CHECK_THROWS_AS(perform(instance, "a1", world.actors.at("u1"), world.roles, world.objects,
                          1, store),
                  NotEnabledError);
}

TEST_CASE("denied access is traced before the error surfaces") {
  auto world = ts::simple_world();
  RoleTable roles = world.roles;
  roles["reader"] = Role{"reader", "reader", {{"Doc", Permission::Read}}};
  Actor intruder{"eve", "eve", {"reader"}, false};

  auto def = std::make_shared<const ProcessDefinition>(ts::linear_chain(1));
  TraceStore store;
  auto instance = instantiate(def, ts::doc_bindings(), 0, "i-1", store);
  const auto before = store.size();
  CHECK_THROWS_AS(perform(instance, "a1", intruder, roles, world.objects, 1, store),
                  AccessDeniedError);
  REQUIRE(store.size() == before + 1);
  const auto& denied = store.at(before).event;
  CHECK(denied.kind == EngineEventKind::ObjectAccessed);
  CHECK(denied.detail == "denied");
  CHECK(denied.actor_id == "eve");
  CHECK(instance.state_of("a1") == ActivityState::Enabled);  // still performable
}

TEST_CASE("run_to_completion drains a chain deterministically") {
  auto world = ts::simple_world(3);
  auto policy = ts::fixed_policy(world);
  policy.durations[ActivityKind::Task] = {DurationDistribution::Kind::Uniform, 0, 1, 5};

  auto run_once = [&](std::uint64_t seed) {
    auto objects = world.objects;
    TraceStore store;
    auto instance = instantiate(std::make_shared<const ProcessDefinition>(ts::linear_chain(3)),
                                ts::doc_bindings(), 0, "i-1", store);
    run_to_completion(instance, policy, seed, objects, store);
    CHECK(instance.all_completed());
    return dump_trace(store);
  };

  CHECK(run_once(42) == run_once(42));      // byte-identical traces
  CHECK(run_once(42) != run_once(43));      // and the seed matters
}

TEST_CASE("run_to_completion reports a stalled systemic instance") {
  ProcessDefinition def;
  def.id = "p.stuck";
  def.structuring = Structuring::Systemic;
  def.activities = {ts::activity("s1", ActivityKind::Task, "r", {}, {"Doc"}),
                    ts::activity("s2", ActivityKind::Task, "r", {}, {"Doc"})};
  def.activities[0].entry = true;
  // Trigger pattern that can never match: s2 waits for a change request.
  def.triggers.push_back({{EngineEventKind::ChangeRequested, std::nullopt}, "s2"});

  // Oracle: no activity of the definition can emit ChangeRequested, so s2 is
  // unreachable under execution.
  bool reachable = false;
  for (const auto& a : def.activities)
    reachable = reachable || a.kind == ActivityKind::ChangeRequest;
  CHECK_FALSE(reachable);

  auto world = ts::simple_world();
  auto policy = ts::fixed_policy(world);
  TraceStore store;
  auto instance = instantiate(std::make_shared<const ProcessDefinition>(def),
                              ts::doc_bindings(), 0, "i-1", store);
  CHECK_THROWS_AS(run_to_completion(instance, policy, 1, world.objects, store), StalledError);
}

TEST_CASE("systemic triggers fire on events of the same perform call") {
  ProcessDefinition def;
  def.id = "p.sys";
  def.structuring = Structuring::Systemic;
  def.activities = {ts::activity("s1", ActivityKind::Task, "r", {}, {"Doc"}),
                    ts::activity("s2", ActivityKind::Task, "r", {}, {"Spec"}),
                    ts::activity("s3", ActivityKind::Task, "r", {}, {"Spec"})};
  def.activities[0].entry = true;
  def.triggers.push_back({{EngineEventKind::ObjectModified, ObjectClass("Doc")}, "s2"});
  def.triggers.push_back({{EngineEventKind::ObjectModified, ObjectClass("Doc")}, "s3"});

  auto world = ts::simple_world();
  TraceStore store;
  auto instance = instantiate(std::make_shared<const ProcessDefinition>(def),
                              ts::doc_bindings(), 0, "i-1", store);
  perform(instance, "s1", world.actors.at("u1"), world.roles, world.objects, 2, store);
  CHECK(instance.state_of("s2") == ActivityState::Enabled);
  CHECK(instance.state_of("s3") == ActivityState::Enabled);
  // s2 modifies Spec only; nothing further may fire.
  perform(instance, "s2", world.actors.at("u1"), world.roles, world.objects, 2, store);
  CHECK(instance.state_of("s3") == ActivityState::Enabled);
}

TEST_CASE("mechanistic soundness: random valid DAGs always run to completion") {
  std::mt19937_64 rng(2024);
  auto world = ts::simple_world(2);
  auto policy = ts::fixed_policy(world);
  for (int trial = 0; trial < 40; ++trial) {
    auto def = ts::random_sound_dag(rng);
    auto objects = world.objects;
    TraceStore store;
    auto instance = instantiate(std::make_shared<const ProcessDefinition>(def),
                                ts::doc_bindings(), 0, "i-1", store);
    auto events = run_to_completion(instance, policy, rng(), objects, store);
    CHECK(instance.all_completed());

    // Event conservation: exactly one completion per activity, and at least
    // a start and a completion per perform.
    std::map<ActivityId, int> completions;
    int starts = 0;
    for (const auto& ev : events) {
      if (ev.kind == EngineEventKind::ActivityCompleted) completions[*ev.activity_id] += 1;
      if (ev.kind == EngineEventKind::ActivityStarted) ++starts;
    }
    CHECK(starts == static_cast<int>(def.activities.size()));
    for (const auto& a : def.activities) CHECK(completions[a.id] == 1);

    // Version monotonicity per object.
    std::map<ObjectId, std::int64_t> last_version;
    for (const auto& ev : events) {
      if (ev.kind != EngineEventKind::ObjectModified) continue;
      auto it = last_version.find(*ev.object_id);
      if (it != last_version.end()) CHECK(*ev.version > it->second);
      last_version[*ev.object_id] = *ev.version;
    }
  }
}

TEST_CASE("reconstruct_emerging groups and orders per instance") {
  CHECK(reconstruct_emerging(std::vector<EngineEvent>{}).empty());

  auto world = ts::simple_world();
  auto policy = ts::fixed_policy(world);
  TraceStore store;
  auto instance = instantiate(std::make_shared<const ProcessDefinition>(ts::linear_chain(2)),
                              ts::doc_bindings(), 0, "i-1", store);
  run_to_completion(instance, policy, 5, world.objects, store);
  auto sequences = reconstruct_emerging(store);
  REQUIRE(sequences.count("i-1"));
  CHECK(sequences.at("i-1") == std::vector<ActivityId>{"a1", "a2"});
}

TEST_CASE("reconstruct_emerging partitions interleaved instances") {
  // Oracle: group by instance, then sort by (at, position).
  std::vector<EngineEvent> trace;
  auto completed = [](InstanceId instance, ActivityId activity, SimTime at) {
    EngineEvent ev;
    ev.kind = EngineEventKind::ActivityCompleted;
    ev.instance_id = std::move(instance);
    ev.activity_id = std::move(activity);
    ev.at = at;
    return ev;
  };
  trace.push_back(completed("i-2", "b1", 1));
  trace.push_back(completed("i-1", "a1", 2));
  trace.push_back(completed("i-2", "b2", 2));  // tie with a1: position decides within i-2
  trace.push_back(completed("i-1", "a2", 5));
  trace.push_back(completed("i-2", "b3", 4));

  auto sequences = reconstruct_emerging(trace);
  REQUIRE(sequences.size() == 2);
  CHECK(sequences.at("i-1") == std::vector<ActivityId>{"a1", "a2"});
  CHECK(sequences.at("i-2") == std::vector<ActivityId>{"b1", "b2", "b3"});
}

TEST_CASE("a mechanistic run reconstructs to a topological order") {
  std::mt19937_64 rng(31);
  auto world = ts::simple_world();
  auto policy = ts::fixed_policy(world);
  for (int trial = 0; trial < 20; ++trial) {
    auto def = ts::random_sound_dag(rng);
    auto objects = world.objects;
    TraceStore store;
    auto instance = instantiate(std::make_shared<const ProcessDefinition>(def),
                                ts::doc_bindings(), 0, "i-1", store);
    run_to_completion(instance, policy, rng(), objects, store);
    auto sequence = reconstruct_emerging(store).at("i-1");
    std::map<ActivityId, std::size_t> position;
    for (std::size_t i = 0; i < sequence.size(); ++i) position[sequence[i]] = i;
    for (const auto& t : def.transitions) CHECK(position.at(t.from) < position.at(t.to));
  }
}

}  // TEST_SUITE
