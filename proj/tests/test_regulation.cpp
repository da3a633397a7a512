// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"

#include "collabflow/engine.hpp"
#include "collabflow/errors.hpp"
#include "collabflow/regulation.hpp"
#include "support/builders.hpp"

using namespace collabflow;
namespace ts = collabflow::testsupport;

namespace {

struct Fixture {
  DefinitionStore defs;
  RoleTable roles;
  TraceStore store;
  RegulationContext ctx;

  explicit Fixture(const ProcessDefinition& def) {
    roles["r"] = ts::permissive_role("r", {"Doc", "Spec"});
    defs.add(def);
    ctx = {&defs, &roles, std::nullopt};
  }
};

Indicator validation_indicator(const ObjectId& object, double threshold) {
  Indicator ind;
  ind.id = "i.val." + object;
  ind.objective = "validation load on " + object;
  ind.calculation = {IndicatorKindTag::ValidationRequestsPerObject,
                     {ScopeKind::Object, object}};
  ind.threshold = {ThresholdDirection::AtLeast, threshold};
  return ind;
}

void add_validations(TraceStore& store, const ObjectId& object, int n) {
  for (int i = 0; i < n; ++i) {
    EngineEvent ev;
    ev.kind = EngineEventKind::ValidationRequested;
    ev.object_id = object;
    ev.at = i;
    store.append(ev);
  }
}

RegulationAction remove_step(const DefinitionId& process, const ActivityId& activity) {
  RegulationAction a;
  a.kind = ActionKind::RemoveValidationStep;
  a.process = process;
  a.activity_a = activity;
  return a;
}

Rule rule(const RuleId& id, const IndicatorId& indicator, RegulationAction action,
          int priority) {
  return Rule{id, indicator, std::move(action), priority};
}

RegulationCase detected_case(const Indicator& ind, const TraceStore& store) {
  auto cases = detect({ind}, store, 0);
  REQUIRE(cases.size() == 1);
  return cases[0];
}

}  // namespace

TEST_SUITE("regulation") {

TEST_CASE("detect returns no cases without breaches") {
  Fixture fx(ts::linear_chain(3));
  CHECK(detect({validation_indicator("x", 5)}, fx.store, 0).empty());
}

TEST_CASE("detect creates one Detected case per breach, ordered by id") {
  Fixture fx(ts::linear_chain(3));
  add_validations(fx.store, "x", 5);
  add_validations(fx.store, "y", 5);
  auto cases = detect({validation_indicator("y", 5), validation_indicator("x", 5),
                       validation_indicator("z", 5)},
                      fx.store, 0);
  // Oracle: filter then sort the check() outputs — z has no events, x and y breach.
  REQUIRE(cases.size() == 2);
  CHECK(cases[0].breach.indicator_id == "i.val.x");
  CHECK(cases[1].breach.indicator_id == "i.val.y");
  CHECK(cases[0].state == CaseState::Detected);
}

TEST_CASE("adapt proposes the matching rule's action") {
  auto def = ts::linear_chain(3);
  def.activities[1].kind = ActivityKind::Validation;
  Fixture fx(def);
  add_validations(fx.store, "x", 5);
  auto c = detected_case(validation_indicator("x", 5), fx.store);
  adapt(c, {rule("r1", "i.val.x", remove_step("p.chain", "a2"), 1)}, fx.ctx, 1);
  CHECK(c.state == CaseState::Adapted);
  REQUIRE(c.proposed.has_value());
  CHECK(c.proposed->activity_a == "a2");
}

TEST_CASE("lower priority number wins") {
  auto def = ts::linear_chain(4);
  def.activities[1].kind = ActivityKind::Validation;
  def.activities[2].kind = ActivityKind::Validation;
  Fixture fx(def);
  add_validations(fx.store, "x", 5);
  auto c = detected_case(validation_indicator("x", 5), fx.store);
  adapt(c,
        {rule("r2", "i.val.x", remove_step("p.chain", "a3"), 2),
         rule("r1", "i.val.x", remove_step("p.chain", "a2"), 1)},
        fx.ctx, 1);
  REQUIRE(c.proposed.has_value());
  CHECK(c.proposed->activity_a == "a2");
}

TEST_CASE("unresolvable targets fall through to the next rule or reject") {
  auto def = ts::linear_chain(3);
  def.activities[1].kind = ActivityKind::Validation;
  Fixture fx(def);
  add_validations(fx.store, "x", 5);

  // Rule 1 targets a missing activity; rule 2 resolves.
  auto c = detected_case(validation_indicator("x", 5), fx.store);
  adapt(c,
        {rule("r1", "i.val.x", remove_step("p.chain", "gone"), 1),
         rule("r2", "i.val.x", remove_step("p.chain", "a2"), 2)},
        fx.ctx, 1);
  CHECK(c.state == CaseState::Adapted);
  REQUIRE(c.proposed.has_value());
  CHECK(c.proposed->activity_a == "a2");

  // No rule resolves: straight to Rejected with the audit reason.
  auto c2 = detected_case(validation_indicator("x", 5), fx.store);
  adapt(c2, {rule("r1", "i.val.x", remove_step("p.chain", "gone"), 1)}, fx.ctx, 1);
  CHECK(c2.state == CaseState::Rejected);
  REQUIRE(!c2.audit.empty());
  CHECK(c2.audit.back().note == "NoApplicableRule");

  // RemoveValidationStep only applies to validation activities.
  auto c3 = detected_case(validation_indicator("x", 5), fx.store);
  adapt(c3, {rule("r1", "i.val.x", remove_step("p.chain", "a1"), 1)}, fx.ctx, 1);
  CHECK(c3.state == CaseState::Rejected);
}

TEST_CASE("auto acceptance accepts") {
  auto def = ts::linear_chain(3);
  def.activities[1].kind = ActivityKind::Validation;
  Fixture fx(def);
  add_validations(fx.store, "x", 5);
  auto c = detected_case(validation_indicator("x", 5), fx.store);
  adapt(c, {rule("r1", "i.val.x", remove_step("p.chain", "a2"), 1)}, fx.ctx, 1);
  Regulator reg{"reg", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};
  accept(c, reg, {}, 2);
  CHECK(c.state == CaseState::Accepted);
}

TEST_CASE("quorum acceptance is inclusive at the boundary") {
  auto def = ts::linear_chain(3);
  def.activities[1].kind = ActivityKind::Validation;
  Regulator reg{"reg", RegulatorKind::Human,
                {PolicyKind::Quorum, 0.5, {"s1", "s2", "s3", "s4"}}};

  auto run_votes = [&](std::map<ActorId, bool> votes) {
    Fixture fx(def);
    add_validations(fx.store, "x", 5);
    auto c = detected_case(validation_indicator("x", 5), fx.store);
    adapt(c, {rule("r1", "i.val.x", remove_step("p.chain", "a2"), 1)}, fx.ctx, 1);
    accept(c, reg, votes, 2);
    return c.state;
  };

  CHECK(run_votes({{"s1", true}, {"s2", true}, {"s3", false}, {"s4", false}}) ==
        CaseState::Accepted);  // 2/4 >= 0.5
  CHECK(run_votes({{"s1", true}, {"s2", false}, {"s3", false}, {"s4", false}}) ==
        CaseState::Rejected);  // 1/4 < 0.5
}

TEST_CASE("unanimity fails on a single dissent and missing votes throw") {
  auto def = ts::linear_chain(3);
  def.activities[1].kind = ActivityKind::Validation;
  Regulator reg{"reg", RegulatorKind::Human,
                {PolicyKind::Unanimous, 1.0, {"s1", "s2", "s3", "s4"}}};
  Fixture fx(def);
  add_validations(fx.store, "x", 5);

  auto c = detected_case(validation_indicator("x", 5), fx.store);
  adapt(c, {rule("r1", "i.val.x", remove_step("p.chain", "a2"), 1)}, fx.ctx, 1);
  // Oracle: all() over the vote map.
  std::map<ActorId, bool> votes{{"s1", true}, {"s2", true}, {"s3", true}, {"s4", false}};
  bool all_yes = true;
  for (const auto& [actor, vote] : votes) all_yes = all_yes && vote;
  accept(c, reg, votes, 2);
  CHECK(c.state == (all_yes ? CaseState::Accepted : CaseState::Rejected));
  CHECK(c.state == CaseState::Rejected);

  auto c2 = detected_case(validation_indicator("x", 5), fx.store);
  adapt(c2, {rule("r1", "i.val.x", remove_step("p.chain", "a2"), 1)}, fx.ctx, 1);
  CHECK_THROWS_AS(accept(c2, reg, {{"s1", true}}, 2), MissingVotesError);
}

TEST_CASE("implement removes a validation step and reconnects the chain") {
  auto def = ts::linear_chain(3);  // a1 -> a2 -> a3
  def.activities[1].kind = ActivityKind::Validation;
  Fixture fx(def);
  add_validations(fx.store, "x", 5);
  auto c = detected_case(validation_indicator("x", 5), fx.store);
  adapt(c, {rule("r1", "i.val.x", remove_step("p.chain", "a2"), 1)}, fx.ctx, 1);
  Regulator reg{"reg", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};
  accept(c, reg, {}, 2);

  const auto trace_before = fx.store.size();
  auto outcome = implement(c, fx.ctx, fx.store, 3);
  CHECK(c.state == CaseState::Implemented);
  CHECK(outcome.revision_before == 0);
  CHECK(outcome.revision_after == 1);

  auto latest = fx.defs.latest("p.chain");
  CHECK(latest->revision == 1);
  CHECK(latest->find_activity("a2") == nullptr);
  REQUIRE(latest->transitions.size() == 1);
  CHECK(latest->transitions[0].from == "a1");
  CHECK(latest->transitions[0].to == "a3");
  CHECK(validate_definition(*latest, fx.roles).empty());

  // The audit event is on the trace and visible to ProcessModificationCount.
  REQUIRE(fx.store.size() == trace_before + 1);
  CHECK(fx.store.at(trace_before).event.kind == EngineEventKind::DefinitionRevised);
  CHECK(fx.store.at(trace_before).event.process_id == "p.chain");
}

TEST_CASE("granting a right flips check_access") {
  auto def = ts::linear_chain(2);
  Fixture fx(def);
  fx.roles["weak"] = Role{"weak", "weak", {}};
  add_validations(fx.store, "x", 5);
  auto c = detected_case(validation_indicator("x", 5), fx.store);
  RegulationAction grant;
  grant.kind = ActionKind::GrantAccessRight;
  grant.role = "weak";
  grant.right = {"Doc", Permission::Validate};
  adapt(c, {rule("r1", "i.val.x", grant, 1)}, fx.ctx, 1);
  Regulator reg{"reg", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};
  accept(c, reg, {}, 2);

  Actor actor{"u", "u", {"weak"}, false};
  CHECK_FALSE(check_access(actor, fx.roles, Permission::Validate, "Doc"));
  auto outcome = implement(c, fx.ctx, fx.store, 3);
  CHECK(outcome.role_mutated);
  CHECK_FALSE(outcome.definition_mutated);
  CHECK(check_access(actor, fx.roles, Permission::Validate, "Doc"));
  CHECK(fx.defs.latest("p.chain")->revision == 0);  // no definition touched
}

TEST_CASE("removing a sole-path validation keeps the DAG runnable") {
  // a1 -> v -> a4 with a side branch a1 -> a3 -> a4; v is kind Validation.
  ProcessDefinition def;
  def.id = "p.diamond";
  def.structuring = Structuring::Mechanistic;
  def.activities = {ts::activity("a1", ActivityKind::Task, "r", {}, {"Doc"}),
                    ts::activity("v", ActivityKind::Validation, "r", {}, {"Doc"}),
                    ts::activity("a3", ActivityKind::Task, "r", {}, {"Doc"}),
                    ts::activity("a4", ActivityKind::Task, "r", {}, {"Doc"})};
  def.transitions = {{"a1", "v", ""}, {"v", "a4", ""}, {"a1", "a3", ""}, {"a3", "a4", ""}};
  Fixture fx(def);
  add_validations(fx.store, "x", 5);
  auto c = detected_case(validation_indicator("x", 5), fx.store);
  adapt(c, {rule("r1", "i.val.x", remove_step("p.diamond", "v"), 1)}, fx.ctx, 1);
  Regulator reg{"reg", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};
  accept(c, reg, {}, 2);
  implement(c, fx.ctx, fx.store, 3);

  auto latest = fx.defs.latest("p.diamond");
  CHECK(validate_definition(*latest, fx.roles).empty());

  // Soundness probe: the mutated definition still runs to completion.
  auto world = ts::simple_world();
  auto policy = ts::fixed_policy(world);
  TraceStore probe;
  auto instance = instantiate(latest, ts::doc_bindings(), 0, "i-p", probe);
  run_to_completion(instance, policy, 7, world.objects, probe);
  CHECK(instance.all_completed());
}

TEST_CASE("merge fuses inputs, outputs and durations") {
  auto def = ts::linear_chain(3);
  def.activities[1].inputs = {"Doc"};
  def.activities[1].outputs = {"Doc"};
  def.activities[2].inputs = {"Spec"};
  def.activities[2].outputs = {"Spec"};
  def.activities[1].expected_duration = 4;
  def.activities[2].expected_duration = 5;
  Fixture fx(def);
  add_validations(fx.store, "x", 5);
  auto c = detected_case(validation_indicator("x", 5), fx.store);
  RegulationAction merge;
  merge.kind = ActionKind::MergeActivities;
  merge.process = "p.chain";
  merge.activity_a = "a2";
  merge.activity_b = "a3";
  adapt(c, {rule("r1", "i.val.x", merge, 1)}, fx.ctx, 1);
  Regulator reg{"reg", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};
  accept(c, reg, {}, 2);
  implement(c, fx.ctx, fx.store, 3);

  auto latest = fx.defs.latest("p.chain");
  CHECK(latest->find_activity("a3") == nullptr);
  const Activity* merged = latest->find_activity("a2");
  REQUIRE(merged);
  CHECK(merged->expected_duration == 9);
  CHECK(merged->inputs == std::set<ObjectClass>{"Doc", "Spec"});
  CHECK(merged->outputs == std::set<ObjectClass>{"Doc", "Spec"});
  CHECK(validate_definition(*latest, fx.roles).empty());
}

TEST_CASE("parallelize turns a sequence into a fork-join") {
  auto def = ts::linear_chain(4);  // a1 -> a2 -> a3 -> a4
  for (auto& a : def.activities) a.inputs.clear();
  Fixture fx(def);
  add_validations(fx.store, "x", 5);
  auto c = detected_case(validation_indicator("x", 5), fx.store);
  RegulationAction par;
  par.kind = ActionKind::ParallelizeActivities;
  par.process = "p.chain";
  par.activity_a = "a2";
  par.activity_b = "a3";
  adapt(c, {rule("r1", "i.val.x", par, 1)}, fx.ctx, 1);
  Regulator reg{"reg", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};
  accept(c, reg, {}, 2);
  implement(c, fx.ctx, fx.store, 3);

  auto latest = fx.defs.latest("p.chain");
  CHECK(validate_definition(*latest, fx.roles).empty());
  CHECK(latest->predecessors("a2") == std::vector<ActivityId>{"a1"});
  CHECK(latest->predecessors("a3") == std::vector<ActivityId>{"a1"});
  CHECK(latest->successors("a2") == std::vector<ActivityId>{"a4"});
  CHECK(latest->successors("a3") == std::vector<ActivityId>{"a4"});
}

TEST_CASE("notification activities are appended after their target") {
  auto def = ts::linear_chain(2);
  Fixture fx(def);
  add_validations(fx.store, "x", 5);
  auto c = detected_case(validation_indicator("x", 5), fx.store);
  RegulationAction notify;
  notify.kind = ActionKind::AddNotification;
  notify.process = "p.chain";
  notify.activity_a = "a1";
  notify.notify = {"u1"};
  adapt(c, {rule("r1", "i.val.x", notify, 1)}, fx.ctx, 1);
  Regulator reg{"reg", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};
  accept(c, reg, {}, 2);
  implement(c, fx.ctx, fx.store, 3);

  auto latest = fx.defs.latest("p.chain");
  const Activity* added = latest->find_activity("a1.notify");
  REQUIRE(added);
  CHECK(added->kind == ActivityKind::Exchange);
  CHECK(added->expected_duration == 0);
  CHECK(validate_definition(*latest, fx.roles).empty());
  auto succ = latest->successors("a1");
  CHECK(std::find(succ.begin(), succ.end(), "a1.notify") != succ.end());
}

TEST_CASE("reassigning a validation role to a weak role is unsound and atomic") {
  auto def = ts::linear_chain(2);
  def.activities[1].kind = ActivityKind::Validation;
  Fixture fx(def);
  fx.roles["weak"] = Role{"weak", "weak", {{"Doc", Permission::Read}}};
  add_validations(fx.store, "x", 5);
  auto c = detected_case(validation_indicator("x", 5), fx.store);
  RegulationAction reassign;
  reassign.kind = ActionKind::ReassignRole;
  reassign.process = "p.chain";
  reassign.activity_a = "a2";
  reassign.role = "weak";
  adapt(c, {rule("r1", "i.val.x", reassign, 1)}, fx.ctx, 1);
  Regulator reg{"reg", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};
  accept(c, reg, {}, 2);

  CHECK_THROWS_AS(implement(c, fx.ctx, fx.store, 3), MutationUnsoundError);
  CHECK(fx.defs.latest("p.chain")->revision == 0);
  CHECK(c.state == CaseState::Accepted);  // never reached Implemented
  CHECK(c.annotation.find("MutationUnsound") == 0);
}

TEST_CASE("state machine rejects out-of-order operations") {
  auto def = ts::linear_chain(3);
  def.activities[1].kind = ActivityKind::Validation;
  Fixture fx(def);
  add_validations(fx.store, "x", 5);
  Regulator reg{"reg", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};
  std::vector<Rule> rules{rule("r1", "i.val.x", remove_step("p.chain", "a2"), 1)};

  auto c = detected_case(validation_indicator("x", 5), fx.store);
  CHECK_THROWS_AS(accept(c, reg, {}, 0), InvalidStateError);       // Detected -> accept
  CHECK_THROWS_AS(implement(c, fx.ctx, fx.store, 0), InvalidStateError);
  adapt(c, rules, fx.ctx, 0);
  CHECK_THROWS_AS(adapt(c, rules, fx.ctx, 0), InvalidStateError);  // Adapted -> adapt
  CHECK_THROWS_AS(implement(c, fx.ctx, fx.store, 0), InvalidStateError);
  accept(c, reg, {}, 0);
  CHECK_THROWS_AS(adapt(c, rules, fx.ctx, 0), InvalidStateError);
  CHECK_THROWS_AS(accept(c, reg, {}, 0), InvalidStateError);
  implement(c, fx.ctx, fx.store, 0);
  CHECK_THROWS_AS(implement(c, fx.ctx, fx.store, 0), InvalidStateError);  // terminal
  CHECK(c.state == CaseState::Implemented);
}

TEST_CASE("random operation sequences stay inside the legal order") {
  std::mt19937_64 rng(4242);
  auto def = ts::linear_chain(3);
  def.activities[1].kind = ActivityKind::Validation;
  Regulator reg{"reg", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};

  for (int trial = 0; trial < 300; ++trial) {
    Fixture fx(def);
    add_validations(fx.store, "x", 5);
    std::vector<Rule> rules{rule("r1", "i.val.x", remove_step("p.chain", "a2"), 1)};
    auto c = detected_case(validation_indicator("x", 5), fx.store);
    for (int step = 0; step < 8; ++step) {
      const auto op = rng() % 3;
      const CaseState state_before = c.state;
      try {
        if (op == 0) adapt(c, rules, fx.ctx, step);
        else if (op == 1) accept(c, reg, {}, step);
        else implement(c, fx.ctx, fx.store, step);
        // A successful call must be one of the legal transitions.
        const bool legal =
            (state_before == CaseState::Detected && op == 0 &&
             (c.state == CaseState::Adapted || c.state == CaseState::Rejected)) ||
            (state_before == CaseState::Adapted && op == 1 &&
             (c.state == CaseState::Accepted || c.state == CaseState::Rejected)) ||
            (state_before == CaseState::Accepted && op == 2 &&
             c.state == CaseState::Implemented);
        CHECK(legal);
      } catch (const InvalidStateError&) {
        CHECK(c.state == state_before);  // rejected calls change nothing
      }
    }
  }
}

TEST_CASE("only accepted cases mutate the stores") {
  auto def = ts::linear_chain(3);
  def.activities[1].kind = ActivityKind::Validation;
  Fixture fx(def);
  add_validations(fx.store, "x", 5);
  Regulator reg{"reg", RegulatorKind::Human, {PolicyKind::Unanimous, 1.0, {"s1"}}};
  auto report = regulation_cycle({validation_indicator("x", 5)},
                                 {rule("r1", "i.val.x", remove_step("p.chain", "a2"), 1)},
                                 reg, {{"s1", false}}, fx.ctx, fx.store, 9);
  REQUIRE(report.cases.size() == 1);
  CHECK(report.cases[0].regulation_case.state == CaseState::Rejected);
  CHECK(report.definition_mutations == 0);
  CHECK(fx.defs.latest("p.chain")->revision == 0);
}

TEST_CASE("a full cycle implements an applicable auto-accepted rule") {
  auto def = ts::linear_chain(3);
  def.activities[1].kind = ActivityKind::Validation;
  Fixture fx(def);
  add_validations(fx.store, "x", 5);
  Regulator reg{"reg", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};

  auto empty = regulation_cycle({validation_indicator("x", 100)}, {}, reg, {}, fx.ctx,
                                fx.store, 9);
  CHECK(empty.cases.empty());

  auto report = regulation_cycle({validation_indicator("x", 5)},
                                 {rule("r1", "i.val.x", remove_step("p.chain", "a2"), 1)},
                                 reg, {}, fx.ctx, fx.store, 9);
  REQUIRE(report.cases.size() == 1);
  CHECK(report.cases[0].regulation_case.state == CaseState::Implemented);
  CHECK(report.definition_mutations == 1);
  CHECK(fx.defs.latest("p.chain")->revision == 1);
}

TEST_CASE("two cases sharing a target: the second rejects after the re-check") {
  auto def = ts::linear_chain(3);
  def.activities[1].kind = ActivityKind::Validation;
  Fixture fx(def);
  add_validations(fx.store, "x", 5);
  add_validations(fx.store, "y", 5);
  Regulator reg{"reg", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};

  // Both indicators breach; both rules target the same validation step.
  auto report = regulation_cycle(
      {validation_indicator("x", 5), validation_indicator("y", 5)},
      {rule("rx", "i.val.x", remove_step("p.chain", "a2"), 1),
       rule("ry", "i.val.y", remove_step("p.chain", "a2"), 1)},
      reg, {}, fx.ctx, fx.store, 9);
  REQUIRE(report.cases.size() == 2);
  CHECK(report.cases[0].regulation_case.state == CaseState::Implemented);
  CHECK(report.cases[1].regulation_case.state == CaseState::Rejected);
  CHECK(report.cases[1].regulation_case.audit.back().note == "NoApplicableRule");
  CHECK(fx.defs.latest("p.chain")->revision == 1);
}

TEST_CASE("closed loop: removing the validation step lowers the indicator") {
  auto def = ts::linear_chain(3);
  def.activities[1].kind = ActivityKind::Validation;
  def.activities[1].outputs = {"Doc"};
  Fixture fx(def);
  auto world = ts::simple_world();
  world.roles = fx.roles;
  auto policy = ts::fixed_policy(world);

  auto run_workload = [&](std::shared_ptr<const ProcessDefinition> d, TraceStore& store) {
    auto objects = world.objects;
    for (int i = 0; i < 3; ++i) {
      auto instance = instantiate(d, ts::doc_bindings(), i * 100, "i-" + std::to_string(i),
                                  store);
      run_to_completion(instance, policy, 11 + i, objects, store);
    }
  };

  run_workload(fx.defs.latest("p.chain"), fx.store);
  auto indicator = validation_indicator("o.doc", 3);
  auto before = evaluate(indicator.calculation, fx.store).value;
  REQUIRE(before >= 3);

  Regulator reg{"reg", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};
  auto report = regulation_cycle({indicator},
                                 {rule("r1", indicator.id, remove_step("p.chain", "a2"), 1)},
                                 reg, {}, fx.ctx, fx.store, 1000);
  REQUIRE(report.definition_mutations == 1);

  TraceStore second;
  run_workload(fx.defs.latest("p.chain"), second);
  auto after = evaluate(indicator.calculation, second).value;
  CHECK(after < before);
}

TEST_CASE("audit trail matches the externally observed state changes") {
  auto def = ts::linear_chain(3);
  def.activities[1].kind = ActivityKind::Validation;
  Fixture fx(def);
  add_validations(fx.store, "x", 5);
  Regulator reg{"reg", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};
  auto c = detected_case(validation_indicator("x", 5), fx.store);
  CHECK(c.audit.empty());
  adapt(c, {rule("r1", "i.val.x", remove_step("p.chain", "a2"), 1)}, fx.ctx, 1);
  CHECK(c.audit.size() == 1);
  accept(c, reg, {}, 2);
  CHECK(c.audit.size() == 2);
  implement(c, fx.ctx, fx.store, 3);
  CHECK(c.audit.size() == 3);
  CHECK(c.audit[0].from == CaseState::Detected);
  CHECK(c.audit[0].to == CaseState::Adapted);
  CHECK(c.audit[1].to == CaseState::Accepted);
  CHECK(c.audit[2].to == CaseState::Implemented);
}

}  // TEST_SUITE
