// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "collabflow/scenario.hpp"

namespace collabflow {

// The built-in case: a plastics subcontractor whose activity is driven by
// responses to requests for proposal. Three chained sub-processes run with
// monitoring enabled, and an identical set runs unmonitored as the control
// group. All numeric shape (durations, arrival times, thresholds, weights) is
// artifact-defined configuration.

namespace {

Activity make_activity(ActivityId id, std::string name, ActivityKind kind, RoleId role,
                       std::set<ObjectClass> inputs, std::set<ObjectClass> outputs,
                       SimTime expected) {
  Activity a;
  a.id = std::move(id);
  a.name = std::move(name);
  a.kind = kind;
  a.required_role = std::move(role);
  a.inputs = std::move(inputs);
  a.outputs = std::move(outputs);
  a.expected_duration = expected;
  return a;
}

ProcessDefinition design_process(const std::string& suffix) {
  ProcessDefinition def;
  def.id = "p.design" + suffix;
  def.name = "design of the technical characteristics";
  def.structuring = Structuring::Mechanistic;
  def.category = ProcessCategory::Production;
  def.variability = Variability::Permanent;
  def.activities = {
      make_activity("d1", "draft technical characteristics", ActivityKind::Task, "r.designer",
                    {"RequestForProposal"}, {"TechnicalSpec"}, 5),
      make_activity("d2", "review characteristics with customer", ActivityKind::Exchange,
                    "r.customer", {"TechnicalSpec"}, {}, 2),
      make_activity("d3", "team validation of the spec", ActivityKind::Validation, "r.lead",
                    {}, {"TechnicalSpec"}, 3),
      make_activity("d4", "management validation of the spec", ActivityKind::Validation,
                    "r.lead", {}, {"TechnicalSpec"}, 3),
  };
  def.activities[1].exchange_type = "meeting";
  def.transitions = {{"d1", "d2", ""}, {"d2", "d3", ""}, {"d3", "d4", ""}};
  return def;
}

ProcessDefinition rfp_process(const std::string& suffix) {
  ProcessDefinition def;
  def.id = "p.rfp" + suffix;
  def.name = "management of internal requests for proposal";
  def.structuring = Structuring::Mechanistic;
  def.category = ProcessCategory::Administrative;
  def.variability = Variability::Permanent;
  def.activities = {
      make_activity("m1", "issue internal requests for proposal", ActivityKind::Task,
                    "r.purchasing", {"TechnicalSpec"}, {"InternalRFP"}, 5),
      make_activity("m2", "search supplier catalogue", ActivityKind::InformationSearch,
                    "r.purchasing", {"InternalRFP"}, {}, 4),
      make_activity("m3", "collect supplier responses", ActivityKind::Task, "r.supplier",
                    {"InternalRFP"}, {"SupplierResponse"}, 5),
      make_activity("m4", "approve supplier responses", ActivityKind::Validation, "r.lead",
                    {}, {"SupplierResponse"}, 3),
  };
  def.transitions = {{"m1", "m2", ""}, {"m2", "m3", ""}, {"m3", "m4", ""}};
  return def;
}

ProcessDefinition response_process(const std::string& suffix) {
  ProcessDefinition def;
  def.id = "p.response" + suffix;
  def.name = "treatment of responses and construction of the final response";
  def.structuring = Structuring::Mechanistic;
  def.category = ProcessCategory::Production;
  def.variability = Variability::Varying;
  def.activities = {
      make_activity("t1", "analyse supplier responses", ActivityKind::Task, "r.sales",
                    {"SupplierResponse"}, {"FinalResponse"}, 5),
      make_activity("t2", "request spec adjustment", ActivityKind::ChangeRequest, "r.sales",
                    {"SupplierResponse"}, {"TechnicalSpec"}, 2),
      make_activity("t3", "assemble the final response", ActivityKind::Task, "r.sales",
                    {"TechnicalSpec", "SupplierResponse"}, {"FinalResponse"}, 5),
      make_activity("t4", "validate the final response", ActivityKind::Validation, "r.lead",
                    {}, {"FinalResponse"}, 3),
  };
  def.transitions = {{"t1", "t2", ""}, {"t2", "t3", ""}, {"t3", "t4", ""}};
  return def;
}

std::map<ObjectClass, ObjectId> design_bindings(const std::string& suffix) {
  return {{"RequestForProposal", "o.rfp" + suffix}, {"TechnicalSpec", "o.spec" + suffix}};
}

std::map<ObjectClass, ObjectId> rfp_bindings(const std::string& suffix) {
  return {{"TechnicalSpec", "o.spec" + suffix},
          {"InternalRFP", "o.irfp" + suffix},
          {"SupplierResponse", "o.resp" + suffix}};
}

std::map<ObjectClass, ObjectId> response_bindings(const std::string& suffix) {
  return {{"TechnicalSpec", "o.spec" + suffix},
          {"SupplierResponse", "o.resp" + suffix},
          {"FinalResponse", "o.final" + suffix}};
}

}  // namespace

ScenarioConfig build_rfp_case() {
  ScenarioConfig config;
  config.name = "rfp-case";
  config.seed = 20260214;
  config.horizon = 1000;
  config.session_gap = 10;
  config.regulation_cadence = 50;
  config.object_classes = {"RequestForProposal", "TechnicalSpec", "InternalRFP",
                           "SupplierResponse", "FinalResponse"};

  const std::vector<ObjectClass> all = config.object_classes;
  Role lead{"r.lead", "project lead", {}};
  for (const auto& cls : all) {
    lead.rights.insert({cls, Permission::Read});
    lead.rights.insert({cls, Permission::Write});
    lead.rights.insert({cls, Permission::Validate});
  }
  config.roles = {
      lead,
      {"r.designer",
       "product designer",
       {{"RequestForProposal", Permission::Read},
        {"TechnicalSpec", Permission::Read},
        {"TechnicalSpec", Permission::Write}}},
      {"r.customer", "customer representative", {{"TechnicalSpec", Permission::Read}}},
      {"r.purchasing",
       "purchasing officer",
       {{"TechnicalSpec", Permission::Read},
        {"InternalRFP", Permission::Read},
        {"InternalRFP", Permission::Write},
        {"SupplierResponse", Permission::Read}}},
      {"r.supplier",
       "supplier contact",
       {{"InternalRFP", Permission::Read},
        {"SupplierResponse", Permission::Read},
        {"SupplierResponse", Permission::Write}}},
      {"r.sales",
       "sales engineer",
       {{"TechnicalSpec", Permission::Read},
        {"TechnicalSpec", Permission::Write},
        {"SupplierResponse", Permission::Read},
        {"FinalResponse", Permission::Read},
        {"FinalResponse", Permission::Write}}},
  };

  config.actors = {
      {"a.alice", "Alice", {"r.lead", "r.designer"}, false},
      {"a.bob", "Bob", {"r.designer", "r.sales"}, false},
      {"a.carol", "Carol", {"r.sales"}, false},
      {"a.dave", "Dave", {"r.purchasing"}, false},
      {"a.erin", "Erin", {"r.supplier"}, true},
      {"a.frank", "Frank", {"r.customer"}, true},
  };

  for (const std::string suffix : {"", ".ctl"}) {
    config.objects.push_back({"o.rfp" + suffix, "RequestForProposal", 0, "received"});
    config.objects.push_back({"o.spec" + suffix, "TechnicalSpec", 0, "draft"});
    config.objects.push_back({"o.irfp" + suffix, "InternalRFP", 0, "draft"});
    config.objects.push_back({"o.resp" + suffix, "SupplierResponse", 0, "pending"});
    config.objects.push_back({"o.final" + suffix, "FinalResponse", 0, "draft"});
    config.definitions.push_back(design_process(suffix));
    config.definitions.push_back(rfp_process(suffix));
    config.definitions.push_back(response_process(suffix));
  }
  config.monitored = {"p.design", "p.rfp", "p.response"};

  config.weights.weights = {{"A1", 1.0}, {"A2", 2.0}, {"A3", 1.5}};
  config.collaborative_cutoff = 5.0;

  auto indicator = [](IndicatorId id, std::string objective, IndicatorKindTag kind,
                      Scope scope, ThresholdDirection dir, double value) {
    Indicator ind;
    ind.id = std::move(id);
    ind.objective = std::move(objective);
    ind.calculation = {kind, std::move(scope)};
    ind.threshold = {dir, value};
    return ind;
  };
  config.indicators = {
      indicator("i.val.spec", "keep validation load on the technical spec bearable",
                IndicatorKindTag::ValidationRequestsPerObject, {ScopeKind::Object, "o.spec"},
                ThresholdDirection::AtLeast, 4),
      indicator("i.val.resp", "keep validation load on supplier responses bearable",
                IndicatorKindTag::ValidationRequestsPerObject, {ScopeKind::Object, "o.resp"},
                ThresholdDirection::AtLeast, 3),
      indicator("i.val.final", "keep validation load on the final response bearable",
                IndicatorKindTag::ValidationRequestsPerObject, {ScopeKind::Object, "o.final"},
                ThresholdDirection::AtLeast, 3),
      indicator("i.cr.spec", "watch change-request churn on the technical spec",
                IndicatorKindTag::ChangeRequestsPerObject, {ScopeKind::Object, "o.spec"},
                ThresholdDirection::AtLeast, 2),
      indicator("i.search.irfp", "watch time lost searching around internal RFPs",
                IndicatorKindTag::InfoSearchTime, {ScopeKind::Object, "o.irfp"},
                ThresholdDirection::AtLeast, 8),
      indicator("i.time.d1", "time spent drafting technical characteristics",
                IndicatorKindTag::TimeOnTask, {ScopeKind::Activity, "d1"},
                ThresholdDirection::AtLeast, 100),
      indicator("i.missed", "missed deadlines across the workflow",
                IndicatorKindTag::MissedDeadlineCount, {ScopeKind::Global, ""},
                ThresholdDirection::AtLeast, 10000),
      indicator("i.mods.design", "revisions applied to the design process",
                IndicatorKindTag::ProcessModificationCount, {ScopeKind::Process, "p.design"},
                ThresholdDirection::AtLeast, 100),
      indicator("i.exchange", "exchange types adopted across the workflow",
                IndicatorKindTag::ExchangeTypeProfile, {ScopeKind::Global, ""},
                ThresholdDirection::AtLeast, 0),
      indicator("i.users", "number of system users", IndicatorKindTag::UserCount,
                {ScopeKind::Global, ""}, ThresholdDirection::AtMost, 1),
      indicator("i.ability", "ability of users to exploit the system",
                IndicatorKindTag::ExploitationAbility, {ScopeKind::Global, ""},
                ThresholdDirection::AtMost, 0.02),
      indicator("i.stability", "stability of system use over time",
                IndicatorKindTag::UseStability, {ScopeKind::Global, ""},
                ThresholdDirection::AtMost, 0.01),
  };

  auto remove_step = [](DefinitionId process, ActivityId activity) {
    RegulationAction a;
    a.kind = ActionKind::RemoveValidationStep;
    a.process = std::move(process);
    a.activity_a = std::move(activity);
    return a;
  };
  RegulationAction merge_t2;
  merge_t2.kind = ActionKind::MergeActivities;
  merge_t2.process = "p.response";
  merge_t2.activity_a = "t3";
  merge_t2.activity_b = "t2";
  RegulationAction grant_sales;
  grant_sales.kind = ActionKind::GrantAccessRight;
  grant_sales.role = "r.sales";
  grant_sales.right = {"InternalRFP", Permission::Read};

  config.rules = {
      {"rule.val.spec.1", "i.val.spec", remove_step("p.design", "d4"), 1},
      {"rule.val.spec.2", "i.val.spec", remove_step("p.design", "d3"), 2},
      {"rule.val.resp", "i.val.resp", remove_step("p.rfp", "m4"), 1},
      {"rule.val.final", "i.val.final", remove_step("p.response", "t4"), 1},
      {"rule.cr.spec", "i.cr.spec", merge_t2, 1},
      {"rule.search", "i.search.irfp", grant_sales, 1},
  };

  config.regulator = {"reg.plm", RegulatorKind::Automated, {PolicyKind::Auto, 1.0, {}}};
  config.votes.mode = VotesConfig::Mode::Fixed;

  for (int wave = 0; wave < 3; ++wave) {
    const SimTime base = 200 * wave;
    for (const std::string suffix : {"", ".ctl"}) {
      config.workload.push_back({"p.design" + suffix, base, design_bindings(suffix)});
      config.workload.push_back({"p.rfp" + suffix, base + 40, rfp_bindings(suffix)});
      config.workload.push_back({"p.response" + suffix, base + 80, response_bindings(suffix)});
    }
  }

  config.durations = {
      {ActivityKind::Task, {DurationDistribution::Kind::Uniform, 0, 3, 7}},
      {ActivityKind::Validation, {DurationDistribution::Kind::Uniform, 0, 2, 5}},
      {ActivityKind::ChangeRequest, {DurationDistribution::Kind::Uniform, 0, 1, 4}},
      {ActivityKind::InformationSearch, {DurationDistribution::Kind::Uniform, 0, 2, 6}},
      {ActivityKind::Exchange, {DurationDistribution::Kind::Uniform, 0, 1, 3}},
  };

  return config;
}

}  // namespace collabflow
