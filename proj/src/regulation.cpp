// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "collabflow/regulation.hpp"

#include <algorithm>

#include "collabflow/errors.hpp"

namespace collabflow {

std::string to_string(CaseState s) {
  switch (s) {
    case CaseState::Detected: return "detected";
    case CaseState::Adapted: return "adapted";
    case CaseState::Accepted: return "accepted";
    case CaseState::Rejected: return "rejected";
    case CaseState::Implemented: return "implemented";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// DefinitionStore
// ---------------------------------------------------------------------------

void DefinitionStore::add(const ProcessDefinition& def) {
  auto& revs = revs_[def.id];
  if (!revs.empty()) throw Error("definition '" + def.id + "' already loaded");
  revs.push_back(std::make_shared<const ProcessDefinition>(def));
}

bool DefinitionStore::contains(const DefinitionId& id) const { return revs_.count(id) > 0; }

std::shared_ptr<const ProcessDefinition> DefinitionStore::latest(const DefinitionId& id) const {
  auto it = revs_.find(id);
  if (it == revs_.end() || it->second.empty())
    throw Error("unknown definition '" + id + "'");
  return it->second.back();
}

std::shared_ptr<const ProcessDefinition> DefinitionStore::revision(const DefinitionId& id,
                                                                   std::int64_t rev) const {
  auto it = revs_.find(id);
  if (it == revs_.end()) throw Error("unknown definition '" + id + "'");
  for (const auto& d : it->second)
    if (d->revision == rev) return d;
  throw Error("definition '" + id + "' has no revision " + std::to_string(rev));
}

std::vector<DefinitionId> DefinitionStore::ids() const {
  std::vector<DefinitionId> out;
  for (const auto& [id, revs] : revs_) out.push_back(id);
  return out;
}

void DefinitionStore::push(const ProcessDefinition& mutated) {
  auto it = revs_.find(mutated.id);
  if (it == revs_.end()) throw Error("unknown definition '" + mutated.id + "'");
  if (mutated.revision != it->second.back()->revision + 1)
    throw Error("revision must advance by exactly one");
  it->second.push_back(std::make_shared<const ProcessDefinition>(mutated));
}

// ---------------------------------------------------------------------------
// Case state machine
// ---------------------------------------------------------------------------

namespace {

void transition(RegulationCase& c, CaseState to, SimTime at, const std::string& by,
                const std::string& note = "") {
  c.audit.push_back({c.state, to, at, by, note});
  c.state = to;
}

void require_state(const RegulationCase& c, CaseState expected, const char* op) {
  if (c.state != expected)
    throw InvalidStateError(std::string(op) + ": case '" + c.id + "' is " +
                            to_string(c.state) + ", expected " + to_string(expected));
}

}  // namespace

// ---------------------------------------------------------------------------
// Detection
// ---------------------------------------------------------------------------

std::vector<RegulationCase> detect(const std::vector<Indicator>& indicators,
                                   const TraceStore& store, SimTime /*at*/,
                                   const std::string& id_prefix) {
  std::vector<const Indicator*> ordered;
  for (const auto& ind : indicators) ordered.push_back(&ind);
  std::sort(ordered.begin(), ordered.end(), [](const Indicator* a, const Indicator* b) {
    if (a->id != b->id) return a->id < b->id;
    return a->calculation.scope.id < b->calculation.scope.id;
  });

  std::vector<RegulationCase> cases;
  for (const Indicator* ind : ordered) {
    auto breach = check(*ind, store);
    if (!breach) continue;
    RegulationCase c;
    c.id = id_prefix + ind->id;
    c.breach = std::move(*breach);
    c.state = CaseState::Detected;
    cases.push_back(std::move(c));
  }
  return cases;
}

// ---------------------------------------------------------------------------
// Adaptation
// ---------------------------------------------------------------------------

bool action_resolvable(const RegulationAction& action, const RegulationContext& ctx) {
  const bool targets_definition = action.kind != ActionKind::GrantAccessRight;
  if (targets_definition) {
    if (!ctx.definitions || !ctx.definitions->contains(action.process)) return false;
    if (ctx.monitored && !ctx.monitored->count(action.process)) return false;
  }
  auto def = targets_definition ? ctx.definitions->latest(action.process) : nullptr;

  switch (action.kind) {
    case ActionKind::RemoveValidationStep: {
      const Activity* a = def->find_activity(action.activity_a);
      return a && a->kind == ActivityKind::Validation;
    }
    case ActionKind::MergeActivities:
      return action.activity_a != action.activity_b && def->find_activity(action.activity_a) &&
             def->find_activity(action.activity_b);
    case ActionKind::ParallelizeActivities:
      return action.activity_a != action.activity_b && def->find_activity(action.activity_a) &&
             def->find_activity(action.activity_b);
    case ActionKind::GrantAccessRight:
      return ctx.roles && ctx.roles->count(action.role) > 0;
    case ActionKind::ReassignRole:
      return def->find_activity(action.activity_a) && ctx.roles &&
             ctx.roles->count(action.role) > 0;
    case ActionKind::AddNotification:
      return def->find_activity(action.activity_a) != nullptr;
  }
  return false;
}

RegulationCase& adapt(RegulationCase& c, const std::vector<Rule>& rules,
                      const RegulationContext& ctx, SimTime at) {
  require_state(c, CaseState::Detected, "adapt");

  std::vector<const Rule*> bound;
  for (const auto& r : rules)
    if (r.indicator_id == c.breach.indicator_id) bound.push_back(&r);
  std::sort(bound.begin(), bound.end(),
            [](const Rule* a, const Rule* b) { return a->priority < b->priority; });

  for (const Rule* r : bound) {
    if (action_resolvable(r->action, ctx)) {
      c.proposed = r->action;
      transition(c, CaseState::Adapted, at, "regulator", "rule " + r->id);
      return c;
    }
  }
  transition(c, CaseState::Rejected, at, "regulator", "NoApplicableRule");
  return c;
}

// ---------------------------------------------------------------------------
// Acceptance
// ---------------------------------------------------------------------------

RegulationCase& accept(RegulationCase& c, const Regulator& regulator,
                       const std::map<ActorId, bool>& votes, SimTime at) {
  require_state(c, CaseState::Adapted, "accept");
  const auto& policy = regulator.acceptance_policy;

  if (policy.kind == PolicyKind::Auto) {
    transition(c, CaseState::Accepted, at, regulator.id, "auto");
    return c;
  }

  std::size_t yes = 0;
  for (const auto& stakeholder : policy.stakeholders) {
    auto it = votes.find(stakeholder);
    if (it == votes.end())
      throw MissingVotesError("no vote from stakeholder '" + stakeholder + "'");
    c.votes[stakeholder] = it->second;
    if (it->second) ++yes;
  }

  bool accepted;
  std::string note;
  if (policy.kind == PolicyKind::Quorum) {
    accepted = policy.stakeholders.empty() ||
               static_cast<double>(yes) / static_cast<double>(policy.stakeholders.size()) >=
                   policy.quorum;
    note = "quorum " + std::to_string(yes) + "/" + std::to_string(policy.stakeholders.size());
  } else {
    accepted = yes == policy.stakeholders.size();
    note = "unanimous " + std::to_string(yes) + "/" +
           std::to_string(policy.stakeholders.size());
  }
  transition(c, accepted ? CaseState::Accepted : CaseState::Rejected, at, regulator.id, note);
  return c;
}

// ---------------------------------------------------------------------------
// Implementation
// ---------------------------------------------------------------------------

namespace {

void add_transition_unique(ProcessDefinition& def, const ActivityId& from,
                           const ActivityId& to) {
  if (from == to) return;
  for (const auto& t : def.transitions)
    if (t.from == from && t.to == to) return;
  def.transitions.push_back({from, to, ""});
}

void erase_activity(ProcessDefinition& def, const ActivityId& id) {
  std::erase_if(def.activities, [&](const Activity& a) { return a.id == id; });
  std::erase_if(def.transitions,
                [&](const Transition& t) { return t.from == id || t.to == id; });
  std::erase_if(def.triggers, [&](const Trigger& t) { return t.activity == id; });
}

ActivityId fresh_activity_id(const ProcessDefinition& def, const ActivityId& base) {
  ActivityId candidate = base;
  while (def.find_activity(candidate)) candidate += "+";
  return candidate;
}

/// Applies the action to a copy of the latest revision. Returns the mutated
/// definition, or nullopt for actions that target no definition.
std::optional<ProcessDefinition> mutate_definition(const RegulationAction& action,
                                                   const RegulationContext& ctx) {
  if (action.kind == ActionKind::GrantAccessRight) return std::nullopt;
  ProcessDefinition def = *ctx.definitions->latest(action.process);

  switch (action.kind) {
    case ActionKind::RemoveValidationStep: {
      const auto preds = def.predecessors(action.activity_a);
      const auto succs = def.successors(action.activity_a);
      erase_activity(def, action.activity_a);
      for (const auto& p : preds)
        for (const auto& s : succs) add_transition_unique(def, p, s);
      break;
    }
    case ActionKind::MergeActivities: {
      Activity* a = nullptr;
      const Activity* b = def.find_activity(action.activity_b);
      for (auto& act : def.activities)
        if (act.id == action.activity_a) a = &act;
      if (!a || !b) throw MutationUnsoundError("merge target vanished");
      a->inputs.insert(b->inputs.begin(), b->inputs.end());
      a->outputs.insert(b->outputs.begin(), b->outputs.end());
      a->expected_duration += b->expected_duration;
      const auto preds = def.predecessors(action.activity_b);
      const auto succs = def.successors(action.activity_b);
      for (auto& tr : def.triggers)
        if (tr.activity == action.activity_b) tr.activity = action.activity_a;
      erase_activity(def, action.activity_b);
      for (const auto& p : preds) add_transition_unique(def, p, action.activity_a);
      for (const auto& s : succs) add_transition_unique(def, action.activity_a, s);
      break;
    }
    case ActionKind::ParallelizeActivities: {
      const auto& a = action.activity_a;
      const auto& b = action.activity_b;
      std::set<ActivityId> pair{a, b};
      std::set<ActivityId> preds, succs;
      for (const auto& x : {a, b}) {
        for (const auto& p : def.predecessors(x))
          if (!pair.count(p)) preds.insert(p);
        for (const auto& s : def.successors(x))
          if (!pair.count(s)) succs.insert(s);
      }
      std::erase_if(def.transitions, [&](const Transition& t) {
        return pair.count(t.from) || pair.count(t.to);
      });
      for (const auto& x : {a, b}) {
        for (const auto& p : preds) add_transition_unique(def, p, x);
        for (const auto& s : succs) add_transition_unique(def, x, s);
      }
      break;
    }
    case ActionKind::ReassignRole: {
      for (auto& act : def.activities)
        if (act.id == action.activity_a) act.required_role = action.role;
      break;
    }
    case ActionKind::AddNotification: {
      const Activity* target = def.find_activity(action.activity_a);
      if (!target) throw MutationUnsoundError("notification target vanished");
      Activity notification;
      notification.id = fresh_activity_id(def, action.activity_a + ".notify");
      notification.name = "notify after " + target->name;
      notification.kind = ActivityKind::Exchange;
      notification.required_role = target->required_role;
      notification.expected_duration = 0;
      notification.exchange_type = "notification";
      def.activities.push_back(notification);
      if (def.structuring == Structuring::Mechanistic) {
        def.transitions.push_back({action.activity_a, notification.id, ""});
      } else {
        def.triggers.push_back(
            {{EngineEventKind::ActivityCompleted, std::nullopt}, notification.id});
      }
      break;
    }
    case ActionKind::GrantAccessRight:
      break;  // handled above
  }

  def.revision += 1;
  return def;
}

}  // namespace

ImplementOutcome implement(RegulationCase& c, RegulationContext& ctx, TraceStore& store,
                           SimTime at) {
  require_state(c, CaseState::Accepted, "implement");
  if (!c.proposed) throw InvalidStateError("implement: case carries no proposed action");
  const RegulationAction& action = *c.proposed;

  if (!action_resolvable(action, ctx)) {
    c.annotation = "MutationUnsound: target no longer resolves";
    throw MutationUnsoundError(c.annotation);
  }

  ImplementOutcome outcome;
  if (action.kind == ActionKind::GrantAccessRight) {
    (*ctx.roles)[action.role].rights.insert(action.right);
    outcome.role_mutated = true;
    transition(c, CaseState::Implemented, at, "regulator",
               to_string(action.kind) + " " + action.role);
    return outcome;
  }

  auto mutated = mutate_definition(action, ctx);
  auto faults = validate_definition(*mutated, *ctx.roles);
  if (!faults.empty()) {
    c.annotation = "MutationUnsound: " + faults.front().str();
    throw MutationUnsoundError(c.annotation);
  }

  outcome.revision_before = mutated->revision - 1;
  outcome.revision_after = mutated->revision;
  outcome.definition_mutated = true;
  ctx.definitions->push(*mutated);

  EngineEvent audit;
  audit.kind = EngineEventKind::DefinitionRevised;
  audit.process_id = action.process;
  audit.actor_id = "regulator";
  audit.detail = to_string(action.kind);
  audit.at = at;
  store.append(audit);

  transition(c, CaseState::Implemented, at, "regulator",
             to_string(action.kind) + " -> revision " + std::to_string(mutated->revision));
  return outcome;
}

// ---------------------------------------------------------------------------
// Full cycle
// ---------------------------------------------------------------------------

CycleReport regulation_cycle(const std::vector<Indicator>& indicators,
                             const std::vector<Rule>& rules, const Regulator& regulator,
                             const std::map<ActorId, bool>& votes, RegulationContext& ctx,
                             TraceStore& store, SimTime at, const std::string& id_prefix) {
  CycleReport report;
  report.at = at;
  auto cases = detect(indicators, store, at, id_prefix);
  for (auto& c : cases) {
    adapt(c, rules, ctx, at);
    if (c.state == CaseState::Adapted) accept(c, regulator, votes, at);
    CaseOutcome outcome;
    if (c.state == CaseState::Accepted) {
      try {
        auto impl = implement(c, ctx, store, at);
        outcome.revision_before = impl.revision_before;
        outcome.revision_after = impl.revision_after;
        if (impl.definition_mutated) ++report.definition_mutations;
        if (impl.role_mutated) ++report.role_mutations;
      } catch (const MutationUnsoundError&) {
        // recorded on the case annotation; the cycle carries on
      }
    }
    outcome.regulation_case = std::move(c);
    report.cases.push_back(std::move(outcome));
  }
  return report;
}

}  // namespace collabflow
