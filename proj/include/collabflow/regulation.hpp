// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "collabflow/indicators.hpp"
#include "collabflow/metamodel.hpp"
#include "collabflow/observation.hpp"

namespace collabflow {

enum class CaseState { Detected, Adapted, Accepted, Rejected, Implemented };

std::string to_string(CaseState s);

struct AuditEntry {
  CaseState from = CaseState::Detected;
  CaseState to = CaseState::Detected;
  SimTime at = 0;
  std::string by;
  std::string note;
};

/// A detected breach traveling Detected -> Adapted -> {Accepted, Rejected};
/// Accepted -> Implemented. Rejected and Implemented are terminal.
struct RegulationCase {
  std::string id;
  Breach breach;
  CaseState state = CaseState::Detected;
  std::optional<RegulationAction> proposed;
  std::map<ActorId, bool> votes;
  std::vector<AuditEntry> audit;
  std::string annotation;  // e.g. the mutation fault that blocked implementation
};

/// Revisioned definition storage. Instances pin the revision they were
/// instantiated from; mutations push a new revision and never touch old ones.
class DefinitionStore {
 public:
  void add(const ProcessDefinition& def);
  bool contains(const DefinitionId& id) const;
  std::shared_ptr<const ProcessDefinition> latest(const DefinitionId& id) const;
  std::shared_ptr<const ProcessDefinition> revision(const DefinitionId& id,
                                                    std::int64_t rev) const;
  std::vector<DefinitionId> ids() const;  // ascending
  /// Accepts only revision == latest + 1.
  void push(const ProcessDefinition& mutated);

 private:
  std::map<DefinitionId, std::vector<std::shared_ptr<const ProcessDefinition>>> revs_;
};

/// What a cycle may read and mutate. With a monitored set, actions targeting
/// other definitions are unresolvable (the control group is never touched).
struct RegulationContext {
  DefinitionStore* definitions = nullptr;
  RoleTable* roles = nullptr;
  std::optional<std::set<DefinitionId>> monitored;
};

/// Detection: one case per breaching indicator, ordered by (indicator id,
/// scope id). Case ids are id_prefix + indicator id.
std::vector<RegulationCase> detect(const std::vector<Indicator>& indicators,
                                   const TraceStore& store, SimTime at,
                                   const std::string& id_prefix = "case:");

/// True iff every target of the action resolves against the current stores
/// (and, under a monitored set, the targeted definition is monitored).
bool action_resolvable(const RegulationAction& action, const RegulationContext& ctx);

/// Adaptation: proposes the action of the highest-priority applicable rule
/// bound to the breached indicator, or rejects with NoApplicableRule.
RegulationCase& adapt(RegulationCase& c, const std::vector<Rule>& rules,
                      const RegulationContext& ctx, SimTime at);

/// Acceptance under the regulator's policy. Quorum and Unanimous require a
/// vote from every stakeholder (MissingVotesError otherwise); the quorum
/// comparison is inclusive.
RegulationCase& accept(RegulationCase& c, const Regulator& regulator,
                       const std::map<ActorId, bool>& votes, SimTime at);

struct ImplementOutcome {
  std::int64_t revision_before = -1;  // -1 when no definition was targeted
  std::int64_t revision_after = -1;
  bool definition_mutated = false;
  bool role_mutated = false;
};

/// Implementation: applies the proposed action atomically. Definition
/// mutations land as a fresh revision (exactly +1) that passes validation and
/// are audited with a DefinitionRevised trace event; otherwise
/// MutationUnsoundError is thrown, the stores stay untouched and the case is
/// annotated with the fault.
ImplementOutcome implement(RegulationCase& c, RegulationContext& ctx, TraceStore& store,
                           SimTime at);

struct CaseOutcome {
  RegulationCase regulation_case;
  std::int64_t revision_before = -1;
  std::int64_t revision_after = -1;
};

struct CycleReport {
  SimTime at = 0;
  std::vector<CaseOutcome> cases;
  int definition_mutations = 0;
  int role_mutations = 0;
};

/// One full Detection -> Adaptation -> Acceptance -> Implementation sweep,
/// cases processed serially in detect order. An unsound mutation is recorded
/// on its case and the cycle carries on.
CycleReport regulation_cycle(const std::vector<Indicator>& indicators,
                             const std::vector<Rule>& rules, const Regulator& regulator,
                             const std::map<ActorId, bool>& votes, RegulationContext& ctx,
                             TraceStore& store, SimTime at,
                             const std::string& id_prefix = "case:");

}  // namespace collabflow
