// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "collabflow/json_io.hpp"

#include <fstream>
#include <sstream>

#include "collabflow/errors.hpp"

namespace collabflow {

namespace {

const Json& req(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string("missing field '") + key + "'");
  return *it;
}

std::string opt_string(const Json& j, const char* key, const std::string& fallback = "") {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? fallback : it->get<std::string>();
}

template <typename T>
T opt_number(const Json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? fallback : it->get<T>();
}

}  // namespace

// ---------------------------------------------------------------------------
// Scenario configuration
// ---------------------------------------------------------------------------

namespace {

Json right_to_json(const AccessRight& r) {
  return Json{{"class", r.object_class}, {"permission", to_string(r.permission)}};
}

AccessRight right_from_json(const Json& j) {
  return {req(j, "class").get<std::string>(),
          permission_from_string(req(j, "permission").get<std::string>())};
}

Json activity_to_json(const Activity& a) {
  Json j;
  j["id"] = a.id;
  j["name"] = a.name;
  j["kind"] = to_string(a.kind);
  j["role"] = a.required_role;
  j["inputs"] = a.inputs;
  j["outputs"] = a.outputs;
  j["expected_duration"] = a.expected_duration;
  if (a.entry) j["entry"] = true;
  if (!a.exchange_type.empty()) j["exchange_type"] = a.exchange_type;
  return j;
}

Activity activity_from_json(const Json& j) {
  Activity a;
  a.id = req(j, "id").get<std::string>();
  a.name = opt_string(j, "name");
  a.kind = activity_kind_from_string(req(j, "kind").get<std::string>());
  a.required_role = req(j, "role").get<std::string>();
  if (j.contains("inputs"))
    for (const auto& c : j["inputs"]) a.inputs.insert(c.get<std::string>());
  if (j.contains("outputs"))
    for (const auto& c : j["outputs"]) a.outputs.insert(c.get<std::string>());
  a.expected_duration = req(j, "expected_duration").get<SimTime>();
  a.entry = opt_number(j, "entry", false);
  a.exchange_type = opt_string(j, "exchange_type");
  return a;
}

Json definition_to_json(const ProcessDefinition& d) {
  Json j;
  j["id"] = d.id;
  j["name"] = d.name;
  j["structuring"] = to_string(d.structuring);
  j["category"] = to_string(d.category);
  j["variability"] = to_string(d.variability);
  j["revision"] = d.revision;
  j["activities"] = Json::array();
  for (const auto& a : d.activities) j["activities"].push_back(activity_to_json(a));
  if (!d.transitions.empty()) {
    j["transitions"] = Json::array();
    for (const auto& t : d.transitions) {
      Json tj{{"from", t.from}, {"to", t.to}};
      if (!t.guard.empty()) tj["guard"] = t.guard;
      j["transitions"].push_back(tj);
    }
  }
  if (!d.triggers.empty()) {
    j["triggers"] = Json::array();
    for (const auto& t : d.triggers) {
      Json tj{{"event", to_string(t.pattern.kind)}, {"activity", t.activity}};
      if (t.pattern.object_class) tj["object_class"] = *t.pattern.object_class;
      j["triggers"].push_back(tj);
    }
  }
  return j;
}

ProcessDefinition definition_from_json(const Json& j) {
  ProcessDefinition d;
  d.id = req(j, "id").get<std::string>();
  d.name = opt_string(j, "name");
  d.structuring = structuring_from_string(req(j, "structuring").get<std::string>());
  d.category = category_from_string(opt_string(j, "category", "administrative"));
  d.variability = variability_from_string(opt_string(j, "variability", "permanent"));
  d.revision = opt_number<std::int64_t>(j, "revision", 0);
  for (const auto& a : req(j, "activities")) d.activities.push_back(activity_from_json(a));
  if (j.contains("transitions"))
    for (const auto& t : j["transitions"])
      d.transitions.push_back({req(t, "from").get<std::string>(),
                               req(t, "to").get<std::string>(), opt_string(t, "guard")});
  if (j.contains("triggers"))
    for (const auto& t : j["triggers"]) {
      Trigger trigger;
      trigger.pattern.kind = event_kind_from_string(req(t, "event").get<std::string>());
      if (t.contains("object_class") && !t["object_class"].is_null())
        trigger.pattern.object_class = t["object_class"].get<std::string>();
      trigger.activity = req(t, "activity").get<std::string>();
      d.triggers.push_back(std::move(trigger));
    }
  return d;
}

Json indicator_to_json(const Indicator& ind) {
  Json j;
  j["id"] = ind.id;
  j["objective"] = ind.objective;
  j["kind"] = to_string(ind.calculation.kind);
  j["scope"] = Json{{"kind", to_string(ind.calculation.scope.kind)},
                    {"id", ind.calculation.scope.id}};
  j["threshold"] = Json{{"direction", to_string(ind.threshold.direction)},
                        {"value", ind.threshold.value}};
  j["window"] = ind.window ? Json(*ind.window) : Json(nullptr);
  return j;
}

Indicator indicator_from_json(const Json& j) {
  Indicator ind;
  ind.id = req(j, "id").get<std::string>();
  ind.objective = req(j, "objective").get<std::string>();
  ind.calculation.kind = indicator_kind_from_string(req(j, "kind").get<std::string>());
  const Json& scope = req(j, "scope");
  ind.calculation.scope.kind = scope_kind_from_string(req(scope, "kind").get<std::string>());
  ind.calculation.scope.id = opt_string(scope, "id");
  const Json& threshold = req(j, "threshold");
  ind.threshold.direction =
      direction_from_string(req(threshold, "direction").get<std::string>());
  ind.threshold.value = req(threshold, "value").get<double>();
  if (j.contains("window") && !j["window"].is_null())
    ind.window = j["window"].get<SimTime>();
  return ind;
}

Json action_to_json(const RegulationAction& a) {
  Json j;
  j["kind"] = to_string(a.kind);
  if (!a.process.empty()) j["process"] = a.process;
  if (!a.activity_a.empty()) j["activity"] = a.activity_a;
  if (!a.activity_b.empty()) j["activity_b"] = a.activity_b;
  if (!a.role.empty()) j["role"] = a.role;
  if (a.kind == ActionKind::GrantAccessRight) j["right"] = right_to_json(a.right);
  if (!a.notify.empty()) j["notify"] = a.notify;
  return j;
}

RegulationAction action_from_json(const Json& j) {
  RegulationAction a;
  a.kind = action_kind_from_string(req(j, "kind").get<std::string>());
  a.process = opt_string(j, "process");
  a.activity_a = opt_string(j, "activity");
  a.activity_b = opt_string(j, "activity_b");
  a.role = opt_string(j, "role");
  if (j.contains("right")) a.right = right_from_json(j["right"]);
  if (j.contains("notify"))
    for (const auto& n : j["notify"]) a.notify.push_back(n.get<std::string>());
  return a;
}

Json duration_to_json(const DurationDistribution& d) {
  if (d.kind == DurationDistribution::Kind::Fixed)
    return Json{{"dist", "fixed"}, {"value", d.value}};
  return Json{{"dist", "uniform"}, {"min", d.min}, {"max", d.max}};
}

DurationDistribution duration_from_json(const Json& j) {
  DurationDistribution d;
  const std::string dist = req(j, "dist").get<std::string>();
  if (dist == "fixed") {
    d.kind = DurationDistribution::Kind::Fixed;
    d.value = req(j, "value").get<SimTime>();
  } else if (dist == "uniform") {
    d.kind = DurationDistribution::Kind::Uniform;
    d.min = req(j, "min").get<SimTime>();
    d.max = req(j, "max").get<SimTime>();
  } else {
    throw ConfigError("unknown duration distribution '" + dist + "'");
  }
  return d;
}

}  // namespace

Json to_json(const ScenarioConfig& c) {
  Json j;
  j["name"] = c.name;
  j["seed"] = c.seed;
  j["horizon"] = c.horizon;
  j["session_gap"] = c.session_gap;
  j["regulation_cadence"] = c.regulation_cadence;
  j["object_classes"] = c.object_classes;

  j["roles"] = Json::array();
  for (const auto& r : c.roles) {
    Json rj{{"id", r.id}, {"name", r.name}};
    rj["rights"] = Json::array();
    for (const auto& right : r.rights) rj["rights"].push_back(right_to_json(right));
    j["roles"].push_back(rj);
  }

  j["actors"] = Json::array();
  for (const auto& a : c.actors)
    j["actors"].push_back(Json{
        {"id", a.id}, {"name", a.name}, {"roles", a.role_ids}, {"external", a.external}});

  j["objects"] = Json::array();
  for (const auto& o : c.objects)
    j["objects"].push_back(Json{{"id", o.id},
                                {"class", o.object_class},
                                {"version", o.version},
                                {"state", o.state}});

  j["definitions"] = Json::array();
  for (const auto& d : c.definitions) j["definitions"].push_back(definition_to_json(d));

  j["weights"] = Json::array();
  for (const auto& [criterion, alpha] : c.weights.weights)
    j["weights"].push_back(Json{{"criterion", criterion}, {"alpha", alpha}});
  j["collaborative_cutoff"] = c.collaborative_cutoff;

  j["indicators"] = Json::array();
  for (const auto& ind : c.indicators) j["indicators"].push_back(indicator_to_json(ind));

  j["rules"] = Json::array();
  for (const auto& r : c.rules)
    j["rules"].push_back(Json{{"id", r.id},
                              {"indicator", r.indicator_id},
                              {"priority", r.priority},
                              {"action", action_to_json(r.action)}});

  j["regulator"] = Json{
      {"id", c.regulator.id},
      {"kind", to_string(c.regulator.kind)},
      {"policy", Json{{"kind", to_string(c.regulator.acceptance_policy.kind)},
                      {"quorum", c.regulator.acceptance_policy.quorum},
                      {"stakeholders", c.regulator.acceptance_policy.stakeholders}}}};

  Json votes{{"mode", c.votes.mode == VotesConfig::Mode::Fixed ? "fixed" : "random"}};
  if (c.votes.mode == VotesConfig::Mode::Fixed) {
    Json fixed = Json::object();
    for (const auto& [actor, vote] : c.votes.fixed) fixed[actor] = vote;
    votes["fixed"] = fixed;
  } else {
    votes["p_yes"] = c.votes.p_yes;
  }
  j["votes"] = votes;

  j["monitored"] = c.monitored;

  j["workload"] = Json::array();
  for (const auto& a : c.workload) {
    Json bindings = Json::object();
    for (const auto& [cls, oid] : a.bindings) bindings[cls] = oid;
    j["workload"].push_back(
        Json{{"definition", a.definition}, {"at", a.at}, {"bindings", bindings}});
  }

  Json durations = Json::object();
  for (const auto& [kind, dist] : c.durations)
    durations[to_string(kind)] = duration_to_json(dist);
  j["durations"] = durations;
  return j;
}

ScenarioConfig config_from_json(const Json& j) {
  try {
    ScenarioConfig c;
    c.name = opt_string(j, "name", "scenario");
    c.seed = req(j, "seed").get<std::uint64_t>();
    c.horizon = req(j, "horizon").get<SimTime>();
    c.session_gap = opt_number<SimTime>(j, "session_gap", kDefaultSessionGap);
    c.regulation_cadence = opt_number<std::int64_t>(j, "regulation_cadence", 50);
    if (j.contains("object_classes"))
      for (const auto& cls : j["object_classes"])
        c.object_classes.push_back(cls.get<std::string>());

    if (j.contains("roles"))
      for (const auto& rj : j["roles"]) {
        Role r;
        r.id = req(rj, "id").get<std::string>();
        r.name = opt_string(rj, "name");
        if (rj.contains("rights"))
          for (const auto& right : rj["rights"]) r.rights.insert(right_from_json(right));
        c.roles.push_back(std::move(r));
      }

    if (j.contains("actors"))
      for (const auto& aj : j["actors"]) {
        Actor a;
        a.id = req(aj, "id").get<std::string>();
        a.name = opt_string(aj, "name");
        for (const auto& rid : req(aj, "roles")) a.role_ids.insert(rid.get<std::string>());
        a.external = opt_number(aj, "external", false);
        c.actors.push_back(std::move(a));
      }

    if (j.contains("objects"))
      for (const auto& oj : j["objects"])
        c.objects.push_back({req(oj, "id").get<std::string>(),
                             req(oj, "class").get<std::string>(),
                             opt_number<std::int64_t>(oj, "version", 0),
                             opt_string(oj, "state")});

    if (j.contains("definitions"))
      for (const auto& dj : j["definitions"])
        c.definitions.push_back(definition_from_json(dj));

    if (j.contains("weights"))
      for (const auto& wj : j["weights"])
        c.weights.weights.emplace_back(req(wj, "criterion").get<std::string>(),
                                       req(wj, "alpha").get<double>());
    c.collaborative_cutoff = opt_number(j, "collaborative_cutoff", 0.0);

    if (j.contains("indicators"))
      for (const auto& ij : j["indicators"]) c.indicators.push_back(indicator_from_json(ij));

    if (j.contains("rules"))
      for (const auto& rj : j["rules"])
        c.rules.push_back({req(rj, "id").get<std::string>(),
                           req(rj, "indicator").get<std::string>(),
                           action_from_json(req(rj, "action")),
                           req(rj, "priority").get<int>()});

    if (j.contains("regulator")) {
      const Json& rj = j["regulator"];
      c.regulator.id = req(rj, "id").get<std::string>();
      c.regulator.kind = regulator_kind_from_string(opt_string(rj, "kind", "automated"));
      const Json& pj = req(rj, "policy");
      c.regulator.acceptance_policy.kind =
          policy_kind_from_string(req(pj, "kind").get<std::string>());
      c.regulator.acceptance_policy.quorum = opt_number(pj, "quorum", 1.0);
      if (pj.contains("stakeholders"))
        for (const auto& s : pj["stakeholders"])
          c.regulator.acceptance_policy.stakeholders.push_back(s.get<std::string>());
    }

    if (j.contains("votes")) {
      const Json& vj = j["votes"];
      const std::string mode = opt_string(vj, "mode", "fixed");
      c.votes.mode = mode == "random" ? VotesConfig::Mode::Random : VotesConfig::Mode::Fixed;
      if (vj.contains("fixed"))
        for (auto it = vj["fixed"].begin(); it != vj["fixed"].end(); ++it)
          c.votes.fixed[it.key()] = it.value().get<bool>();
      c.votes.p_yes = opt_number(vj, "p_yes", 1.0);
    }

    if (j.contains("monitored"))
      for (const auto& m : j["monitored"]) c.monitored.insert(m.get<std::string>());

    if (j.contains("workload"))
      for (const auto& wj : j["workload"]) {
        Arrival a;
        a.definition = req(wj, "definition").get<std::string>();
        a.at = req(wj, "at").get<SimTime>();
        if (wj.contains("bindings"))
          for (auto it = wj["bindings"].begin(); it != wj["bindings"].end(); ++it)
            a.bindings[it.key()] = it.value().get<std::string>();
        c.workload.push_back(std::move(a));
      }

    if (j.contains("durations"))
      for (auto it = j["durations"].begin(); it != j["durations"].end(); ++it)
        c.durations[activity_kind_from_string(it.key())] = duration_from_json(it.value());

    return c;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Trace
// ---------------------------------------------------------------------------

Json to_json(const EngineEvent& ev) {
  Json j;
  j["at"] = ev.at;
  j["kind"] = to_string(ev.kind);
  if (!ev.instance_id.empty()) j["instance"] = ev.instance_id;
  if (!ev.process_id.empty()) j["process"] = ev.process_id;
  if (ev.activity_id) j["activity"] = *ev.activity_id;
  if (!ev.actor_id.empty()) j["actor"] = ev.actor_id;
  if (ev.object_id) j["object"] = *ev.object_id;
  if (ev.version) j["version"] = *ev.version;
  if (!ev.detail.empty()) j["detail"] = ev.detail;
  return j;
}

EngineEvent event_from_json(const Json& j) {
  EngineEvent ev;
  ev.at = req(j, "at").get<SimTime>();
  ev.kind = event_kind_from_string(req(j, "kind").get<std::string>());
  ev.instance_id = opt_string(j, "instance");
  ev.process_id = opt_string(j, "process");
  if (j.contains("activity")) ev.activity_id = j["activity"].get<std::string>();
  ev.actor_id = opt_string(j, "actor");
  if (j.contains("object")) ev.object_id = j["object"].get<std::string>();
  if (j.contains("version")) ev.version = j["version"].get<std::int64_t>();
  ev.detail = opt_string(j, "detail");
  return ev;
}

Json to_json(const TraceEvent& te) {
  Json j;
  j["seq"] = te.seq;
  Json ev = to_json(te.event);
  for (auto it = ev.begin(); it != ev.end(); ++it) j[it.key()] = it.value();
  if (!te.annotations.empty()) {
    Json ann = Json::object();
    for (const auto& [k, v] : te.annotations) ann[k] = v;
    j["annotations"] = ann;
  }
  return j;
}

void write_trace_jsonl(const TraceStore& store, std::ostream& out) {
  const std::size_t n = store.size();
  for (Seq s = 0; s < n; ++s) out << to_json(store.at(s)).dump() << '\n';
}

void load_trace_jsonl(std::istream& in, TraceStore& store) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
      store.append(event_from_json(j));
    } catch (const Json::exception& e) {
      throw ConfigError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
    if (j.contains("annotations")) {
      const Seq seq = store.size() - 1;
      for (auto it = j["annotations"].begin(); it != j["annotations"].end(); ++it)
        store.annotate(seq, it.key(), it.value().get<std::string>());
    }
  }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

Json to_json(const IndicatorValue& v) {
  Json j;
  j["value"] = v.value;
  if (v.is_histogram) {
    Json h = Json::object();
    for (const auto& [label, count] : v.histogram) h[label] = count;
    j["histogram"] = h;
  }
  if (v.window)
    j["window"] = Json{{"start", v.window->start}, {"end", v.window->end}};
  else
    j["window"] = nullptr;
  j["events_seen"] = v.events_seen;
  j["at"] = v.at;
  return j;
}

namespace {

Json indicator_row_json(const IndicatorRow& row) {
  Json j;
  j["id"] = row.indicator.id;
  j["kind"] = to_string(row.indicator.calculation.kind);
  j["scope"] = Json{{"kind", to_string(row.indicator.calculation.scope.kind)},
                    {"id", row.indicator.calculation.scope.id}};
  j["threshold"] = Json{{"direction", to_string(row.indicator.threshold.direction)},
                        {"value", row.indicator.threshold.value}};
  const Json value = to_json(row.value);
  for (auto it = value.begin(); it != value.end(); ++it) j[it.key()] = it.value();
  j["breached"] = row.breached;
  return j;
}

Json case_to_json(const CaseOutcome& outcome) {
  const RegulationCase& c = outcome.regulation_case;
  Json j;
  j["id"] = c.id;
  j["indicator"] = c.breach.indicator_id;
  j["breach_value"] = c.breach.value.value;
  j["state"] = to_string(c.state);
  j["action"] = c.proposed ? action_to_json(*c.proposed) : Json(nullptr);
  j["revision_before"] = outcome.revision_before;
  j["revision_after"] = outcome.revision_after;
  if (!c.annotation.empty()) j["annotation"] = c.annotation;
  if (!c.votes.empty()) {
    Json votes = Json::object();
    for (const auto& [actor, vote] : c.votes) votes[actor] = vote;
    j["votes"] = votes;
  }
  Json audit = Json::array();
  for (const auto& entry : c.audit)
    audit.push_back(Json{{"from", to_string(entry.from)},
                         {"to", to_string(entry.to)},
                         {"at", entry.at},
                         {"by", entry.by},
                         {"note", entry.note}});
  j["audit"] = audit;
  return j;
}

}  // namespace

Json to_json(const CycleReport& cycle) {
  Json j;
  j["at"] = cycle.at;
  j["definition_mutations"] = cycle.definition_mutations;
  j["role_mutations"] = cycle.role_mutations;
  j["cases"] = Json::array();
  for (const auto& c : cycle.cases) j["cases"].push_back(case_to_json(c));
  return j;
}

Json to_json(const RunReport& report) {
  Json j;
  j["scenario"] = report.config_name;
  j["seed"] = report.seed;
  j["horizon"] = report.horizon;
  j["instances_total"] = report.instances_total;

  Json events{{"total", report.total_events}};
  Json by_kind = Json::object();
  for (const auto& [kind, count] : report.events_by_kind) by_kind[kind] = count;
  events["by_kind"] = by_kind;
  j["events"] = events;

  Json delta{{"cutoff", report.collaborative_cutoff}};
  delta["objects"] = Json::array();
  for (const auto& row : report.delta_c)
    delta["objects"].push_back(
        Json{{"object", row.object}, {"value", row.value}, {"selected", row.selected}});
  delta["selected"] = report.collaborative_objects;
  j["delta_c"] = delta;

  j["indicators"] = Json::array();
  for (const auto& row : report.indicators)
    j["indicators"].push_back(indicator_row_json(row));

  j["cycles"] = Json::array();
  for (const auto& cycle : report.cycles) j["cycles"].push_back(to_json(cycle));

  j["processes"] = Json::array();
  for (const auto& p : report.processes) {
    Json pj;
    pj["id"] = p.id;
    pj["group"] = p.monitored ? "monitored" : "control";
    pj["revision_initial"] = p.revision_initial;
    pj["revision_final"] = p.revision_final;
    pj["instances"] = p.instances;
    pj["stalled"] = p.stalled;
    pj["makespan_total"] = p.makespan_total;
    pj["makespan_max"] = p.makespan_max;
    pj["makespan_mean"] = p.makespan_mean;
    pj["validation_events"] = p.validation_events;
    pj["total_events"] = p.total_events;
    Json kinds = Json::object();
    for (const auto& [kind, count] : p.events_by_kind) kinds[kind] = count;
    pj["events_by_kind"] = kinds;
    j["processes"].push_back(pj);
  }
  return j;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

std::string csv_double(double v) {
  std::ostringstream os;
  os << v;  // default precision, deterministic for identical inputs
  return os.str();
}

}  // namespace

std::string comparison_csv(const RunReport& report) {
  std::ostringstream os;
  os << "process,group,revision_initial,revision_final,instances,stalled,"
        "makespan_mean,validation_events,total_events\n";
  struct Totals {
    int instances = 0;
    int stalled = 0;
    std::int64_t validations = 0;
    std::int64_t events = 0;
  };
  Totals monitored, control;
  for (const auto& p : report.processes) {
    os << p.id << ',' << (p.monitored ? "monitored" : "control") << ','
       << p.revision_initial << ',' << p.revision_final << ',' << p.instances << ','
       << p.stalled << ',' << csv_double(p.makespan_mean) << ',' << p.validation_events
       << ',' << p.total_events << '\n';
    Totals& t = p.monitored ? monitored : control;
    t.instances += p.instances;
    t.stalled += p.stalled;
    t.validations += p.validation_events;
    t.events += p.total_events;
  }
  for (const auto& [group, t] :
       {std::pair<const char*, Totals&>{"monitored", monitored}, {"control", control}})
    os << "TOTAL," << group << ",,," << t.instances << ',' << t.stalled << ",,"
       << t.validations << ',' << t.events << '\n';
  return os.str();
}

std::string indicators_csv(const std::vector<IndicatorRow>& rows) {
  std::ostringstream os;
  os << "id,kind,scope_kind,scope_id,value,breached,profile\n";
  for (const auto& row : rows) {
    os << row.indicator.id << ',' << to_string(row.indicator.calculation.kind) << ','
       << to_string(row.indicator.calculation.scope.kind) << ','
       << row.indicator.calculation.scope.id << ',' << csv_double(row.value.value) << ','
       << (row.breached ? "true" : "false") << ',';
    if (row.value.is_histogram) {
      bool first = true;
      for (const auto& [label, count] : row.value.histogram) {
        if (!first) os << ';';
        os << label << '=' << count;
        first = false;
      }
    }
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Atomic file writes
// ---------------------------------------------------------------------------

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace collabflow
