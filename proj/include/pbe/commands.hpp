/**
 * @file commands.hpp
 * @brief Command runner behind the CLI: builds rules from a scenario, runs
 * one command and returns a JSON report.
 */
#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pbe/allocation.hpp"
#include "pbe/core.hpp"
#include "pbe/fixtures.hpp"
#include "pbe/preferences.hpp"
#include "pbe/scenario.hpp"
#include "pbe/shortlisting.hpp"
#include "pbe/strategy.hpp"
#include "pbe/suite.hpp"
#include "pbe/verification.hpp"

namespace pbe {

using AnyShortlisting = std::variant<NominationRule, EqualRepresentationRule, KMedianRule>;
using AnyAllocation = std::variant<GreedyApprovalRule, ApprovalMaximisingRule>;

inline const std::vector<std::string> &command_names() {
  static const std::vector<std::string> names{"shortlist",  "allocate",  "end-to-end",
                                              "check-axiom", "check-ssp", "check-fssp",
                                              "replay",      "paper-suite"};
  return names;
}

inline const std::vector<std::string> &shortlisting_rule_names() {
  static const std::vector<std::string> names{"nomination", "equal-representation", "k-median"};
  return names;
}

inline const std::vector<std::string> &allocation_rule_names() {
  static const std::vector<std::string> names{"greedy-approval", "approval-maximising"};
  return names;
}

namespace detail {

/// Splits an optional "<k>-" prefix off a rule name.
inline std::pair<std::string, std::optional<int>> split_rule_name(const std::string &name) {
  const auto dash = name.find('-');
  if (dash == std::string::npos || dash == 0)
    return {name, std::nullopt};
  const auto head = name.substr(0, dash);
  if (head.find_first_not_of("0123456789") != std::string::npos)
    return {name, std::nullopt};
  return {name.substr(dash + 1), std::stoi(head)};
}

} // namespace detail

inline AnyShortlisting make_shortlisting(const Config &c, const Scenario &sc, const Instance &inst) {
  auto [base, k] = detail::split_rule_name(c.shortlisting_rule);
  const int kk = k.value_or(c.k);
  if (kk < 1)
    throw InvalidInput("k must be at least 1");
  if (base == "nomination")
    return NominationRule{};
  if (base == "equal-representation")
    return EqualRepresentationRule{kk, c.caps.equal_representation};
  if (base == "median" || base == "k-median")
    return KMedianRule{kk, sc.metric(inst), c.caps.partition};
  throw InvalidInput("unknown shortlisting rule '" + c.shortlisting_rule + "'");
}

inline AnyAllocation make_allocation(const Config &c, const Scenario &sc, const Instance &inst) {
  if (c.allocation_rule == "greedy-approval")
    return GreedyApprovalRule{};
  if (c.allocation_rule == "approval-maximising") {
    TieBreakPolicy policy;
    policy.priority = sc.sets(inst, c.tie_break);
    policy.validate();
    return ApprovalMaximisingRule{policy};
  }
  throw InvalidInput("unknown allocation rule '" + c.allocation_rule + "'");
}

inline std::string rule_name(const AnyShortlisting &r) {
  return std::visit([](const auto &x) { return x.name(); }, r);
}
inline std::string rule_name(const AnyAllocation &r) {
  return std::visit([](const auto &x) { return x.name(); }, r);
}

// ---------------------------------------------------------------------------
// JSON for results

inline Json verdict_header(std::string property, VerdictStatus status, bool exact,
                           const std::string &search, std::size_t cases) {
  return Json{{"property", std::move(property)},
              {"status", to_string(status)},
              {"exact", exact},
              {"search", search},
              {"cases", cases}};
}

inline Json sp_witness_json(const Instance &inst, const SpWitness &w) {
  return Json{{"agent", w.agent + 1},
              {"ideal", ids_json(inst, w.ideal)},
              {"profile", ids_json(inst, w.profile)},
              {"deviation", ids_json(inst, w.deviation)},
              {"truthful_outcome", ids_json(inst, w.truthful_outcome)},
              {"manipulated_outcome", ids_json(inst, w.manipulated_outcome)}};
}

inline Json manipulation_witness_json(const Instance &inst, const ManipulationWitness &w) {
  Json j{{"agent", w.agent + 1},
         {"mode", to_string(w.mode)},
         {"truthful", ids_json(inst, w.truthful)},
         {"deviation", ids_json(inst, w.deviation)},
         {"shortlist", ids_json(inst, w.shortlist)},
         {"deviated_shortlist", ids_json(inst, w.deviated_shortlist)},
         {"comparison_ideal", ids_json(inst, w.comparison_ideal)}};
  j["profile"] = w.profile ? ids_json(inst, *w.profile) : Json();
  j["deviated_profile"] = w.deviated_profile ? ids_json(inst, *w.deviated_profile) : Json();
  j["outcome"] = w.outcome ? ids_json(inst, *w.outcome) : Json();
  j["deviated_outcome"] = w.deviated_outcome ? ids_json(inst, *w.deviated_outcome) : Json();
  return j;
}

/// A scenario document reproducing one generated case, for replay by file
/// alone. Generated instances always carry coordinates.
inline Scenario case_scenario(const Scenario &base, const Instance &inst, std::string name) {
  Scenario sc;
  sc.name = std::move(name);
  sc.budget = inst.budget();
  sc.projects = inst.projects();
  sc.config = base.config;
  sc.config.suite = 0;
  sc.config.metric = "euclidean";
  return sc;
}

inline std::vector<std::vector<int>> id_lists(const Instance &inst,
                                              const std::vector<ProjectSet> &sets) {
  std::vector<std::vector<int>> out;
  for (auto s : sets) {
    std::vector<int> ids;
    for (auto id : inst.ids(s))
      ids.push_back(index_of(id));
    out.push_back(std::move(ids));
  }
  return out;
}

inline std::vector<int> id_list(const Instance &inst, ProjectSet s) {
  return id_lists(inst, {s}).front();
}

// ---------------------------------------------------------------------------
// The runner

class CommandRunner {
public:
  explicit CommandRunner(const Scenario &sc) : sc_(sc), inst_(sc.instance()) {
    agents_ = sc.typed_agents(inst_);
  }

  Json run(const std::string &command) {
    if (command == "shortlist")
      return shortlist_outcomes();
    if (command == "allocate")
      return allocate_outcomes(explicit_or_computed_shortlist());
    if (command == "end-to-end") {
      auto out = shortlist_outcomes();
      const auto shortlist = sc_.set(inst_, out["outcomes"]["shortlist"].get<std::vector<int>>());
      auto alloc = allocate_outcomes(shortlist);
      for (auto &[k, v] : alloc["outcomes"].items())
        out["outcomes"][k] = v;
      return out;
    }
    if (command == "check-axiom")
      return check_axiom();
    if (command == "check-ssp")
      return check_ssp();
    if (command == "check-fssp")
      return check_fssp_command();
    throw InvalidInput("unknown command '" + command + "'");
  }

private:
  const Config &cfg() const { return sc_.config; }

  ShortlistingProfile shortlisting_profile() const {
    if (sc_.shortlisting_profile)
      return sc_.sets(inst_, *sc_.shortlisting_profile);
    ShortlistingProfile p;
    for (const auto &a : agents_)
      p.push_back(ideal_set(inst_, a.order, a.awareness));
    return p;
  }

  ProjectSet explicit_or_computed_shortlist() const {
    if (sc_.shortlist)
      return sc_.set(inst_, *sc_.shortlist);
    const auto rule = make_shortlisting(cfg(), sc_, inst_);
    const auto profile = shortlisting_profile();
    return std::visit([&](const auto &r) { return r(inst_, profile); }, rule);
  }

  ApprovalProfile ballots(ProjectSet shortlist) const {
    if (sc_.approval_profile) {
      auto p = sc_.sets(inst_, *sc_.approval_profile);
      for (std::size_t i = 0; i < p.size(); ++i)
        if (!p[i].subset_of(shortlist))
          throw InvalidInput("ballot of agent " + std::to_string(i + 1) +
                             " approves a project outside the shortlist");
      return p;
    }
    ApprovalProfile p;
    for (const auto &a : agents_)
      p.push_back(ideal_set(inst_, a.order, shortlist));
    return p;
  }

  Json shortlist_outcomes() const {
    const auto rule = make_shortlisting(cfg(), sc_, inst_);
    const auto profile = shortlisting_profile();
    Json o;
    o["shortlisting_rule"] = rule_name(rule);
    o["profile"] = ids_json(inst_, profile);
    if (const auto *km = std::get_if<KMedianRule>(&rule)) {
      const auto r = k_median_partitions(inst_, union_of(profile), km->k, km->metric, km->cap);
      o["shortlist"] = ids_json(inst_, r.shortlist);
      o["cost"] = inst_.cost(r.shortlist);
      o["ell"] = r.ell;
      o["valid_partitions"] = r.valid_partitions;
      o["median_sets"] = ids_json(inst_, r.median_sets);
      Json parts = Json::array();
      for (const auto &v : r.partitions)
        parts.push_back(ids_json(inst_, v.clusters));
      o["partitions"] = std::move(parts);
    } else {
      const auto shortlist = std::visit([&](const auto &r) { return r(inst_, profile); }, rule);
      o["shortlist"] = ids_json(inst_, shortlist);
      o["cost"] = inst_.cost(shortlist);
      if (std::holds_alternative<EqualRepresentationRule>(rule))
        o["representation_score"] = representation_score(shortlist, profile).value.str();
    }
    return Json{{"outcomes", std::move(o)}};
  }

  Json allocate_outcomes(ProjectSet shortlist) const {
    const auto rule = make_allocation(cfg(), sc_, inst_);
    const auto profile = ballots(shortlist);
    const auto scores = approval_scores(inst_, shortlist, profile);
    const auto allocation =
        std::visit([&](const auto &f) { return f(inst_, shortlist, profile); }, rule);
    Json o;
    o["shortlist"] = ids_json(inst_, shortlist);
    o["allocation_rule"] = rule_name(rule);
    o["ballots"] = ids_json(inst_, profile);
    Json sj = Json::array();
    shortlist.for_each([&](std::size_t p) {
      sj.push_back(Json::array({index_of(inst_.id(p)), scores[p]}));
    });
    o["approval_scores"] = std::move(sj);
    o["allocation"] = ids_json(inst_, allocation);
    o["allocation_cost"] = inst_.cost(allocation);
    o["status"] = to_string(classify_allocation(inst_, shortlist, allocation));
    return Json{{"outcomes", std::move(o)}};
  }

  // -- axioms ---------------------------------------------------------------

  Json check_axiom() const {
    const auto &axiom = cfg().axiom;
    if (axiom == "non-wasteful" || axiom == "representation-efficient")
      return shortlisting_axiom(axiom);
    AllocationAxiom a;
    if (axiom == "exhaustive")
      a = AllocationAxiom::exhaustive;
    else if (axiom == "unanimous")
      a = AllocationAxiom::unanimous;
    else if (axiom == "strongly-unanimous")
      a = AllocationAxiom::strongly_unanimous;
    else
      throw InvalidInput("unknown axiom '" + axiom + "'");
    return allocation_axiom(a);
  }

  SuiteParams suite_params() const {
    SuiteParams p;
    p.seed = cfg().seed;
    p.coordinates = true;
    return p;
  }

  Json shortlisting_axiom(const std::string &axiom) const {
    struct Case {
      Instance inst;
      ShortlistingProfile profile;
    };
    std::vector<Case> cases{{inst_, shortlisting_profile()}};
    SuiteGenerator gen(suite_params());
    for (std::size_t s = 0; s < cfg().suite; ++s) {
      auto inst = gen.instance();
      const auto n = gen.agents();
      cases.push_back({inst, gen.profile(inst.all(), n)});
    }
    PropertyVerdict<ShortlistWitness> total;
    total.search = axiom + " on the scenario" +
                   (cfg().suite ? " and " + std::to_string(cfg().suite) + " random cases (" +
                                      suite_params().describe() + ")"
                                : std::string());
    std::size_t failing = 0;
    for (std::size_t ci = 0; ci < cases.size() && total.holds(); ++ci) {
      const auto &c = cases[ci];
      Scenario tmp = sc_;
      tmp.projects = c.inst.projects();
      tmp.budget = c.inst.budget();
      tmp.distances.clear();
      tmp.config.metric = "euclidean";
      const auto rule = make_shortlisting(cfg(), ci == 0 ? sc_ : tmp, c.inst);
      const auto v = std::visit(
          [&](const auto &r) {
            return axiom == "non-wasteful"
                       ? check_non_wasteful(r, c.inst, c.profile)
                       : check_representation_efficient(r, c.inst, c.profile, cfg().caps.domination);
          },
          rule);
      ++total.cases;
      if (!v.holds()) {
        total.fail(*v.witness);
        failing = ci;
      }
    }
    Json j = verdict_header(axiom, total.status, total.exact, total.search, total.cases);
    if (total.witness) {
      const auto &c = cases[failing];
      const auto &w = *total.witness;
      Json wj{{"case", failing},
              {"profile", ids_json(c.inst, c.profile)},
              {"shortlist", ids_json(c.inst, w.shortlist)},
              {"proposed", ids_json(c.inst, w.proposed)}};
      wj["dominating"] = w.dominating ? ids_json(c.inst, *w.dominating) : Json();
      auto rs = case_scenario(sc_, c.inst, sc_.name + "-case-" + std::to_string(failing));
      rs.shortlisting_profile = id_lists(c.inst, c.profile);
      if (failing == 0)
        rs = sc_;
      wj["replay_scenario"] = to_json(rs);
      j["witness"] = std::move(wj);
    } else {
      j["witness"] = Json();
    }
    return Json{{"verdicts", Json::array({std::move(j)})}};
  }

  Json allocation_axiom(AllocationAxiom axiom) const {
    std::vector<AllocationCase> cases;
    const auto shortlist = explicit_or_computed_shortlist();
    cases.push_back({inst_, shortlist, ballots(shortlist)});
    SuiteGenerator gen(suite_params());
    for (std::size_t s = 0; s < cfg().suite; ++s) {
      auto inst = gen.instance();
      const auto sl = gen.nonempty_subset(inst.all());
      cases.push_back({inst, sl, gen.profile(sl, gen.agents())});
    }
    const auto rule = make_allocation(cfg(), sc_, inst_);
    const auto v = std::visit(
        [&](const auto &f) {
          return check_allocation_axiom(f, axiom, cases, cfg().caps.axiom_shortlist);
        },
        rule);
    Json j = verdict_header(std::string(to_string(axiom)), v.status, v.exact, v.search, v.cases);
    if (v.witness) {
      const auto &w = *v.witness;
      const auto &c = cases[w.case_index];
      Json wj{{"case", w.case_index},
              {"shortlist", ids_json(c.instance, c.shortlist)},
              {"profile", ids_json(c.instance, w.profile)},
              {"outcome", ids_json(c.instance, w.outcome)}};
      wj["required"] = w.required ? ids_json(c.instance, *w.required) : Json();
      auto rs = case_scenario(sc_, c.instance, sc_.name + "-case-" + std::to_string(w.case_index));
      rs.shortlist = id_list(c.instance, c.shortlist);
      rs.approval_profile = id_lists(c.instance, w.profile);
      wj["replay_scenario"] = to_json(rs);
      j["witness"] = std::move(wj);
    } else {
      j["witness"] = Json();
    }
    return Json{{"verdicts", Json::array({std::move(j)})}};
  }

  // -- second stage ---------------------------------------------------------

  Json check_ssp() const {
    const auto shortlist = explicit_or_computed_shortlist();
    const auto rule = make_allocation(cfg(), sc_, inst_);
    const auto orders = sc_.orders(inst_);
    SpOptions o;
    o.model = cfg().model;
    o.approximate = cfg().approximate;
    o.search = cfg().sp_search;
    if (cfg().agent)
      o.agents = {*cfg().agent - 1};
    if (!cfg().deviations.empty())
      o.deviations = sc_.sets(inst_, cfg().deviations);
    o.profile_cap = cfg().caps.profiles;
    o.sampling = cfg().sampling;
    o.samples = cfg().samples;
    o.seed = cfg().seed;
    std::optional<ApprovalProfile> others;
    if (sc_.approval_profile)
      others = ballots(shortlist);
    const auto v = std::visit(
        [&](const auto &f) {
          return check_second_stage_sp(f, inst_, shortlist, orders, others, o);
        },
        rule);
    Json j = verdict_header(cfg().approximate ? "approximate-strategyproofness"
                                              : "strategyproofness",
                            v.status, v.exact, v.search, v.cases);
    if (v.witness) {
      auto wj = sp_witness_json(inst_, *v.witness);
      auto rs = sc_;
      rs.name = sc_.name + "-witness";
      rs.expect = Json::array();
      rs.shortlist = id_list(inst_, shortlist);
      auto profile = v.witness->profile;
      profile[v.witness->agent] = v.witness->ideal;
      rs.approval_profile = id_lists(inst_, profile);
      rs.config.agent = v.witness->agent + 1;
      rs.config.deviations = {id_list(inst_, v.witness->deviation)};
      rs.config.sp_search = SpSearch::fixed_others;
      wj["replay_scenario"] = to_json(rs);
      j["witness"] = std::move(wj);
    } else {
      j["witness"] = Json();
    }
    return Json{{"outcomes", Json{{"shortlist", ids_json(inst_, shortlist)},
                                  {"allocation_rule", rule_name(rule)}}},
                 {"verdicts", Json::array({std::move(j)})}};
  }

  // -- first stage ----------------------------------------------------------

  Json check_fssp_command() const {
    if (agents_.empty())
      throw InvalidInput("first-stage checks need at least one agent");
    const auto r = make_shortlisting(cfg(), sc_, inst_);
    const auto f = make_allocation(cfg(), sc_, inst_);
    StrategyOptions so;
    so.profile_cap = cfg().caps.profiles;
    so.best_response_cap = cfg().caps.best_response;
    so.sampling = cfg().sampling;
    so.samples = cfg().samples;
    so.seed = cfg().seed;
    std::optional<ShortlistingProfile> proposals;
    if (sc_.shortlisting_profile)
      proposals = sc_.sets(inst_, *sc_.shortlisting_profile);

    return std::visit(
        [&](const auto &rr, const auto &ff) -> Json {
          using RT = std::decay_t<decltype(rr)>;
          using FT = std::decay_t<decltype(ff)>;
          StageGame<RT, FT> game{rr, ff, inst_, agents_, proposals, cfg().model};
          Json outcomes{{"shortlisting_rule", rr.name()}, {"allocation_rule", ff.name()}};
          if (cfg().deviation) {
            if (!cfg().agent)
              throw InvalidInput("a deviation needs an agent");
            const auto agent = *cfg().agent - 1;
            const auto v = check_manipulation(game, agent, sc_.set(inst_, *cfg().deviation),
                                              cfg().mode, cfg().variant, so);
            Json j{{"property", "manipulation"},
                   {"mode", to_string(cfg().mode)},
                   {"variant", to_string(cfg().variant)},
                   {"status", to_string(v.status)},
                   {"exact", v.exact},
                   {"witness", manipulation_witness_json(inst_, v.witness)}};
            return Json{{"outcomes", outcomes}, {"verdicts", Json::array({std::move(j)})}};
          }
          FsspOptions fo;
          fo.strategy = so;
          fo.deviation_cap = cfg().caps.deviation;
          if (cfg().agent)
            fo.agents = {*cfg().agent - 1};
          const auto v = check_fssp(game, cfg().variant, cfg().mode, fo);
          const std::string prop = std::string(cfg().variant == FsspVariant::restricted ? "R" : "U") +
                                   "-FSSP-" +
                                   static_cast<char>(std::toupper(to_string(cfg().mode)[0]));
          Json j = verdict_header(prop, v.status, v.exact, v.search, v.cases);
          if (v.witness) {
            auto wj = manipulation_witness_json(inst_, *v.witness);
            auto rs = sc_;
            rs.name = sc_.name + "-witness";
            rs.expect = Json::array();
            rs.config.agent = v.witness->agent + 1;
            rs.config.deviation = id_list(inst_, v.witness->deviation);
            wj["replay_scenario"] = to_json(rs);
            j["witness"] = std::move(wj);
          } else {
            j["witness"] = Json();
          }
          return Json{{"outcomes", outcomes}, {"verdicts", Json::array({std::move(j)})}};
        },
        r, f);
  }

  const Scenario &sc_;
  Instance inst_;
  std::vector<Agent> agents_;
};

// ---------------------------------------------------------------------------
// Reports

struct RunOptions {
  bool timing = false;
};

/// Status over every verdict in a report body: sampled if any verdict is.
inline std::string report_status(const Json &body) {
  if (auto it = body.find("verdicts"); it != body.end())
    for (const auto &v : *it)
      if (v.contains("exact") && !v["exact"].get<bool>())
        return "sampled";
  return "exact";
}

inline Json run_command(const std::string &command, const Scenario &sc,
                        const RunOptions &options = {}) {
  const auto start = std::chrono::steady_clock::now();
  auto body = CommandRunner(sc).run(command);
  Json report;
  report["schema"] = report_schema;
  report["command"] = command;
  report["config"] = config_json(sc.config);
  report["status"] = report_status(body);
  for (auto &[k, v] : body.items())
    report[k] = v;
  report["scenario"] = to_json(sc);
  if (options.timing)
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
  return report;
}

/// Re-runs the command recorded in a report and compares outcomes and
/// verdicts.
inline Json replay_report(const Json &report) {
  if (!report.is_object() || report.value("schema", "") != report_schema)
    throw ScenarioError("schema", "/schema", "not a report document");
  if (!report.contains("scenario") || !report.contains("command"))
    throw ScenarioError("schema", "", "report lacks scenario or command");
  const auto sc = parse_scenario_json(report["scenario"]);
  const auto command = report["command"].get<std::string>();
  const auto again = run_command(command, sc);
  Json diffs = Json::array();
  for (const char *key : {"outcomes", "verdicts"}) {
    const auto a = report.contains(key) ? report[key] : Json();
    const auto b = again.contains(key) ? again[key] : Json();
    for (const auto &d : Json::diff(a, b))
      diffs.push_back("/" + std::string(key) + d["path"].get<std::string>());
  }
  Json out;
  out["schema"] = report_schema;
  out["command"] = "replay";
  out["replay"] = Json{{"command", command}, {"matches", diffs.empty()}, {"differences", diffs}};
  out["status"] = report_status(again);
  if (again.contains("outcomes"))
    out["outcomes"] = again["outcomes"];
  if (again.contains("verdicts"))
    out["verdicts"] = again["verdicts"];
  return out;
}

inline std::optional<Scenario> bundled_fixture(std::string_view name) {
  for (const auto &f : bundled_fixtures)
    if (f.name == name)
      return parse_scenario_text(std::string(f.text));
  return std::nullopt;
}

/// Runs every expectation of one scenario. Informational checks compare
/// against the exact computed value and carry the conflicting recorded claim.
inline Json run_expectations(const Scenario &sc) {
  Json checks = Json::array();
  bool ok = true, informational = false;
  std::size_t idx = 0;
  for (const auto &e : sc.expect) {
    const auto where = "/expect/" + std::to_string(idx++);
    Scenario variant = sc;
    if (auto c = e.find("config"); c != e.end()) {
      detail::Reader reader;
      std::vector<std::int64_t> ids;
      for (const auto &p : sc.projects)
        ids.push_back(index_of(p.id));
      reader.set_known(ids);
      apply_config(variant.config, *c, reader, where + "/config");
    }
    const auto command = e.at("command").get<std::string>();
    Json result{{"command", command}};
    const bool info = e.value("informational", false);
    informational = informational || info;
    try {
      const auto report = run_command(command, variant);
      Json items = Json::array();
      bool pass = true;
      for (const auto &[pointer, expected] : e.at("checks").items()) {
        const Json::json_pointer ptr(pointer);
        const auto actual = report.contains(ptr) ? report.at(ptr) : Json();
        const bool same = actual == expected;
        pass = pass && same;
        Json item{{"pointer", pointer}, {"expected", expected}, {"computed", actual},
                  {"match", same}};
        if (info)
          if (auto pc = e.find("claimed"); pc != e.end() && pc->contains(pointer))
            item["claimed"] = (*pc)[pointer];
        items.push_back(std::move(item));
      }
      result["checks"] = std::move(items);
      result["status"] = !pass ? "fail" : info ? "informational" : "pass";
      if (info && e.contains("note"))
        result["note"] = e["note"];
      ok = ok && pass;
    } catch (const ResourceLimit &ex) {
      result["status"] = "fail";
      result["error"] = ex.what();
      ok = false;
    } catch (const std::exception &ex) {
      result["status"] = "fail";
      result["error"] = ex.what();
      ok = false;
    }
    checks.push_back(std::move(result));
  }
  return Json{{"name", sc.name},
              {"status", !ok ? "fail" : informational ? "informational" : "pass"},
              {"checks", std::move(checks)}};
}

inline Json run_paper_suite() {
  Json fixtures = Json::array();
  Json informational = Json::array();
  std::size_t passed = 0, failed = 0;
  for (const auto &f : bundled_fixtures) {
    auto r = run_expectations(parse_scenario_text(std::string(f.text)));
    const auto status = r["status"].get<std::string>();
    if (status == "fail")
      ++failed;
    else
      ++passed;
    if (status == "informational")
      informational.push_back(r["name"]);
    fixtures.push_back(std::move(r));
  }
  Json out;
  out["schema"] = report_schema;
  out["command"] = "paper-suite";
  out["status"] = "exact";
  out["summary"] = Json{{"fixtures", fixtures.size()},
                        {"passed", passed},
                        {"failed", failed},
                        {"informational", std::move(informational)}};
  out["fixtures"] = std::move(fixtures);
  return out;
}

} // namespace pbe
