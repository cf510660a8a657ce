/**
 * @file scenario.hpp
 * @brief Scenario documents: JSON parsing with located diagnostics, and
 * serialization back to the same schema.
 */
#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "pbe/allocation.hpp"
#include "pbe/core.hpp"
#include "pbe/preferences.hpp"
#include "pbe/shortlisting.hpp"
#include "pbe/strategy.hpp"
#include "pbe/verification.hpp"

namespace pbe {

using Json = nlohmann::ordered_json;

inline constexpr const char *scenario_schema = "pbe-scenario/1";
inline constexpr const char *report_schema = "pbe-report/1";

/// A document problem. `kind` is one of syntax, schema, reference,
/// validation, metric; `where` is a JSON pointer or a line:column location.
class ScenarioError : public InvalidInput {
public:
  ScenarioError(std::string kind, std::string where, const std::string &msg)
      : InvalidInput(kind + " error at " + (where.empty() ? "/" : where) + ": " + msg),
        kind_(std::move(kind)), where_(std::move(where)) {}
  const std::string &kind() const noexcept { return kind_; }
  const std::string &where() const noexcept { return where_; }

private:
  std::string kind_;
  std::string where_;
};

struct Caps {
  std::size_t equal_representation = default_equal_representation_cap;
  std::size_t partition = default_partition_cap;
  std::size_t domination = default_domination_cap;
  std::size_t best_response = default_best_response_cap;
  std::size_t axiom_shortlist = default_axiom_shortlist_cap;
  std::size_t deviation = 16;
  std::uint64_t profiles = default_profile_cap;

  friend bool operator==(const Caps &, const Caps &) = default;
};

struct Config {
  std::string shortlisting_rule = "nomination";
  std::string allocation_rule = "greedy-approval";
  int k = 1;
  std::string metric = "auto"; ///< auto, euclidean or table
  PreferenceModel model = PreferenceModel::overlap;
  ManipulationMode mode = ManipulationMode::pessimistic;
  FsspVariant variant = FsspVariant::restricted;
  std::optional<std::size_t> agent; ///< 1-based
  std::optional<std::vector<int>> deviation;
  std::vector<std::vector<int>> deviations; ///< explicit SP ballots to try
  bool approximate = false;
  SpSearch sp_search = SpSearch::fixed_others;
  std::string axiom = "non-wasteful";
  std::vector<std::vector<int>> tie_break; ///< explicit priority, empty = T
  Caps caps;
  std::uint64_t seed = 1;
  std::size_t suite = 0; ///< random cases added to suite-based checks
  bool sampling = false;
  std::size_t samples = 256;

  friend bool operator==(const Config &, const Config &) = default;
};

struct ScenarioAgent {
  std::vector<int> ranking;
  std::vector<int> awareness;
  friend bool operator==(const ScenarioAgent &, const ScenarioAgent &) = default;
};

/// Raw, id-based view of a document. Typed objects are built on demand so a
/// document can round-trip exactly as written.
struct Scenario {
  std::string name;
  std::string description;
  Cost budget = 1;
  std::vector<Project> projects;
  std::vector<std::tuple<int, int, double>> distances;
  std::vector<ScenarioAgent> agents;
  std::optional<std::vector<std::vector<int>>> shortlisting_profile;
  std::optional<std::vector<int>> shortlist;
  std::optional<std::vector<std::vector<int>>> approval_profile;
  Config config;
  Json expect = Json::array();

  Instance instance() const { return Instance(projects, budget); }

  ProjectSet set(const Instance &inst, const std::vector<int> &ids) const {
    ProjectSet s;
    for (auto i : ids)
      s.insert(inst.position(ProjectId{i}));
    return s;
  }

  std::vector<ProjectSet> sets(const Instance &inst,
                               const std::vector<std::vector<int>> &lists) const {
    std::vector<ProjectSet> out;
    for (const auto &l : lists)
      out.push_back(set(inst, l));
    return out;
  }

  std::vector<Agent> typed_agents(const Instance &inst) const {
    std::vector<Agent> out;
    for (const auto &a : agents) {
      std::vector<ProjectId> r;
      for (auto i : a.ranking)
        r.push_back(ProjectId{i});
      out.push_back({PreferenceOrder(inst, std::move(r)), set(inst, a.awareness)});
    }
    return out;
  }

  std::vector<PreferenceOrder> orders(const Instance &inst) const {
    std::vector<PreferenceOrder> out;
    for (auto &a : typed_agents(inst))
      out.push_back(std::move(a.order));
    return out;
  }

  /// Explicit distance table if present, otherwise Euclidean over coordinates.
  Metric metric(const Instance &inst) const {
    const bool table = config.metric == "table" || (config.metric == "auto" && !distances.empty());
    if (!table)
      return Metric::euclidean(inst);
    std::vector<Metric::Entry> entries;
    for (const auto &[a, b, d] : distances)
      entries.emplace_back(ProjectId{a}, ProjectId{b}, d);
    return Metric::from_table(inst, entries);
  }

  friend bool operator==(const Scenario &a, const Scenario &b) {
    auto same_projects = [](const std::vector<Project> &x, const std::vector<Project> &y) {
      if (x.size() != y.size())
        return false;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].id != y[i].id || x[i].cost != y[i].cost || x[i].coords != y[i].coords)
          return false;
      return true;
    };
    return a.name == b.name && a.description == b.description && a.budget == b.budget &&
           same_projects(a.projects, b.projects) && a.distances == b.distances &&
           a.agents == b.agents && a.shortlisting_profile == b.shortlisting_profile &&
           a.shortlist == b.shortlist && a.approval_profile == b.approval_profile &&
           a.config == b.config && a.expect == b.expect;
  }
};

// ---------------------------------------------------------------------------
// Config names

inline SpSearch parse_sp_search(std::string_view s) {
  if (s == "fixed-others")
    return SpSearch::fixed_others;
  if (s == "full")
    return SpSearch::full;
  if (s == "sampled")
    return SpSearch::sampled;
  throw InvalidInput("unknown SP search mode '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Reader {
public:
  [[noreturn]] static void fail(const std::string &kind, const std::string &where,
                                const std::string &msg) {
    throw ScenarioError(kind, where, msg);
  }

  static const Json &field(const Json &obj, const std::string &where, const char *key) {
    if (!obj.is_object())
      fail("schema", where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
      fail("schema", where + "/" + key, "missing required field");
    return *it;
  }

  static const Json *optional(const Json &obj, const char *key) {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
  }

  static std::int64_t integer(const Json &v, const std::string &where) {
    if (!v.is_number_integer())
      fail("schema", where, "expected an integer");
    return v.get<std::int64_t>();
  }

  static double real(const Json &v, const std::string &where) {
    if (!v.is_number())
      fail("schema", where, "expected a number");
    return v.get<double>();
  }

  static std::string text(const Json &v, const std::string &where) {
    if (!v.is_string())
      fail("schema", where, "expected a string");
    return v.get<std::string>();
  }

  static bool boolean(const Json &v, const std::string &where) {
    if (!v.is_boolean())
      fail("schema", where, "expected true or false");
    return v.get<bool>();
  }

  static const Json &array(const Json &v, const std::string &where) {
    if (!v.is_array())
      fail("schema", where, "expected an array");
    return v;
  }

  std::vector<int> ids(const Json &v, const std::string &where) const {
    std::vector<int> out;
    std::size_t i = 0;
    for (const auto &e : array(v, where)) {
      const auto w = where + "/" + std::to_string(i++);
      const auto id = integer(e, w);
      if (checked_ && !std::binary_search(known_.begin(), known_.end(), id))
        fail("reference", w, "unknown project id " + std::to_string(id));
      out.push_back(static_cast<int>(id));
    }
    return out;
  }

  std::vector<std::vector<int>> id_lists(const Json &v, const std::string &where) const {
    std::vector<std::vector<int>> out;
    std::size_t i = 0;
    for (const auto &e : array(v, where))
      out.push_back(ids(e, where + "/" + std::to_string(i++)));
    return out;
  }

  void set_known(std::vector<std::int64_t> ids) {
    std::sort(ids.begin(), ids.end());
    known_ = std::move(ids);
    checked_ = true;
  }

private:
  std::vector<std::int64_t> known_;
  bool checked_ = false;
};

inline void read_caps(const Json &j, Caps &caps) {
  using R = Reader;
  const std::string w = "/config/caps";
  if (!j.is_object())
    R::fail("schema", w, "expected an object");
  for (const auto &[key, value] : j.items()) {
    const auto where = w + "/" + key;
    const auto n = R::integer(value, where);
    if (n < 0)
      R::fail("validation", where, "caps must be nonnegative");
    const auto u = static_cast<std::uint64_t>(n);
    if (key == "equal-representation")
      caps.equal_representation = u;
    else if (key == "partition")
      caps.partition = u;
    else if (key == "domination")
      caps.domination = u;
    else if (key == "best-response")
      caps.best_response = u;
    else if (key == "axiom-shortlist")
      caps.axiom_shortlist = u;
    else if (key == "deviation")
      caps.deviation = u;
    else if (key == "profiles")
      caps.profiles = u;
    else
      R::fail("schema", where, "unknown cap");
  }
}

} // namespace detail

/// Applies the members of `j` on top of `config`. Used for the document's
/// config block and for per-check overrides.
inline void apply_config(Config &c, const Json &j, const detail::Reader &reader,
                         const std::string &w = "/config") {
  using R = detail::Reader;
  if (!j.is_object())
    R::fail("schema", w, "expected an object");
  auto wrap = [&](const std::string &where, auto &&fn) {
    try {
      fn();
    } catch (const ScenarioError &) {
      throw;
    } catch (const InvalidInput &e) {
      R::fail("schema", where, e.what());
    }
  };
  for (const auto &[key, v] : j.items()) {
    const auto where = w + "/" + key;
    if (key == "shortlisting_rule")
      c.shortlisting_rule = R::text(v, where);
    else if (key == "allocation_rule")
      c.allocation_rule = R::text(v, where);
    else if (key == "k") {
      const auto k = R::integer(v, where);
      if (k < 1)
        R::fail("validation", where, "k must be at least 1");
      c.k = static_cast<int>(k);
    } else if (key == "metric") {
      c.metric = R::text(v, where);
      if (c.metric != "auto" && c.metric != "euclidean" && c.metric != "table")
        R::fail("schema", where, "metric must be auto, euclidean or table");
    } else if (key == "model")
      wrap(where, [&] { c.model = parse_model(R::text(v, where)); });
    else if (key == "mode")
      wrap(where, [&] { c.mode = parse_mode(R::text(v, where)); });
    else if (key == "variant")
      wrap(where, [&] { c.variant = parse_variant(R::text(v, where)); });
    else if (key == "agent") {
      const auto a = R::integer(v, where);
      if (a < 1)
        R::fail("validation", where, "agents are numbered from 1");
      c.agent = static_cast<std::size_t>(a);
    } else if (key == "deviation")
      c.deviation = reader.ids(v, where);
    else if (key == "deviations")
      c.deviations = reader.id_lists(v, where);
    else if (key == "approximate")
      c.approximate = R::boolean(v, where);
    else if (key == "sp_search")
      wrap(where, [&] { c.sp_search = parse_sp_search(R::text(v, where)); });
    else if (key == "axiom")
      c.axiom = R::text(v, where);
    else if (key == "tie_break")
      c.tie_break = reader.id_lists(v, where);
    else if (key == "caps")
      detail::read_caps(v, c.caps);
    else if (key == "seed") {
      const auto s = R::integer(v, where);
      if (s < 0)
        R::fail("validation", where, "seed must be nonnegative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "suite") {
      const auto s = R::integer(v, where);
      if (s < 0)
        R::fail("validation", where, "suite size must be nonnegative");
      c.suite = static_cast<std::size_t>(s);
    } else if (key == "sampling")
      c.sampling = R::boolean(v, where);
    else if (key == "samples") {
      const auto s = R::integer(v, where);
      if (s < 1)
        R::fail("validation", where, "samples must be positive");
      c.samples = static_cast<std::size_t>(s);
    } else
      R::fail("schema", where, "unknown config field");
  }
}

inline Scenario parse_scenario_json(const Json &root) {
  using R = detail::Reader;
  detail::Reader reader;
  if (!root.is_object())
    R::fail("schema", "", "expected an object");
  if (auto s = R::optional(root, "schema"); s && R::text(*s, "/schema") != scenario_schema)
    R::fail("schema", "/schema", "unsupported schema '" + s->get<std::string>() + "'");

  Scenario sc;
  if (auto n = R::optional(root, "name"))
    sc.name = R::text(*n, "/name");
  if (auto d = R::optional(root, "description"))
    sc.description = R::text(*d, "/description");

  const auto &inst = R::field(root, "", "instance");
  const auto b = R::integer(R::field(inst, "/instance", "budget"), "/instance/budget");
  if (b < 1)
    R::fail("validation", "/instance/budget", "budget must be at least 1");
  sc.budget = b;
  const auto &projects = R::array(R::field(inst, "/instance", "projects"), "/instance/projects");
  if (projects.size() > ProjectSet::capacity)
    R::fail("validation", "/instance/projects",
            "at most " + std::to_string(ProjectSet::capacity) + " projects are supported");
  std::vector<std::int64_t> seen;
  for (std::size_t i = 0; i < projects.size(); ++i) {
    const auto w = "/instance/projects/" + std::to_string(i);
    const auto &p = projects[i];
    const auto id = R::integer(R::field(p, w, "id"), w + "/id");
    if (id < 1 || id > INT32_MAX)
      R::fail("validation", w + "/id", "project ids are positive integers");
    if (std::find(seen.begin(), seen.end(), id) != seen.end())
      R::fail("validation", w + "/id", "duplicate project id " + std::to_string(id));
    seen.push_back(id);
    const auto cost = R::integer(R::field(p, w, "cost"), w + "/cost");
    if (cost < 1)
      R::fail("validation", w + "/cost", "cost must be at least 1");
    if (cost > b)
      R::fail("validation", w + "/cost",
              "cost " + std::to_string(cost) + " exceeds the budget " + std::to_string(b));
    Project proj{ProjectId{static_cast<std::int32_t>(id)}, cost, std::nullopt};
    if (auto c = R::optional(p, "coords")) {
      std::vector<double> xs;
      std::size_t k = 0;
      for (const auto &x : R::array(*c, w + "/coords"))
        xs.push_back(R::real(x, w + "/coords/" + std::to_string(k++)));
      proj.coords = std::move(xs);
    }
    sc.projects.push_back(std::move(proj));
  }
  reader.set_known(seen);
  const auto instance = sc.instance();

  if (auto d = R::optional(root, "distances")) {
    std::size_t i = 0;
    for (const auto &e : R::array(*d, "/distances")) {
      const auto w = "/distances/" + std::to_string(i++);
      if (!e.is_array() || e.size() != 3)
        R::fail("schema", w, "expected [id, id, distance]");
      const auto ab = reader.ids(Json::array({e[0], e[1]}), w);
      sc.distances.emplace_back(ab[0], ab[1], R::real(e[2], w + "/2"));
    }
    try {
      std::vector<Metric::Entry> entries;
      for (const auto &[a, b2, dist] : sc.distances)
        entries.emplace_back(ProjectId{a}, ProjectId{b2}, dist);
      (void)Metric::from_table(instance, entries);
    } catch (const InvalidInput &e) {
      R::fail("metric", "/distances", e.what());
    }
  }

  if (auto agents = R::optional(root, "agents")) {
    std::size_t i = 0;
    for (const auto &a : R::array(*agents, "/agents")) {
      const auto w = "/agents/" + std::to_string(i++);
      ScenarioAgent sa;
      sa.ranking = reader.ids(R::field(a, w, "ranking"), w + "/ranking");
      if (auto aw = R::optional(a, "awareness"))
        sa.awareness = reader.ids(*aw, w + "/awareness");
      else
        sa.awareness = sa.ranking;
      try {
        (void)PreferenceOrder(instance, [&] {
          std::vector<ProjectId> r;
          for (auto x : sa.ranking)
            r.push_back(ProjectId{x});
          return r;
        }());
      } catch (const InvalidInput &e) {
        R::fail("validation", w + "/ranking", e.what());
      }
      sc.agents.push_back(std::move(sa));
    }
  }

  if (auto p = R::optional(root, "shortlisting_profile")) {
    sc.shortlisting_profile = reader.id_lists(*p, "/shortlisting_profile");
    if (!sc.agents.empty() && sc.shortlisting_profile->size() != sc.agents.size())
      R::fail("validation", "/shortlisting_profile", "one proposal per agent is required");
  }
  if (auto s = R::optional(root, "shortlist"))
    sc.shortlist = reader.ids(*s, "/shortlist");
  if (auto a = R::optional(root, "approval_profile")) {
    sc.approval_profile = reader.id_lists(*a, "/approval_profile");
    if (sc.shortlist) {
      const auto sl = sc.set(instance, *sc.shortlist);
      for (std::size_t i = 0; i < sc.approval_profile->size(); ++i)
        if (!sc.set(instance, (*sc.approval_profile)[i]).subset_of(sl))
          R::fail("validation", "/approval_profile/" + std::to_string(i),
                  "ballot approves a project outside the shortlist");
    }
  }
  if (auto c = R::optional(root, "config"))
    apply_config(sc.config, *c, reader);
  if (auto e = R::optional(root, "expect"))
    sc.expect = R::array(*e, "/expect");
  return sc;
}

inline Scenario parse_scenario_text(const std::string &text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    // Locate the byte offset as line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ScenarioError("syntax", std::to_string(line) + ":" + std::to_string(col),
                        "malformed JSON");
  }
  return parse_scenario_json(root);
}

inline Scenario parse_scenario(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ScenarioError("io", path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str());
}

// ---------------------------------------------------------------------------
// Serialization

inline Json ids_json(const Instance &inst, ProjectSet s) {
  Json out = Json::array();
  for (auto id : inst.ids(s))
    out.push_back(index_of(id));
  return out;
}

inline Json ids_json(const Instance &inst, const std::vector<ProjectSet> &sets) {
  Json out = Json::array();
  for (auto s : sets)
    out.push_back(ids_json(inst, s));
  return out;
}

inline Json caps_json(const Caps &c) {
  return Json{{"equal-representation", c.equal_representation},
              {"partition", c.partition},
              {"domination", c.domination},
              {"best-response", c.best_response},
              {"axiom-shortlist", c.axiom_shortlist},
              {"deviation", c.deviation},
              {"profiles", c.profiles}};
}

inline Json config_json(const Config &c) {
  Json j;
  j["shortlisting_rule"] = c.shortlisting_rule;
  j["allocation_rule"] = c.allocation_rule;
  j["k"] = c.k;
  j["metric"] = c.metric;
  j["model"] = to_string(c.model);
  j["mode"] = to_string(c.mode);
  j["variant"] = to_string(c.variant);
  if (c.agent)
    j["agent"] = *c.agent;
  if (c.deviation)
    j["deviation"] = *c.deviation;
  if (!c.deviations.empty())
    j["deviations"] = c.deviations;
  j["approximate"] = c.approximate;
  j["sp_search"] = to_string(c.sp_search);
  j["axiom"] = c.axiom;
  if (!c.tie_break.empty())
    j["tie_break"] = c.tie_break;
  j["caps"] = caps_json(c.caps);
  j["seed"] = c.seed;
  j["suite"] = c.suite;
  j["sampling"] = c.sampling;
  j["samples"] = c.samples;
  return j;
}

inline Json to_json(const Scenario &sc) {
  Json j;
  j["schema"] = scenario_schema;
  j["name"] = sc.name;
  if (!sc.description.empty())
    j["description"] = sc.description;
  Json projects = Json::array();
  for (const auto &p : sc.projects) {
    Json pj{{"id", index_of(p.id)}, {"cost", p.cost}};
    if (p.coords)
      pj["coords"] = *p.coords;
    projects.push_back(std::move(pj));
  }
  j["instance"] = Json{{"budget", sc.budget}, {"projects", std::move(projects)}};
  if (!sc.distances.empty()) {
    Json d = Json::array();
    for (const auto &[a, b, x] : sc.distances)
      d.push_back(Json::array({a, b, x}));
    j["distances"] = std::move(d);
  }
  Json agents = Json::array();
  for (const auto &a : sc.agents)
    agents.push_back(Json{{"ranking", a.ranking}, {"awareness", a.awareness}});
  j["agents"] = std::move(agents);
  if (sc.shortlisting_profile)
    j["shortlisting_profile"] = *sc.shortlisting_profile;
  if (sc.shortlist)
    j["shortlist"] = *sc.shortlist;
  if (sc.approval_profile)
    j["approval_profile"] = *sc.approval_profile;
  j["config"] = config_json(sc.config);
  if (!sc.expect.empty())
    j["expect"] = sc.expect;
  return j;
}

} // namespace pbe
