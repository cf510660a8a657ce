// Command-line front end. Exit codes: 0 completed (whatever the verdict),
// 2 invalid input, 3 resource limit.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pbe/pbe.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_limit = 3;

std::vector<int> parse_id_list(const std::string &text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = item;
    t.erase(0, t.find_first_not_of(" {p"));
    t.erase(t.find_last_not_of(" }") + 1);
    if (t.empty())
      continue;
    if (t.front() == 'p')
      t.erase(0, 1);
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(t, &used));
      if (used != t.size())
        throw std::invalid_argument(t);
    } catch (const std::exception &) {
      throw pbe::InvalidInput("cannot read project id '" + item + "'");
    }
  }
  return out;
}

bool is_rule_of(const std::string &name, const std::vector<std::string> &family) {
  const auto base = pbe::detail::split_rule_name(name).first;
  for (const auto &f : family)
    if (base == f || (f == "k-median" && base == "median"))
      return true;
  return false;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw pbe::ScenarioError("io", path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Participatory budgeting engine: shortlisting, allocation and strategyproofness checks"};
  app.set_version_flag("--version", "pbe 1.0");

  std::string command;
  std::string path;
  std::string fixture;
  std::vector<std::string> rules;
  std::string out_path;
  bool timing = false;
  bool list = false;

  app.add_option("command", command, "Command to run")
      ->check(CLI::IsMember(pbe::command_names()));
  app.add_option("scenario", path, "Scenario file (a report file for replay)");
  app.add_option("--fixture", fixture, "Use a bundled fixture instead of a file");
  app.add_flag("--list-fixtures", list, "Print the bundled fixture names");
  app.add_option("--rule", rules, "Shortlisting or allocation rule (repeatable)");
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_flag("--timing", timing, "Add wall-clock timing to the report");

  pbe::Json overrides = pbe::Json::object();
  auto opt_int = [&](const std::string &flag, const char *key, const std::string &help) {
    app.add_option_function<long long>(
        flag, [&overrides, key](long long v) { overrides[key] = v; }, help);
  };
  auto opt_text = [&](const std::string &flag, const char *key, const std::string &help) {
    app.add_option_function<std::string>(
        flag, [&overrides, key](const std::string &v) { overrides[key] = v; }, help);
  };
  opt_int("--k", "k", "Budget multiplier k of the shortlisting rule");
  opt_text("--metric", "metric", "auto, euclidean or table");
  opt_text("--model", "model", "overlap or cost");
  opt_text("--mode", "mode", "pessimistic, optimistic or anticipative");
  opt_text("--variant", "variant", "restricted or unrestricted");
  opt_text("--sp-search", "sp_search", "fixed-others, full or sampled");
  opt_text("--axiom", "axiom",
           "non-wasteful, representation-efficient, exhaustive, unanimous or strongly-unanimous");
  opt_int("--seed", "seed", "Seed for sampling and generated suites");
  opt_int("--agent", "agent", "Agent to check (1-based)");
  opt_int("--suite", "suite", "Random cases added to check-axiom");
  opt_int("--samples", "samples", "Samples per sampled search");
  std::string deviation;
  app.add_option("--deviation", deviation, "Deviating proposal or ballot, e.g. 4,5,10");
  bool approximate = false, sampling = false;
  app.add_flag("--approximate", approximate, "Check approximate strategyproofness");
  app.add_flag("--sampling", sampling, "Sample instead of failing when a cap is exceeded");

  pbe::Json caps = pbe::Json::object();
  for (const char *cap : {"equal-representation", "partition", "domination", "best-response",
                          "axiom-shortlist", "deviation", "profiles"}) {
    app.add_option_function<long long>(
        std::string("--cap-") + cap, [&caps, cap](long long v) { caps[cap] = v; },
        std::string("Override the ") + cap + " cap");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return exit_invalid;
  }

  if (list) {
    for (const auto &f : pbe::bundled_fixtures)
      std::cout << f.name << '\n';
    return exit_ok;
  }
  if (command.empty()) {
    std::cerr << "error: a command is required\n" << app.help();
    return exit_invalid;
  }

  try {
    pbe::Json report;
    if (command == "paper-suite") {
      report = pbe::run_paper_suite();
    } else if (command == "replay") {
      if (path.empty())
        throw pbe::InvalidInput("replay needs a report file");
      pbe::Json doc;
      try {
        doc = pbe::Json::parse(read_file(path));
      } catch (const pbe::Json::parse_error &) {
        throw pbe::ScenarioError("syntax", path, "malformed JSON");
      }
      report = pbe::replay_report(doc);
    } else {
      pbe::Scenario sc;
      if (!fixture.empty()) {
        auto f = pbe::bundled_fixture(fixture);
        if (!f)
          throw pbe::InvalidInput("no bundled fixture named '" + fixture + "'");
        sc = *f;
      } else if (!path.empty()) {
        sc = pbe::parse_scenario(path);
      } else {
        throw pbe::InvalidInput("give a scenario file or --fixture NAME");
      }
      for (const auto &r : rules) {
        if (is_rule_of(r, pbe::shortlisting_rule_names()))
          overrides["shortlisting_rule"] = r;
        else if (is_rule_of(r, pbe::allocation_rule_names()))
          overrides["allocation_rule"] = r;
        else
          throw pbe::InvalidInput("unknown rule '" + r + "'");
      }
      if (!deviation.empty())
        overrides["deviation"] = parse_id_list(deviation);
      if (approximate)
        overrides["approximate"] = true;
      if (sampling)
        overrides["sampling"] = true;
      if (!caps.empty())
        overrides["caps"] = caps;
      pbe::detail::Reader reader;
      std::vector<std::int64_t> ids;
      for (const auto &p : sc.projects)
        ids.push_back(pbe::index_of(p.id));
      reader.set_known(ids);
      pbe::apply_config(sc.config, overrides, reader, "--");
      report = pbe::run_command(command, sc, {timing});
    }
    const auto text = report.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out)
        throw pbe::InvalidInput("cannot write '" + out_path + "'");
      out << text;
    }
    return exit_ok;
  } catch (const pbe::ResourceLimit &e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return exit_limit;
  } catch (const pbe::NoPartition &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_invalid;
  }
}
