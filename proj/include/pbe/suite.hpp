/**
 * @file suite.hpp
 * @brief Seeded random instances and profiles for property checks.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pbe/core.hpp"
#include "pbe/preferences.hpp"

namespace pbe {

struct SuiteParams {
  std::size_t min_projects = 2;
  std::size_t max_projects = 6;
  std::size_t min_agents = 1;
  std::size_t max_agents = 4;
  Cost min_cost = 1;
  Cost max_cost = 6;
  bool unit_cost = false;
  bool coordinates = false; ///< integer grid points in [0, grid]^2
  int grid = 4;
  std::uint64_t seed = 1;

  std::string describe() const {
    return "projects " + std::to_string(min_projects) + "-" + std::to_string(max_projects) +
           ", agents " + std::to_string(min_agents) + "-" + std::to_string(max_agents) +
           ", costs " + std::to_string(min_cost) + "-" + std::to_string(max_cost) +
           (unit_cost ? " (unit)" : "") + ", budget max-cost..total-cost, seed " +
           std::to_string(seed);
  }
};

class SuiteGenerator {
public:
  explicit SuiteGenerator(SuiteParams params) : params_(params), rng_(params.seed) {}

  const SuiteParams &params() const noexcept { return params_; }
  std::mt19937_64 &rng() noexcept { return rng_; }

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  /// Budget is drawn between the largest project cost and the total cost.
  Instance instance() {
    const auto m = uniform(params_.min_projects, params_.max_projects);
    std::vector<Project> projects;
    const Cost shared = static_cast<Cost>(uniform(static_cast<std::size_t>(params_.min_cost),
                                                  static_cast<std::size_t>(params_.max_cost)));
    Cost largest = 1, total = 0;
    for (std::size_t i = 1; i <= m; ++i) {
      Project p;
      p.id = ProjectId{static_cast<std::int32_t>(i)};
      p.cost = params_.unit_cost
                   ? shared
                   : static_cast<Cost>(uniform(static_cast<std::size_t>(params_.min_cost),
                                               static_cast<std::size_t>(params_.max_cost)));
      if (params_.coordinates)
        p.coords = std::vector<double>{
            static_cast<double>(uniform(0, static_cast<std::size_t>(params_.grid))),
            static_cast<double>(uniform(0, static_cast<std::size_t>(params_.grid)))};
      largest = std::max(largest, p.cost);
      total += p.cost;
      projects.push_back(std::move(p));
    }
    const auto budget = static_cast<Cost>(
        uniform(static_cast<std::size_t>(largest), static_cast<std::size_t>(total)));
    return Instance(std::move(projects), budget);
  }

  std::size_t agents() { return uniform(params_.min_agents, params_.max_agents); }

  ProjectSet subset(ProjectSet of) {
    ProjectSet s;
    of.for_each([&](std::size_t pos) {
      if (rng_() & 1U)
        s.insert(pos);
    });
    return s;
  }

  ProjectSet nonempty_subset(ProjectSet of) {
    if (of.empty())
      return of;
    for (;;)
      if (auto s = subset(of); !s.empty())
        return s;
  }

  std::vector<ProjectSet> profile(ProjectSet of, std::size_t agents) {
    std::vector<ProjectSet> out(agents);
    for (auto &s : out)
      s = subset(of);
    return out;
  }

  PreferenceOrder order(const Instance &inst) {
    auto ids = inst.ids(inst.all());
    std::shuffle(ids.begin(), ids.end(), rng_);
    return PreferenceOrder(inst, std::move(ids));
  }

private:
  SuiteParams params_;
  std::mt19937_64 rng_;
};

} // namespace pbe
