/**
 * @file preferences.hpp
 * @brief Agent preference orders, ideal sets, and the overlap / cost
 * comparison models over budget allocations.
 */
#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "pbe/core.hpp"

namespace pbe {

enum class PreferenceModel { overlap, cost };

inline std::string_view to_string(PreferenceModel m) noexcept {
  return m == PreferenceModel::overlap ? "overlap" : "cost";
}

inline PreferenceModel parse_model(std::string_view name) {
  if (name == "overlap")
    return PreferenceModel::overlap;
  if (name == "cost")
    return PreferenceModel::cost;
  throw InvalidInput("unknown preference model '" + std::string(name) + "'");
}

/// A strict linear order over the whole universe, most preferred first.
class PreferenceOrder {
public:
  PreferenceOrder() = default;

  PreferenceOrder(const Instance &inst, std::vector<ProjectId> ranking)
      : ranking_(std::move(ranking)) {
    ProjectSet seen;
    positions_.reserve(ranking_.size());
    for (auto id : ranking_) {
      const auto pos = inst.position(id);
      if (seen.contains(pos))
        throw InvalidInput("preference order repeats p" +
                           std::to_string(index_of(id)));
      seen.insert(pos);
      positions_.push_back(pos);
    }
    if (seen != inst.all())
      throw InvalidInput("preference order must rank every project");
  }

  /// Order by ascending index.
  static PreferenceOrder by_index(const Instance &inst) {
    return PreferenceOrder(inst, inst.ids(inst.all()));
  }

  const std::vector<ProjectId> &ranking() const noexcept { return ranking_; }
  std::span<const std::size_t> positions() const noexcept { return positions_; }

private:
  std::vector<ProjectId> ranking_;
  std::vector<std::size_t> positions_;
};

/// top_i(available): greedy selection over the order restricted to `available`.
inline ProjectSet ideal_set(const Instance &inst, const PreferenceOrder &order,
                            ProjectSet available, Cost budget) {
  ProjectSet selected;
  Cost spent = 0;
  for (auto pos : order.positions()) {
    if (!available.contains(pos))
      continue;
    const auto c = inst.cost(pos);
    if (spent + c <= budget) {
      selected.insert(pos);
      spent += c;
    }
  }
  return selected;
}

inline ProjectSet ideal_set(const Instance &inst, const PreferenceOrder &order,
                            ProjectSet available) {
  return ideal_set(inst, order, available, inst.budget());
}

/// The agent's value for an allocation: |A ∩ ideal| or c(A ∩ ideal).
inline Cost preference_score(PreferenceModel model, const Instance &inst,
                             ProjectSet ideal, ProjectSet allocation) {
  const auto common = ideal & allocation;
  return model == PreferenceModel::overlap ? static_cast<Cost>(common.size())
                                           : inst.cost(common);
}

/// `greater` when the agent with this ideal set strictly prefers `a`.
inline std::weak_ordering compare(PreferenceModel model, const Instance &inst,
                                  ProjectSet ideal, ProjectSet a, ProjectSet b) {
  return preference_score(model, inst, ideal, a) <=>
         preference_score(model, inst, ideal, b);
}

/// Undominated members of `family`. Both models are total preorders, so this
/// is the argmax of the score; input order is kept and duplicates dropped.
inline std::vector<ProjectSet> best_allocations(PreferenceModel model,
                                                const Instance &inst,
                                                ProjectSet ideal,
                                                std::span<const ProjectSet> family) {
  if (family.empty())
    throw InvalidInput("best allocations of an empty family");
  Cost top = preference_score(model, inst, ideal, family.front());
  for (auto a : family)
    top = std::max(top, preference_score(model, inst, ideal, a));
  std::vector<ProjectSet> out;
  for (auto a : family)
    if (preference_score(model, inst, ideal, a) == top &&
        std::find(out.begin(), out.end(), a) == out.end())
      out.push_back(a);
  return out;
}

struct Agent {
  PreferenceOrder order;
  ProjectSet awareness;
};

} // namespace pbe
