/**
 * @file allocation.hpp
 * @brief Second-stage rules: greedy-approval and approval-maximising.
 */
#pragma once

#include <algorithm>
#include <concepts>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "pbe/core.hpp"

namespace pbe {

/// One approval ballot A_i per agent, each a subset of the shortlist.
using ApprovalProfile = std::vector<ProjectSet>;

/// n_p for every position of the instance (zero outside the shortlist).
using ApprovalScores = std::vector<std::int64_t>;

inline ApprovalScores approval_scores(const Instance &inst, ProjectSet shortlist,
                                      const ApprovalProfile &profile) {
  ApprovalScores scores(inst.size(), 0);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (!profile[i].subset_of(shortlist))
      throw InvalidInput("ballot of agent " + std::to_string(i + 1) +
                         " approves a project outside the shortlist");
    profile[i].for_each([&](std::size_t pos) { ++scores[pos]; });
  }
  return scores;
}

/// GREED over the shortlist ordered by T(>=_app).
inline ProjectSet greedy_approval(const Instance &inst, ProjectSet shortlist,
                                  const ApprovalProfile &profile) {
  const auto scores = approval_scores(inst, shortlist, profile);
  auto order = shortlist.positions();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  return greedy_positions(inst, order, inst.budget());
}

enum class AllocationStatus { infeasible, feasible_not_exhaustive, exhaustive };

inline std::string_view to_string(AllocationStatus s) noexcept {
  switch (s) {
  case AllocationStatus::infeasible:
    return "infeasible";
  case AllocationStatus::feasible_not_exhaustive:
    return "feasible-not-exhaustive";
  case AllocationStatus::exhaustive:
    return "exhaustive";
  }
  return "?";
}

inline AllocationStatus classify_allocation(const Instance &inst, ProjectSet shortlist,
                                            ProjectSet allocation) {
  const auto spent = inst.cost(allocation);
  if (spent > inst.budget())
    return AllocationStatus::infeasible;
  bool room = false;
  (shortlist - allocation).for_each([&](std::size_t pos) {
    if (spent + inst.cost(pos) <= inst.budget())
      room = true;
  });
  return room ? AllocationStatus::feasible_not_exhaustive : AllocationStatus::exhaustive;
}

namespace detail {

// Maximum total score of a subset of `items` within `budget`, via a
// minimum-cost-per-score table. Zero-score items never change the value.
inline std::int64_t best_value(const Instance &inst, const ApprovalScores &scores,
                               std::span<const std::size_t> items, Cost budget) {
  if (budget < 0)
    return std::numeric_limits<std::int64_t>::min();
  std::int64_t total = 0;
  for (auto p : items)
    total += scores[p];
  constexpr Cost unreachable = std::numeric_limits<Cost>::max();
  std::vector<Cost> cheapest(static_cast<std::size_t>(total) + 1, unreachable);
  cheapest[0] = 0;
  std::int64_t reach = 0;
  for (auto p : items) {
    const auto s = scores[p];
    if (s == 0)
      continue;
    reach += s;
    for (auto v = reach; v >= s; --v) {
      const auto prev = cheapest[static_cast<std::size_t>(v - s)];
      if (prev != unreachable)
        cheapest[static_cast<std::size_t>(v)] =
            std::min(cheapest[static_cast<std::size_t>(v)], prev + inst.cost(p));
    }
  }
  for (auto v = total; v > 0; --v)
    if (cheapest[static_cast<std::size_t>(v)] <= budget)
      return v;
  return 0;
}

} // namespace detail

/// Explicit priority over budget allocations. Listed sets come first in list
/// order; anything unlisted ranks after them by canonical T. An empty list is
/// canonical T.
struct TieBreakPolicy {
  std::vector<ProjectSet> priority;

  static TieBreakPolicy canonical() { return {}; }
  bool is_canonical() const noexcept { return priority.empty(); }

  void validate() const {
    for (std::size_t i = 0; i < priority.size(); ++i)
      for (std::size_t j = i + 1; j < priority.size(); ++j)
        if (priority[i] == priority[j])
          throw InvalidInput("tie-break priority list contains a duplicate set");
  }
};

/// Total approval of an allocation.
inline std::int64_t approval_total(const ApprovalScores &scores, ProjectSet a) {
  std::int64_t v = 0;
  a.for_each([&](std::size_t pos) { v += scores[pos]; });
  return v;
}

/// A feasible allocation maximising total approval. Under canonical T the
/// maximiser is found by deciding projects in ascending index order, keeping
/// each one whenever an optimal completion still exists; that yields the
/// lexicographically greatest optimum, which is exactly T's choice.
inline ProjectSet approval_maximising(const Instance &inst, ProjectSet shortlist,
                                      const ApprovalProfile &profile,
                                      const TieBreakPolicy &policy = {}) {
  const auto scores = approval_scores(inst, shortlist, profile);
  const auto items = shortlist.positions();
  const std::span<const std::size_t> all(items);
  const auto optimum = detail::best_value(inst, scores, all, inst.budget());

  if (!policy.is_canonical()) {
    policy.validate();
    for (auto candidate : policy.priority)
      if (candidate.subset_of(shortlist) && inst.cost(candidate) <= inst.budget() &&
          approval_total(scores, candidate) == optimum)
        return candidate;
  }

  ProjectSet chosen;
  Cost spent = 0;
  std::int64_t value = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto pos = items[i];
    const auto c = inst.cost(pos);
    if (spent + c > inst.budget())
      continue;
    const auto rest = detail::best_value(inst, scores, all.subspan(i + 1),
                                         inst.budget() - spent - c);
    if (value + scores[pos] + rest == optimum) {
      chosen.insert(pos);
      spent += c;
      value += scores[pos];
    }
  }
  return chosen;
}

// ---------------------------------------------------------------------------
// Rule objects

struct GreedyApprovalRule {
  std::string name() const { return "greedy-approval"; }
  ProjectSet operator()(const Instance &inst, ProjectSet shortlist,
                        const ApprovalProfile &profile) const {
    return greedy_approval(inst, shortlist, profile);
  }
};

struct ApprovalMaximisingRule {
  TieBreakPolicy policy;
  std::string name() const {
    return policy.is_canonical() ? "approval-maximising" : "approval-maximising[explicit]";
  }
  ProjectSet operator()(const Instance &inst, ProjectSet shortlist,
                        const ApprovalProfile &profile) const {
    return approval_maximising(inst, shortlist, profile, policy);
  }
};

template <class F>
concept AllocationRule = requires(const F &f, const Instance &inst, ProjectSet shortlist,
                                  const ApprovalProfile &profile) {
  { f(inst, shortlist, profile) } -> std::convertible_to<ProjectSet>;
};

} // namespace pbe
