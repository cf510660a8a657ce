/**
 * @file verification.hpp
 * @brief Axiom checkers for shortlisting and allocation rules, second-stage
 * strategyproofness search, and the unit-cost split.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pbe/allocation.hpp"
#include "pbe/core.hpp"
#include "pbe/preferences.hpp"
#include "pbe/shortlisting.hpp"

namespace pbe {

enum class VerdictStatus { holds_on_suite, counterexample_found };

inline std::string_view to_string(VerdictStatus s) noexcept {
  return s == VerdictStatus::holds_on_suite ? "holds-on-suite" : "counterexample-found";
}

template <class Witness> struct PropertyVerdict {
  VerdictStatus status = VerdictStatus::holds_on_suite;
  /// False when part of the search was sampled; a sampled "holds" is evidence
  /// only.
  bool exact = true;
  std::string search;
  std::size_t cases = 0;
  std::optional<Witness> witness;

  bool holds() const noexcept { return status == VerdictStatus::holds_on_suite; }

  void fail(Witness w) {
    status = VerdictStatus::counterexample_found;
    witness = std::move(w);
  }
};

// ---------------------------------------------------------------------------
// Shortlisting axioms

struct ShortlistWitness {
  ProjectSet shortlist;
  ProjectSet proposed;
  std::optional<ProjectSet> dominating;
};

/// Either c(R(I, P)) >= B or R(I, P) is everything proposed.
template <ShortlistingRule R>
PropertyVerdict<ShortlistWitness> check_non_wasteful(const R &rule, const Instance &inst,
                                                     const ShortlistingProfile &profile) {
  PropertyVerdict<ShortlistWitness> v;
  v.search = "single instance";
  v.cases = 1;
  const auto shortlist = rule(inst, profile);
  const auto proposed = union_of(profile);
  if (inst.cost(shortlist) < inst.budget() && shortlist != proposed)
    v.fail({shortlist, proposed, std::nullopt});
  return v;
}

inline constexpr std::size_t default_domination_cap = 15;

/// A set of no greater cost that weakly increases every agent's count of
/// shortlisted proposals and strictly increases one. Only subsets of the
/// proposed projects are searched: every project costs at least 1 and an
/// unproposed project counts for nobody, so dropping it keeps a dominating set
/// dominating.
inline std::optional<ProjectSet>
find_representative_domination(const Instance &inst, const ShortlistingProfile &profile,
                               ProjectSet shortlist,
                               std::size_t cap = default_domination_cap) {
  const auto proposed = union_of(profile);
  if (proposed.size() > cap)
    throw ResourceLimit("domination-projects", cap, proposed.size());
  const auto budget = inst.cost(shortlist);
  std::vector<std::size_t> current;
  for (auto p : profile)
    current.push_back((p & shortlist).size());
  std::optional<ProjectSet> found;
  for_each_subset(proposed, [&](ProjectSet candidate) {
    if (found || inst.cost(candidate) > budget)
      return;
    bool strict = false;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      const auto t = (profile[i] & candidate).size();
      if (t < current[i])
        return;
      strict = strict || t > current[i];
    }
    if (strict)
      found = candidate;
  });
  return found;
}

template <ShortlistingRule R>
PropertyVerdict<ShortlistWitness>
check_representation_efficient(const R &rule, const Instance &inst,
                               const ShortlistingProfile &profile,
                               std::size_t cap = default_domination_cap) {
  PropertyVerdict<ShortlistWitness> v;
  v.search = "single instance";
  v.cases = 1;
  const auto shortlist = rule(inst, profile);
  if (auto d = find_representative_domination(inst, profile, shortlist, cap))
    v.fail({shortlist, union_of(profile), d});
  return v;
}

// ---------------------------------------------------------------------------
// Allocation axioms

struct AllocationCase {
  Instance instance;
  ProjectSet shortlist;
  ApprovalProfile profile;
};

enum class AllocationAxiom { exhaustive, unanimous, strongly_unanimous };

inline std::string_view to_string(AllocationAxiom a) noexcept {
  switch (a) {
  case AllocationAxiom::exhaustive:
    return "exhaustive";
  case AllocationAxiom::unanimous:
    return "unanimous";
  case AllocationAxiom::strongly_unanimous:
    return "strongly-unanimous";
  }
  return "?";
}

struct AxiomWitness {
  std::size_t case_index = 0;
  ApprovalProfile profile;
  ProjectSet outcome;
  std::optional<ProjectSet> required; ///< the set the outcome must contain
};

inline constexpr std::size_t default_axiom_shortlist_cap = 12;

/// Unanimity profiles are (A, ..., A) for every feasible A with the case's
/// agent count. Strong unanimity uses max(3, n) agents and lets one agent
/// submit any ballot while the rest submit A.
template <AllocationRule F>
PropertyVerdict<AxiomWitness> check_allocation_axiom(const F &rule, AllocationAxiom axiom,
                                                     std::span<const AllocationCase> suite,
                                                     std::size_t cap = default_axiom_shortlist_cap) {
  PropertyVerdict<AxiomWitness> v;
  v.search = std::string(to_string(axiom)) + " over " + std::to_string(suite.size()) + " cases";
  for (std::size_t ci = 0; ci < suite.size() && v.holds(); ++ci) {
    const auto &c = suite[ci];
    ++v.cases;
    if (axiom == AllocationAxiom::exhaustive) {
      const auto out = rule(c.instance, c.shortlist, c.profile);
      if (classify_allocation(c.instance, c.shortlist, out) != AllocationStatus::exhaustive)
        v.fail({ci, c.profile, out, std::nullopt});
      continue;
    }
    if (c.shortlist.size() > cap)
      throw ResourceLimit("axiom-shortlist", cap, c.shortlist.size());
    const auto n = axiom == AllocationAxiom::unanimous
                       ? std::max<std::size_t>(1, c.profile.size())
                       : std::max<std::size_t>(3, c.profile.size());
    for_each_subset(c.shortlist, [&](ProjectSet a) {
      if (!v.holds() || c.instance.cost(a) > c.instance.budget())
        return;
      ApprovalProfile profile(n, a);
      if (axiom == AllocationAxiom::unanimous) {
        const auto out = rule(c.instance, c.shortlist, profile);
        if (!a.subset_of(out))
          v.fail({ci, profile, out, a});
        return;
      }
      for (std::size_t agent = 0; agent < n && v.holds(); ++agent)
        for_each_subset(c.shortlist, [&](ProjectSet ballot) {
          if (!v.holds())
            return;
          profile[agent] = ballot;
          const auto out = rule(c.instance, c.shortlist, profile);
          if (!a.subset_of(out))
            v.fail({ci, profile, out, a});
          profile[agent] = a;
        });
    });
  }
  return v;
}

// ---------------------------------------------------------------------------
// Second-stage strategyproofness

enum class SpSearch { fixed_others, full, sampled };

inline std::string_view to_string(SpSearch s) noexcept {
  switch (s) {
  case SpSearch::fixed_others:
    return "fixed-others";
  case SpSearch::full:
    return "full";
  case SpSearch::sampled:
    return "sampled";
  }
  return "?";
}

inline constexpr std::uint64_t default_profile_cap = std::uint64_t{1} << 20;

struct SpOptions {
  PreferenceModel model = PreferenceModel::overlap;
  bool approximate = false;
  SpSearch search = SpSearch::fixed_others;
  /// Agents to test (0-based); all when empty.
  std::vector<std::size_t> agents;
  /// Manipulator ballots to try; every subset of the shortlist when unset.
  std::optional<std::vector<ProjectSet>> deviations;
  /// Full enumeration runs only while (2^|shortlist|)^n stays within this.
  std::uint64_t profile_cap = default_profile_cap;
  /// Fall back to sampling instead of failing when the cap is exceeded.
  bool sampling = false;
  std::size_t samples = 4096;
  std::uint64_t seed = 1;
};

struct SpWitness {
  std::size_t agent = 0;
  ProjectSet ideal;
  ApprovalProfile profile; ///< includes the manipulator's deviating ballot
  ProjectSet deviation;
  ProjectSet truthful_outcome;
  ProjectSet manipulated_outcome;
};

/// True when the deviating outcome beats the truthful one (augmented by the
/// best single project in approximate mode).
inline bool sp_violated(PreferenceModel model, const Instance &inst, ProjectSet shortlist,
                        ProjectSet ideal, ProjectSet truthful, ProjectSet manipulated,
                        bool approximate) {
  const auto gained = preference_score(model, inst, ideal, manipulated);
  if (!approximate)
    return gained > preference_score(model, inst, ideal, truthful);
  bool repaired = preference_score(model, inst, ideal, truthful) >= gained;
  shortlist.for_each([&](std::size_t p) {
    repaired = repaired ||
               preference_score(model, inst, ideal, truthful.with(p)) >= gained;
  });
  return !repaired;
}

namespace detail {

inline bool profiles_within(std::size_t shortlist_size, std::size_t agents,
                            std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < agents; ++i) {
    if (shortlist_size >= 63 || total > cap >> shortlist_size)
      return false;
    total <<= shortlist_size;
  }
  return total <= cap;
}

inline std::vector<ProjectSet> all_subsets(ProjectSet of) {
  std::vector<ProjectSet> out;
  out.reserve(static_cast<std::size_t>(subset_count(of.size())));
  for_each_subset(of, [&](ProjectSet s) { out.push_back(s); });
  return out;
}

/// Visits every assignment of ballots from `choices` to the agents other than
/// `skip`, with `skip`'s slot left untouched.
template <class Fn>
void for_each_others(ApprovalProfile &profile, std::size_t skip,
                     const std::vector<ProjectSet> &choices, Fn &&fn) {
  const auto n = profile.size();
  std::vector<std::size_t> digit(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    if (j != skip)
      profile[j] = choices[0];
  for (;;) {
    fn(profile);
    std::size_t j = 0;
    for (; j < n; ++j) {
      if (j == skip)
        continue;
      if (++digit[j] < choices.size()) {
        profile[j] = choices[digit[j]];
        break;
      }
      digit[j] = 0;
      profile[j] = choices[0];
    }
    if (j == n)
      return;
  }
}

} // namespace detail

/// Searches for an agent and profile where reporting something other than the
/// ideal set pays off. `others` supplies the non-manipulating ballots in
/// fixed-others mode; when absent everyone's truthful ideal ballot is used.
template <AllocationRule F>
PropertyVerdict<SpWitness> check_second_stage_sp(const F &rule, const Instance &inst,
                                                 ProjectSet shortlist,
                                                 std::span<const PreferenceOrder> preferences,
                                                 const std::optional<ApprovalProfile> &others,
                                                 SpOptions options = {}) {
  const auto n = preferences.size();
  std::vector<ProjectSet> ideals(n);
  for (std::size_t i = 0; i < n; ++i)
    ideals[i] = ideal_set(inst, preferences[i], shortlist);
  ApprovalProfile base = others.value_or(ideals);
  if (base.size() != n)
    throw InvalidInput("ballot profile and preference profile differ in size");

  auto search = options.search;
  if (search == SpSearch::full &&
      !detail::profiles_within(shortlist.size(), n, options.profile_cap)) {
    if (!options.sampling)
      throw ResourceLimit("sp-profiles", options.profile_cap,
                          subset_count(std::min<std::size_t>(63, shortlist.size() * n)));
    search = SpSearch::sampled;
  }

  PropertyVerdict<SpWitness> v;
  v.exact = search != SpSearch::sampled;
  v.search = std::string(to_string(search)) + (options.approximate ? ", approximate" : "") +
             ", " + std::string(to_string(options.model)) + " model";

  const auto ballots = detail::all_subsets(shortlist);
  const auto &deviations = options.deviations ? *options.deviations : ballots;
  std::vector<std::size_t> agents = options.agents;
  if (agents.empty())
    for (std::size_t i = 0; i < n; ++i)
      agents.push_back(i);

  // For one fixed A_{-i}: try every deviation; the T-preferred violating
  // ballot becomes the witness.
  auto probe = [&](ApprovalProfile &profile, std::size_t i) {
    ++v.cases;
    profile[i] = ideals[i];
    const auto truthful = rule(inst, shortlist, profile);
    std::optional<SpWitness> best;
    for (auto d : deviations) {
      profile[i] = d;
      const auto out = rule(inst, shortlist, profile);
      if (sp_violated(options.model, inst, shortlist, ideals[i], truthful, out,
                      options.approximate) &&
          (!best || canonical_prefers(d, best->deviation)))
        best = SpWitness{i, ideals[i], profile, d, truthful, out};
    }
    profile[i] = ideals[i];
    if (best)
      v.fail(std::move(*best));
  };

  std::mt19937_64 rng(options.seed);
  for (auto i : agents) {
    if (i >= n)
      throw InvalidInput("agent " + std::to_string(i + 1) + " does not exist");
    ApprovalProfile profile = base;
    switch (search) {
    case SpSearch::fixed_others:
      probe(profile, i);
      break;
    case SpSearch::full:
      detail::for_each_others(profile, i, ballots, [&](ApprovalProfile &p) {
        if (v.holds())
          probe(p, i);
      });
      break;
    case SpSearch::sampled:
      for (std::size_t s = 0; s < options.samples && v.holds(); ++s) {
        for (std::size_t j = 0; j < n; ++j)
          if (j != i)
            profile[j] = ballots[std::uniform_int_distribution<std::size_t>(
                0, ballots.size() - 1)(rng)];
        probe(profile, i);
      }
      break;
    }
    if (!v.holds())
      break;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Unit-cost split

/// Maps every project onto c(p) unit-cost subprojects. Subprojects are
/// numbered in (parent index, ordinal) order so canonical tie-breaking on the
/// split instance extends the original one.
struct UnitSplitMap {
  std::vector<std::vector<std::size_t>> forward; ///< parent position -> sub positions
  std::vector<std::size_t> backward;             ///< sub position -> parent position

  ProjectSet split(ProjectSet parents) const {
    ProjectSet s;
    parents.for_each([&](std::size_t p) {
      for (auto sub : forward[p])
        s.insert(sub);
    });
    return s;
  }

  /// Parents with every subproject present.
  ProjectSet merge_full(ProjectSet subs) const {
    ProjectSet s;
    for (std::size_t p = 0; p < forward.size(); ++p)
      if (std::all_of(forward[p].begin(), forward[p].end(),
                      [&](std::size_t q) { return subs.contains(q); }))
        s.insert(p);
    return s;
  }

  /// Parents with at least one subproject present.
  ProjectSet merge_any(ProjectSet subs) const {
    ProjectSet s;
    subs.for_each([&](std::size_t q) { s.insert(backward[q]); });
    return s;
  }

  /// Parents with some but not all subprojects present.
  ProjectSet partially_covered(ProjectSet subs) const {
    return merge_any(subs) - merge_full(subs);
  }
};

struct UnitSplit {
  Instance instance;
  ProjectSet shortlist;
  ApprovalProfile profile;
  UnitSplitMap map;
};

inline UnitSplit unit_split(const Instance &inst, ProjectSet shortlist,
                            const ApprovalProfile &profile) {
  Cost total = 0;
  for (const auto &p : inst.projects())
    total += p.cost;
  if (total > static_cast<Cost>(ProjectSet::capacity))
    throw InvalidInput("unit split needs " + std::to_string(total) +
                       " subprojects; at most " + std::to_string(ProjectSet::capacity) +
                       " are supported");
  UnitSplit out;
  std::vector<Project> subs;
  out.map.forward.resize(inst.size());
  for (std::size_t p = 0; p < inst.size(); ++p)
    for (Cost k = 0; k < inst.cost(p); ++k) {
      out.map.forward[p].push_back(subs.size());
      out.map.backward.push_back(p);
      subs.push_back({ProjectId{static_cast<std::int32_t>(subs.size() + 1)}, 1, std::nullopt});
    }
  out.instance = Instance(std::move(subs), inst.budget());
  out.shortlist = out.map.split(shortlist);
  for (auto b : profile)
    out.profile.push_back(out.map.split(b));
  return out;
}

} // namespace pbe
