/**
 * @file strategy.hpp
 * @brief First-stage manipulation: best responses, the F* overlay, successful
 * pessimistic / optimistic / anticipative manipulation and FSSP checking.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "pbe/allocation.hpp"
#include "pbe/core.hpp"
#include "pbe/preferences.hpp"
#include "pbe/shortlisting.hpp"
#include "pbe/verification.hpp"

namespace pbe {

/// Rules whose outcome depends only on the multiset of ballots. Lets the
/// F* enumeration visit multisets instead of ordered profiles.
template <class F> inline constexpr bool anonymous_rule = false;
template <> inline constexpr bool anonymous_rule<GreedyApprovalRule> = true;
template <> inline constexpr bool anonymous_rule<ApprovalMaximisingRule> = true;

inline constexpr std::size_t default_best_response_cap = 12;

struct BestResponse {
  ProjectSet ballot;
  ProjectSet outcome;
};

/// A_i*: the T-preferred best outcome agent i can reach by changing only
/// her own ballot, and the T-preferred ballot that reaches it.
template <AllocationRule F>
BestResponse best_response(const F &rule, const Instance &inst, ProjectSet shortlist,
                           ApprovalProfile profile, std::size_t agent, ProjectSet ideal,
                           PreferenceModel model,
                           std::size_t cap = default_best_response_cap) {
  if (shortlist.size() > cap)
    throw ResourceLimit("best-response-shortlist", cap, shortlist.size());
  if (agent >= profile.size())
    throw InvalidInput("agent " + std::to_string(agent + 1) + " does not exist");
  std::optional<BestResponse> best;
  Cost best_score = 0;
  for_each_subset(shortlist, [&](ProjectSet ballot) {
    profile[agent] = ballot;
    const auto out = rule(inst, shortlist, profile);
    const auto score = preference_score(model, inst, ideal, out);
    if (!best || score > best_score ||
        (score == best_score && (canonical_prefers(out, best->outcome) ||
                                 (out == best->outcome && canonical_prefers(ballot, best->ballot))))) {
      best = BestResponse{ballot, out};
      best_score = score;
    }
  });
  return *best;
}

/// F*(I, A): F after agent i swaps in her best response.
template <AllocationRule F>
ProjectSet f_star(const F &rule, const Instance &inst, ProjectSet shortlist,
                  const ApprovalProfile &profile, std::size_t agent, ProjectSet ideal,
                  PreferenceModel model, std::size_t cap = default_best_response_cap) {
  return best_response(rule, inst, shortlist, profile, agent, ideal, model, cap).outcome;
}

// ---------------------------------------------------------------------------
// Games and verdicts

template <ShortlistingRule R, AllocationRule F> struct StageGame {
  R shortlisting;
  F allocation;
  Instance instance;
  std::vector<Agent> agents;
  /// Proposals used for the non-manipulating agents; top_j(C_j) when unset.
  std::optional<ShortlistingProfile> proposals;
  PreferenceModel model = PreferenceModel::overlap;

  std::size_t size() const noexcept { return agents.size(); }

  ShortlistingProfile base_profile() const {
    ShortlistingProfile p;
    if (proposals) {
      if (proposals->size() != agents.size())
        throw InvalidInput("shortlisting profile and agent list differ in size");
      for (std::size_t j = 0; j < agents.size(); ++j)
        if (!(*proposals)[j].subset_of(agents[j].awareness))
          throw InvalidInput("proposal of agent " + std::to_string(j + 1) +
                             " leaves its awareness set");
      return *proposals;
    }
    for (const auto &a : agents)
      p.push_back(ideal_set(instance, a.order, a.awareness));
    return p;
  }

  /// Ballots top_j(shortlist) for every agent.
  ApprovalProfile truthful_ballots(ProjectSet shortlist) const {
    ApprovalProfile out;
    for (const auto &a : agents)
      out.push_back(ideal_set(instance, a.order, shortlist));
    return out;
  }
};

enum class ManipulationMode { pessimistic, optimistic, anticipative };
enum class FsspVariant { restricted, unrestricted };

inline std::string_view to_string(ManipulationMode m) noexcept {
  switch (m) {
  case ManipulationMode::pessimistic:
    return "pessimistic";
  case ManipulationMode::optimistic:
    return "optimistic";
  case ManipulationMode::anticipative:
    return "anticipative";
  }
  return "?";
}

inline std::string_view to_string(FsspVariant v) noexcept {
  return v == FsspVariant::restricted ? "restricted" : "unrestricted";
}

inline ManipulationMode parse_mode(std::string_view s) {
  if (s == "pessimistic")
    return ManipulationMode::pessimistic;
  if (s == "optimistic")
    return ManipulationMode::optimistic;
  if (s == "anticipative")
    return ManipulationMode::anticipative;
  throw InvalidInput("unknown manipulation mode '" + std::string(s) + "'");
}

inline FsspVariant parse_variant(std::string_view s) {
  if (s == "restricted")
    return FsspVariant::restricted;
  if (s == "unrestricted")
    return FsspVariant::unrestricted;
  throw InvalidInput("unknown FSSP variant '" + std::string(s) + "'");
}

enum class ManipulationStatus { successful, unsuccessful, unknown };

inline std::string_view to_string(ManipulationStatus s) noexcept {
  switch (s) {
  case ManipulationStatus::successful:
    return "successful";
  case ManipulationStatus::unsuccessful:
    return "unsuccessful";
  case ManipulationStatus::unknown:
    return "unknown";
  }
  return "?";
}

struct ManipulationWitness {
  std::size_t agent = 0;
  ManipulationMode mode = ManipulationMode::pessimistic;
  ProjectSet truthful;
  ProjectSet deviation;
  ProjectSet shortlist;
  ProjectSet deviated_shortlist;
  ProjectSet comparison_ideal;
  /// The compared pair, best responses already substituted.
  std::optional<ApprovalProfile> profile;
  std::optional<ApprovalProfile> deviated_profile;
  std::optional<ProjectSet> outcome;
  std::optional<ProjectSet> deviated_outcome;
};

struct ManipulationVerdict {
  ManipulationStatus status = ManipulationStatus::unsuccessful;
  bool exact = true;
  ManipulationWitness witness;
};

struct StrategyOptions {
  /// Exact enumeration per shortlist while (2^|shortlist|)^n stays within this.
  std::uint64_t profile_cap = default_profile_cap;
  std::size_t best_response_cap = default_best_response_cap;
  bool sampling = false;
  std::size_t samples = 256;
  std::uint64_t seed = 1;
};

// ---------------------------------------------------------------------------
// F* outcome sets

struct FStarOutcome {
  ProjectSet outcome;
  ApprovalProfile profile; ///< a profile producing it, best response included
};

struct FStarOutcomes {
  std::vector<FStarOutcome> outcomes; ///< distinct, first-found order
  bool exact = true;
};

/// Memoises F* outcome sets for one (rule, instance) pair. The caller keeps
/// one cache per pair; keys cover everything else the set depends on.
class FStarCache {
public:
  using Key = std::tuple<ProjectSet::Bits, ProjectSet::Bits, std::size_t, std::size_t, int>;

  const FStarOutcomes *find(const Key &k) const {
    auto it = map_.find(k);
    return it == map_.end() ? nullptr : &it->second;
  }
  const FStarOutcomes &insert(const Key &k, FStarOutcomes v) {
    return map_.insert_or_assign(k, std::move(v)).first->second;
  }
  std::size_t size() const noexcept { return map_.size(); }
  void clear() { map_.clear(); }

private:
  std::map<Key, FStarOutcomes> map_;
};

namespace detail {

/// Multisets of size `slots` over `choices`, as nondecreasing index vectors.
template <class Fn>
void for_each_multiset(std::size_t choices, std::size_t slots, Fn &&fn) {
  std::vector<std::size_t> idx(slots, 0);
  for (;;) {
    fn(idx);
    std::size_t j = slots;
    while (j > 0 && idx[j - 1] + 1 == choices)
      --j;
    if (j == 0)
      return;
    const auto v = idx[j - 1] + 1;
    for (std::size_t t = j - 1; t < slots; ++t)
      idx[t] = v;
  }
}

} // namespace detail

/// Every F*(I, A) over all ballots of the other n-1 agents on `shortlist`.
/// `ideal` is top_i(shortlist), which drives the best response.
template <AllocationRule F>
FStarOutcomes f_star_outcomes(const F &rule, const Instance &inst, ProjectSet shortlist,
                              std::size_t agent, std::size_t n, ProjectSet ideal,
                              PreferenceModel model, const StrategyOptions &options = {},
                              FStarCache *cache = nullptr) {
  const FStarCache::Key key{shortlist.bits(), ideal.bits(), agent, n, static_cast<int>(model)};
  if (cache)
    if (auto hit = cache->find(key))
      return *hit;

  FStarOutcomes result;
  const auto ballots = detail::all_subsets(shortlist);
  ApprovalProfile profile(n);
  auto visit = [&](ApprovalProfile &p) {
    const auto br =
        best_response(rule, inst, shortlist, p, agent, ideal, model, options.best_response_cap);
    if (std::none_of(result.outcomes.begin(), result.outcomes.end(),
                     [&](const FStarOutcome &o) { return o.outcome == br.outcome; })) {
      auto full = p;
      full[agent] = br.ballot;
      result.outcomes.push_back({br.outcome, std::move(full)});
    }
  };

  if (!detail::profiles_within(shortlist.size(), n, options.profile_cap)) {
    if (!options.sampling)
      throw ResourceLimit("fstar-profiles", options.profile_cap,
                          subset_count(std::min<std::size_t>(63, shortlist.size() * n)));
    result.exact = false;
    std::mt19937_64 rng(options.seed ^ shortlist.bits());
    std::uniform_int_distribution<std::size_t> pick(0, ballots.size() - 1);
    for (std::size_t s = 0; s < options.samples; ++s) {
      for (std::size_t j = 0; j < n; ++j)
        if (j != agent)
          profile[j] = ballots[pick(rng)];
      visit(profile);
    }
  } else if constexpr (anonymous_rule<F>) {
    detail::for_each_multiset(ballots.size(), n - 1, [&](const std::vector<std::size_t> &idx) {
      for (std::size_t j = 0, t = 0; j < n; ++j)
        if (j != agent)
          profile[j] = ballots[idx[t++]];
      visit(profile);
    });
  } else {
    detail::for_each_others(profile, agent, ballots, visit);
  }
  if (cache)
    return cache->insert(key, std::move(result));
  return result;
}

// ---------------------------------------------------------------------------
// Manipulation

/// Projects agent i may propose under the variant.
template <ShortlistingRule R, AllocationRule F>
ProjectSet admissible_proposals(const StageGame<R, F> &game, const ShortlistingProfile &profile,
                                std::size_t agent, FsspVariant variant) {
  auto out = game.agents[agent].awareness;
  if (variant == FsspVariant::unrestricted)
    for (std::size_t j = 0; j < profile.size(); ++j)
      if (j != agent)
        out |= profile[j];
  return out;
}

/// The proposal agent i is expected to submit: top_i(C_i), or
/// top_i(C_i ∪ ⋃P_{-i}) when she sees everyone else's proposals first.
template <ShortlistingRule R, AllocationRule F>
ProjectSet truthful_proposal(const StageGame<R, F> &game, const ShortlistingProfile &profile,
                             std::size_t agent, FsspVariant variant) {
  const auto &a = game.agents[agent];
  return ideal_set(game.instance, a.order, admissible_proposals(game, profile, agent, variant));
}

template <ShortlistingRule R, AllocationRule F>
ManipulationVerdict check_manipulation(const StageGame<R, F> &game, std::size_t agent,
                                       ProjectSet deviation, ManipulationMode mode,
                                       FsspVariant variant = FsspVariant::restricted,
                                       const StrategyOptions &options = {},
                                       FStarCache *cache = nullptr) {
  const auto n = game.size();
  if (agent >= n)
    throw InvalidInput("agent " + std::to_string(agent + 1) + " does not exist");
  auto profile = game.base_profile();
  const auto &inst = game.instance;
  const auto &order = game.agents[agent].order;

  ManipulationVerdict v;
  auto &w = v.witness;
  w.agent = agent;
  w.mode = mode;
  w.truthful = truthful_proposal(game, profile, agent, variant);
  w.deviation = deviation;
  profile[agent] = w.truthful;
  w.shortlist = game.shortlisting(inst, profile);
  profile[agent] = deviation;
  w.deviated_shortlist = game.shortlisting(inst, profile);
  w.comparison_ideal = ideal_set(inst, order, w.shortlist | w.deviated_shortlist);
  auto score = [&](ProjectSet a) {
    return preference_score(game.model, inst, w.comparison_ideal, a);
  };
  const auto ideal = ideal_set(inst, order, w.shortlist);
  const auto deviated_ideal = ideal_set(inst, order, w.deviated_shortlist);

  auto record = [&](const FStarOutcome &a, const FStarOutcome &b) {
    w.profile = a.profile;
    w.outcome = a.outcome;
    w.deviated_profile = b.profile;
    w.deviated_outcome = b.outcome;
  };

  if (mode == ManipulationMode::anticipative) {
    auto fill = [&](ProjectSet shortlist, ProjectSet own_ideal) {
      auto ballots = game.truthful_ballots(shortlist);
      const auto br = best_response(game.allocation, inst, shortlist, ballots, agent, own_ideal,
                                    game.model, options.best_response_cap);
      ballots[agent] = br.ballot;
      return FStarOutcome{br.outcome, std::move(ballots)};
    };
    const auto a = fill(w.shortlist, ideal);
    const auto b = fill(w.deviated_shortlist, deviated_ideal);
    record(a, b);
    v.status = score(b.outcome) > score(a.outcome) ? ManipulationStatus::successful
                                                   : ManipulationStatus::unsuccessful;
    return v;
  }

  const auto truthful_side = f_star_outcomes(game.allocation, inst, w.shortlist, agent, n, ideal,
                                             game.model, options, cache);
  const auto deviated_side = f_star_outcomes(game.allocation, inst, w.deviated_shortlist, agent,
                                             n, deviated_ideal, game.model, options, cache);
  v.exact = truthful_side.exact && deviated_side.exact;

  auto extreme = [&](const FStarOutcomes &side, bool want_max) -> const FStarOutcome & {
    const FStarOutcome *best = &side.outcomes.front();
    for (const auto &o : side.outcomes) {
      const auto s = score(o.outcome), b = score(best->outcome);
      if (want_max ? s > b : s < b)
        best = &o;
    }
    return *best;
  };
  const auto &lo = extreme(truthful_side, false);
  const auto &hi = extreme(truthful_side, true);
  const auto &dlo = extreme(deviated_side, false);
  const auto &dhi = extreme(deviated_side, true);
  // A strict pair exists iff the best deviated outcome beats the worst truthful
  // one; every pair is weakly better iff the worst deviated outcome matches
  // the best truthful one.
  const bool strict_pair = score(dhi.outcome) > score(lo.outcome);
  const bool all_weak = score(dlo.outcome) >= score(hi.outcome);

  if (mode == ManipulationMode::optimistic) {
    if (strict_pair) {
      record(lo, dhi);
      v.status = ManipulationStatus::successful;
      v.exact = true;
    } else {
      record(lo, dhi);
      v.status = v.exact ? ManipulationStatus::unsuccessful : ManipulationStatus::unknown;
    }
    return v;
  }

  if (!all_weak) {
    // A refuting pair is a certificate even when found by sampling.
    record(hi, dlo);
    v.status = ManipulationStatus::unsuccessful;
    v.exact = true;
  } else if (strict_pair) {
    record(lo, dhi);
    v.status = v.exact ? ManipulationStatus::successful : ManipulationStatus::unknown;
  } else {
    record(lo, dhi);
    v.status = v.exact ? ManipulationStatus::unsuccessful : ManipulationStatus::unknown;
  }
  return v;
}

/// Deviation candidates: every subset of the admissible projects except the
/// truthful proposal, by increasing size and then T order.
inline std::vector<ProjectSet> deviation_space(ProjectSet admissible, ProjectSet truthful) {
  auto all = detail::all_subsets(admissible);
  std::erase(all, truthful);
  std::stable_sort(all.begin(), all.end(), [](ProjectSet a, ProjectSet b) {
    return a.size() != b.size() ? a.size() < b.size() : canonical_prefers(a, b);
  });
  return all;
}

struct FsspOptions {
  StrategyOptions strategy;
  /// Agents to test (0-based); all when empty.
  std::vector<std::size_t> agents;
  std::size_t deviation_cap = 16; ///< admissible projects per agent
};

template <ShortlistingRule R, AllocationRule F>
PropertyVerdict<ManipulationWitness> check_fssp(const StageGame<R, F> &game, FsspVariant variant,
                                                ManipulationMode mode,
                                                const FsspOptions &options = {},
                                                FStarCache *cache = nullptr) {
  PropertyVerdict<ManipulationWitness> v;
  v.search = std::string(to_string(variant)) + ", " + std::string(to_string(mode)) + ", " +
             std::string(to_string(game.model)) + " model";
  FStarCache local;
  if (!cache)
    cache = &local;
  const auto profile = game.base_profile();
  std::vector<std::size_t> agents = options.agents;
  if (agents.empty())
    for (std::size_t i = 0; i < game.size(); ++i)
      agents.push_back(i);
  for (auto i : agents) {
    if (i >= game.size())
      throw InvalidInput("agent " + std::to_string(i + 1) + " does not exist");
    const auto admissible = admissible_proposals(game, profile, i, variant);
    if (admissible.size() > options.deviation_cap)
      throw ResourceLimit("deviation-projects", options.deviation_cap, admissible.size());
    const auto truthful = truthful_proposal(game, profile, i, variant);
    for (auto d : deviation_space(admissible, truthful)) {
      ++v.cases;
      auto m = check_manipulation(game, i, d, mode, variant, options.strategy, cache);
      if (m.status == ManipulationStatus::successful) {
        v.fail(std::move(m.witness));
        return v;
      }
      if (m.status == ManipulationStatus::unknown)
        v.exact = false;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Implication lattice between FSSP cells

/// Per-fixture FSSP outcomes: true = holds, false = witness found, unset =
/// unknown. Indexed by ManipulationMode.
struct FsspCells {
  std::string name;
  std::array<std::optional<bool>, 3> restricted;
  std::array<std::optional<bool>, 3> unrestricted;
  /// Restricted verdicts after widening each awareness set by the other
  /// agents' proposals. The restricted class contains this fixture, so a
  /// restricted verdict that holds there must hold under U here.
  std::array<std::optional<bool>, 3> restricted_widened;
};

struct ImplicationReport {
  std::vector<std::string> violations;
  bool consistent() const noexcept { return violations.empty(); }
};

inline ImplicationReport verify_fssp_implications(std::span<const FsspCells> fixtures) {
  ImplicationReport report;
  constexpr auto P = static_cast<std::size_t>(ManipulationMode::pessimistic);
  constexpr auto O = static_cast<std::size_t>(ManipulationMode::optimistic);
  constexpr auto A = static_cast<std::size_t>(ManipulationMode::anticipative);
  auto implies = [&](const std::string &where, const std::optional<bool> &from,
                     const std::optional<bool> &to, std::string_view what) {
    if (from == true && to == false)
      report.violations.push_back(where + ": " + std::string(what));
  };
  for (const auto &f : fixtures) {
    for (int scope = 0; scope < 2; ++scope) {
      const auto &c = scope == 0 ? f.restricted : f.unrestricted;
      const std::string tag = scope == 0 ? "R" : "U";
      implies(f.name, c[O], c[A], tag + "-FSSP-O holds but " + tag + "-FSSP-A fails");
      implies(f.name, c[O], c[P], tag + "-FSSP-O holds but " + tag + "-FSSP-P fails");
    }
    for (auto m : {P, O, A}) {
      const auto mode = std::string(to_string(static_cast<ManipulationMode>(m)));
      implies(f.name, f.restricted_widened[m], f.unrestricted[m],
              "widened R-FSSP holds but U-FSSP fails (" + mode + ")");
      implies(f.name, f.unrestricted[m], f.restricted_widened[m],
              "U-FSSP holds but widened R-FSSP fails (" + mode + ")");
    }
  }
  return report;
}

/// The same game with every awareness set widened by the other agents'
/// proposals.
template <ShortlistingRule R, AllocationRule F>
StageGame<R, F> widen_awareness(const StageGame<R, F> &game) {
  auto out = game;
  const auto profile = game.base_profile();
  out.proposals = profile;
  for (std::size_t i = 0; i < game.size(); ++i)
    out.agents[i].awareness = admissible_proposals(game, profile, i, FsspVariant::unrestricted);
  return out;
}

template <ShortlistingRule R, AllocationRule F>
FsspCells fssp_cells(const StageGame<R, F> &game, std::string name,
                     const FsspOptions &options = {}) {
  FsspCells cells;
  cells.name = std::move(name);
  const auto widened = widen_awareness(game);
  FStarCache cache;
  for (auto m : {ManipulationMode::pessimistic, ManipulationMode::optimistic,
                 ManipulationMode::anticipative}) {
    auto cell = [&](const StageGame<R, F> &g, FsspVariant var) -> std::optional<bool> {
      const auto v = check_fssp(g, var, m, options, &cache);
      if (!v.holds())
        return false;
      if (!v.exact)
        return std::nullopt;
      return true;
    };
    const auto k = static_cast<std::size_t>(m);
    cells.restricted[k] = cell(game, FsspVariant::restricted);
    cells.unrestricted[k] = cell(game, FsspVariant::unrestricted);
    cells.restricted_widened[k] = cell(widened, FsspVariant::restricted);
  }
  return cells;
}

} // namespace pbe
