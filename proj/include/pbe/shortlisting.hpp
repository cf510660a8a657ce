/**
 * @file shortlisting.hpp
 * @brief First-stage rules: nomination, k-equal-representation and k-median.
 *
 * All three are computed exactly. The searches refuse to run past their caps
 * instead of falling back to an approximation.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pbe/core.hpp"

namespace pbe {

/// One proposal set P_i per agent.
using ShortlistingProfile = std::vector<ProjectSet>;

inline ProjectSet union_of(std::span<const ProjectSet> sets) noexcept {
  ProjectSet u;
  for (auto s : sets)
    u |= s;
  return u;
}

inline ProjectSet nomination(const Instance &, const ShortlistingProfile &profile) {
  return union_of(profile);
}

// ---------------------------------------------------------------------------
// k-equal-representation

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct RepresentationScore {
  Rational value;
  friend auto operator<=>(const RepresentationScore &a,
                          const RepresentationScore &b) {
    return a.value < b.value   ? std::strong_ordering::less
           : a.value > b.value ? std::strong_ordering::greater
                               : std::strong_ordering::equal;
  }
  friend bool operator==(const RepresentationScore &, const RepresentationScore &) = default;
};

/// Sum over agents of sum_{l=0}^{|P_i ∩ P|} n^{-l}, evaluated exactly.
inline RepresentationScore representation_score(ProjectSet shortlist,
                                                const ShortlistingProfile &profile,
                                                std::size_t agents) {
  if (agents == 0)
    return {Rational(0)};
  Rational total = 0;
  const Rational step(1, static_cast<long long>(agents));
  for (auto p : profile) {
    Rational term = 1;
    const auto t = (p & shortlist).size();
    for (std::size_t l = 0; l <= t; ++l) {
      total += term;
      term *= step;
    }
  }
  return {total};
}

inline RepresentationScore representation_score(ProjectSet shortlist,
                                                const ShortlistingProfile &profile) {
  return representation_score(shortlist, profile, profile.size());
}

namespace detail {

// Depth-first branch and bound. Projects are decided in ascending index
// order, inclusion first, so leaves are reached in decreasing canonical order
// and the first leaf attaining the maximum is the T-preferred maximiser. A
// subtree is pruned when its bound cannot strictly beat the incumbent.
template <class Num> class RepresentationSearch {
public:
  RepresentationSearch(const Instance &inst, const ShortlistingProfile &profile,
                       ProjectSet universe, Cost limit, std::vector<Num> weights)
      : inst_(inst), limit_(limit), weights_(std::move(weights)),
        order_(universe.positions()), taken_(profile.size(), 0) {
    proposers_.resize(inst.size());
    for (std::size_t i = 0; i < profile.size(); ++i)
      profile[i].for_each([&](std::size_t pos) { proposers_[pos].push_back(i); });
  }

  ProjectSet run() {
    Num start = 0;
    for (std::size_t i = 0; i < taken_.size(); ++i)
      start += weights_[0];
    visit(0, ProjectSet{}, 0, start);
    return best_set_;
  }

private:
  void visit(std::size_t depth, ProjectSet chosen, Cost spent, const Num &score) {
    if (depth == order_.size()) {
      if (!have_best_ || score > best_) {
        best_ = score;
        best_set_ = chosen;
        have_best_ = true;
      }
      return;
    }
    if (have_best_ && bound(depth, spent, score) <= best_)
      return;
    const auto pos = order_[depth];
    const auto c = inst_.cost(pos);
    if (spent + c <= limit_) {
      Num gained = score;
      for (auto agent : proposers_[pos])
        gained += weights_[++taken_[agent]];
      visit(depth + 1, chosen.with(pos), spent + c, gained);
      for (auto agent : proposers_[pos])
        --taken_[agent];
    }
    visit(depth + 1, chosen, spent, score);
  }

  // Every remaining affordable project earns each proposer's next marginal
  // weight. Weights decrease with depth, so this never underestimates.
  Num bound(std::size_t depth, Cost spent, const Num &score) const {
    Num b = score;
    for (auto d = depth; d < order_.size(); ++d) {
      const auto pos = order_[d];
      if (spent + inst_.cost(pos) > limit_)
        continue;
      for (auto agent : proposers_[pos])
        b += weights_[taken_[agent] + 1];
    }
    return b;
  }

  const Instance &inst_;
  Cost limit_;
  std::vector<Num> weights_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::size_t>> proposers_;
  std::vector<std::size_t> taken_;
  Num best_{};
  ProjectSet best_set_;
  bool have_best_ = false;
};

} // namespace detail

inline constexpr std::size_t default_equal_representation_cap = 20;

/// T of the representation-score maximisers among subsets of the proposed
/// projects with total cost at most k*B.
inline ProjectSet equal_representation(const Instance &inst,
                                       const ShortlistingProfile &profile, int k,
                                       std::size_t cap = default_equal_representation_cap) {
  if (k < 1)
    throw InvalidInput("k must be at least 1");
  const auto universe = union_of(profile);
  if (universe.size() > cap)
    throw ResourceLimit("equal-representation-projects", cap, universe.size());
  if (universe.empty())
    return {};

  // Scale every weight n^{-l} by n^{depth} so that scores become integers.
  const auto n = profile.size();
  std::size_t depth = 0;
  for (auto p : profile)
    depth = std::max(depth, p.size());
  std::vector<BigInt> weights(depth + 2);
  weights[depth + 1] = 0;
  BigInt w = 1;
  for (std::size_t l = depth + 1; l-- > 0;) {
    weights[l] = w;
    w *= n;
  }
  const Cost limit = static_cast<Cost>(k) * inst.budget();

  const BigInt ceiling = BigInt(n) * (depth + 1) * weights[0];
  if (ceiling < BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
    std::vector<std::int64_t> small;
    for (const auto &x : weights)
      small.push_back(static_cast<std::int64_t>(x));
    return detail::RepresentationSearch<std::int64_t>(inst, profile, universe,
                                                      limit, std::move(small))
        .run();
  }
  return detail::RepresentationSearch<BigInt>(inst, profile, universe, limit,
                                              std::move(weights))
      .run();
}

// ---------------------------------------------------------------------------
// Metrics and k-median

/// Real comparisons in the metric rules treat values within this relative
/// tolerance as equal.
inline constexpr double distance_tolerance = 1e-9;

inline bool approx_le(double a, double b) noexcept {
  return a <= b + distance_tolerance * std::max(1.0, std::abs(b));
}
inline bool approx_eq(double a, double b) noexcept {
  return approx_le(a, b) && approx_le(b, a);
}

class Metric {
public:
  Metric() = default;

  /// Euclidean distance over project coordinates; all projects need
  /// coordinates of the same dimension.
  static Metric euclidean(const Instance &inst) {
    Metric m(inst.size());
    for (std::size_t a = 0; a < inst.size(); ++a) {
      const auto &ca = inst.project(a).coords;
      if (!ca)
        throw InvalidInput("p" + std::to_string(index_of(inst.id(a))) +
                           " has no coordinates for the euclidean metric");
      for (std::size_t b = 0; b < inst.size(); ++b) {
        const auto &cb = inst.project(b).coords;
        if (!cb || cb->size() != ca->size())
          throw InvalidInput("coordinate dimensions differ between p" +
                             std::to_string(index_of(inst.id(a))) + " and p" +
                             std::to_string(index_of(inst.id(b))));
        double sq = 0;
        for (std::size_t d = 0; d < ca->size(); ++d)
          sq += ((*ca)[d] - (*cb)[d]) * ((*ca)[d] - (*cb)[d]);
        m.at(a, b) = std::sqrt(sq);
      }
    }
    m.validate(inst);
    return m;
  }

  using Entry = std::tuple<ProjectId, ProjectId, double>;

  /// Explicit distance table. Every unordered pair of distinct projects must
  /// be given; an entry may be repeated in both directions if it agrees.
  static Metric from_table(const Instance &inst, std::span<const Entry> entries) {
    Metric m(inst.size());
    std::vector<char> given(inst.size() * inst.size(), 0);
    for (const auto &[ida, idb, d] : entries) {
      const auto a = inst.position(ida);
      const auto b = inst.position(idb);
      const auto name = "(p" + std::to_string(index_of(ida)) + ", p" +
                        std::to_string(index_of(idb)) + ")";
      if (!std::isfinite(d) || d < 0)
        throw InvalidInput("metric violation: distance " + name +
                           " must be finite and nonnegative");
      if (given[a * m.n_ + b] && !approx_eq(m.at(a, b), d))
        throw InvalidInput("metric violation: conflicting entries for " + name);
      if (given[b * m.n_ + a] && !approx_eq(m.at(b, a), d))
        throw InvalidInput("metric violation: asymmetric distance " + name);
      m.at(a, b) = d;
      given[a * m.n_ + b] = 1;
      if (!given[b * m.n_ + a])
        m.at(b, a) = d;
    }
    for (std::size_t a = 0; a < m.n_; ++a)
      for (std::size_t b = a + 1; b < m.n_; ++b)
        if (!given[a * m.n_ + b] && !given[b * m.n_ + a])
          throw InvalidInput("metric violation: missing distance (p" +
                             std::to_string(index_of(inst.id(a))) + ", p" +
                             std::to_string(index_of(inst.id(b))) + ")");
    m.validate(inst);
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t a, std::size_t b) const noexcept {
    return d_[a * n_ + b];
  }

private:
  explicit Metric(std::size_t n) : n_(n), d_(n * n, 0.0) {}
  double &at(std::size_t a, std::size_t b) { return d_[a * n_ + b]; }

  void validate(const Instance &inst) const {
    auto pair_name = [&](std::size_t a, std::size_t b) {
      return "(p" + std::to_string(index_of(inst.id(a))) + ", p" +
             std::to_string(index_of(inst.id(b))) + ")";
    };
    for (std::size_t a = 0; a < n_; ++a) {
      if (d_[a * n_ + a] != 0.0)
        throw InvalidInput("metric violation: nonzero self distance " + pair_name(a, a));
      for (std::size_t b = 0; b < n_; ++b) {
        if (!approx_eq((*this)(a, b), (*this)(b, a)))
          throw InvalidInput("metric violation: asymmetric distance " + pair_name(a, b));
        for (std::size_t c = 0; c < n_; ++c)
          if (!approx_le((*this)(a, c), (*this)(a, b) + (*this)(b, c)))
            throw InvalidInput("metric violation: triangle inequality fails for " +
                               pair_name(a, c) + " via p" +
                               std::to_string(index_of(inst.id(b))));
      }
    }
  }

  std::size_t n_ = 0;
  std::vector<double> d_;
};

/// Position of med(P): the T-selected minimiser of summed distance.
inline std::size_t median_position(ProjectSet members, const Metric &metric) {
  if (members.empty())
    throw InvalidInput("geometric median of an empty set");
  const auto ps = members.positions();
  std::vector<double> sums(ps.size(), 0.0);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (auto q : ps)
      sums[i] += metric(ps[i], q);
    best = std::min(best, sums[i]);
  }
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (approx_le(sums[i], best))
      return ps[i];
  return ps.front();
}

inline ProjectId geometric_median(const Instance &inst, ProjectSet members,
                                  const Metric &metric) {
  return inst.id(median_position(members, metric));
}

struct VoronoiPartition {
  std::vector<ProjectSet> clusters;
  std::vector<std::size_t> medians; ///< positions, one per cluster

  ProjectSet median_set() const {
    ProjectSet s;
    for (auto m : medians)
      s.insert(m);
    return s;
  }
};

/// Checks both Voronoi conditions and the median budget for a given l.
/// Returns the smallest l for which the partition is valid, if any.
inline std::optional<double> voronoi_radius(const Instance &inst,
                                            const VoronoiPartition &v,
                                            const Metric &metric, int k) {
  Cost spent = 0;
  for (auto m : v.medians)
    spent += inst.cost(m);
  if (spent > static_cast<Cost>(k) * inst.budget())
    return std::nullopt;
  double radius = 0.0;
  for (std::size_t j = 0; j < v.clusters.size(); ++j) {
    bool ok = true;
    v.clusters[j].for_each([&](std::size_t p) {
      const double own = metric(p, v.medians[j]);
      for (std::size_t other = 0; other < v.medians.size(); ++other)
        if (other != j && !approx_le(own, metric(p, v.medians[other])))
          ok = false;
      radius = std::max(radius, own);
    });
    if (!ok)
      return std::nullopt;
  }
  return radius;
}

struct KMedianResult {
  double ell = 0.0;                          ///< minimal l
  ProjectSet shortlist;                      ///< T over the median sets
  std::vector<ProjectSet> median_sets;       ///< all distinct median sets at l*
  std::vector<VoronoiPartition> partitions;  ///< partitions whose medians are the shortlist
  std::size_t valid_partitions = 0;          ///< number of (k, l*)-partitions
};

inline constexpr std::size_t default_partition_cap = 12;

namespace detail {

class PartitionSearch {
public:
  PartitionSearch(const Instance &inst, const Metric &metric, ProjectSet members, int k)
      : inst_(inst), metric_(metric), order_(members.positions()), k_(k) {
    Cost cheapest = std::numeric_limits<Cost>::max();
    for (auto p : order_)
      cheapest = std::min(cheapest, inst.cost(p));
    max_clusters_ = static_cast<std::size_t>(
        std::min<Cost>(static_cast<Cost>(order_.size()),
                       static_cast<Cost>(k) * inst.budget() / cheapest));
  }

  KMedianResult run() {
    std::vector<ProjectSet> clusters;
    assign(0, clusters);
    if (!found_)
      throw NoPartition("no (k, l)-Voronoi partition exists for any l");
    return std::move(result_);
  }

private:
  // Restricted-growth enumeration: each project joins an existing cluster or
  // opens the next one.
  void assign(std::size_t depth, std::vector<ProjectSet> &clusters) {
    if (depth == order_.size()) {
      evaluate(clusters);
      return;
    }
    const auto pos = order_[depth];
    // Deeper calls push and pop, so index rather than hold references.
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      clusters[j].insert(pos);
      assign(depth + 1, clusters);
      clusters[j].erase(pos);
    }
    if (clusters.size() < max_clusters_) {
      clusters.push_back(ProjectSet::single(pos));
      assign(depth + 1, clusters);
      clusters.pop_back();
    }
  }

  void evaluate(const std::vector<ProjectSet> &clusters) {
    VoronoiPartition v{clusters, {}};
    v.medians.reserve(clusters.size());
    for (auto c : clusters)
      v.medians.push_back(median_position(c, metric_));
    const auto radius = voronoi_radius(inst_, v, metric_, k_);
    if (!radius)
      return;
    if (found_ && !approx_le(*radius, result_.ell))
      return;
    if (!found_ || !approx_le(result_.ell, *radius)) {
      result_ = KMedianResult{};
      result_.ell = *radius;
      seen_.clear();
      found_ = true;
    }
    ++result_.valid_partitions;
    const auto medians = v.median_set();
    if (seen_.insert(medians.bits()).second)
      result_.median_sets.push_back(medians);
    if (result_.partitions.empty() || canonical_prefers(medians, result_.shortlist)) {
      result_.shortlist = medians;
      result_.partitions.clear();
    }
    if (medians == result_.shortlist)
      result_.partitions.push_back(std::move(v));
  }

  const Instance &inst_;
  const Metric &metric_;
  std::vector<std::size_t> order_;
  int k_;
  std::size_t max_clusters_ = 0;
  bool found_ = false;
  KMedianResult result_;
  std::set<ProjectSet::Bits> seen_;
};

} // namespace detail

/// Exhaustive search over all set partitions of `members` for the minimal l
/// admitting a (k, l)-Voronoi partition, and T over the resulting median sets.
inline KMedianResult k_median_partitions(const Instance &inst, ProjectSet members,
                                         int k, const Metric &metric,
                                         std::size_t cap = default_partition_cap) {
  if (k < 1)
    throw InvalidInput("k must be at least 1");
  if (metric.size() != inst.size())
    throw InvalidInput("metric does not match the instance");
  if (members.size() > cap)
    throw ResourceLimit("partition-projects", cap, members.size());
  if (members.empty())
    return {};
  return detail::PartitionSearch(inst, metric, members, k).run();
}

inline double minimal_ell(const Instance &inst, ProjectSet members, const Metric &metric,
                          int k, std::size_t cap = default_partition_cap) {
  return k_median_partitions(inst, members, k, metric, cap).ell;
}

inline ProjectSet k_median(const Instance &inst, const ShortlistingProfile &profile,
                           int k, const Metric &metric,
                           std::size_t cap = default_partition_cap) {
  return k_median_partitions(inst, union_of(profile), k, metric, cap).shortlist;
}

// ---------------------------------------------------------------------------
// Rule objects

struct NominationRule {
  std::string name() const { return "nomination"; }
  ProjectSet operator()(const Instance &inst, const ShortlistingProfile &p) const {
    return nomination(inst, p);
  }
};

struct EqualRepresentationRule {
  int k = 1;
  std::size_t cap = default_equal_representation_cap;
  std::string name() const { return std::to_string(k) + "-equal-representation"; }
  ProjectSet operator()(const Instance &inst, const ShortlistingProfile &p) const {
    return equal_representation(inst, p, k, cap);
  }
};

struct KMedianRule {
  int k = 1;
  Metric metric;
  std::size_t cap = default_partition_cap;
  std::string name() const { return std::to_string(k) + "-median"; }
  ProjectSet operator()(const Instance &inst, const ShortlistingProfile &p) const {
    return k_median(inst, p, k, metric, cap);
  }
};

template <class R>
concept ShortlistingRule = requires(const R &r, const Instance &inst,
                                    const ShortlistingProfile &p) {
  { r(inst, p) } -> std::convertible_to<ProjectSet>;
};

} // namespace pbe
