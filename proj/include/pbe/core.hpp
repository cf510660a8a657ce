/**
 * @file core.hpp
 * @brief Projects, instances, project sets, greedy selection and the
 * canonical tie-breaking rule.
 *
 * Every set of projects is a ProjectSet: a bitmask over the positions of an
 * Instance. Positions are assigned in ascending project-index order, so the
 * lowest set bit is always the lowest-indexed project and all canonical
 * tie-breaking reduces to bit arithmetic.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pbe {

class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an exact search would exceed a configured cap.
class ResourceLimit : public std::runtime_error {
public:
  ResourceLimit(std::string cap, std::uint64_t limit, std::uint64_t requested)
      : std::runtime_error("resource limit '" + cap + "' exceeded: requested " +
                           std::to_string(requested) + ", cap " +
                           std::to_string(limit)),
        cap_(std::move(cap)), limit_(limit), requested_(requested) {}

  const std::string &cap() const noexcept { return cap_; }
  std::uint64_t limit() const noexcept { return limit_; }
  std::uint64_t requested() const noexcept { return requested_; }

private:
  std::string cap_;
  std::uint64_t limit_;
  std::uint64_t requested_;
};

/// No (k, l)-Voronoi partition exists for any l.
class NoPartition : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The explicit index i of project p_i.
enum class ProjectId : std::int32_t {};

constexpr std::int32_t index_of(ProjectId id) noexcept {
  return static_cast<std::int32_t>(id);
}

using Cost = std::int64_t;

class ProjectSet {
public:
  using Bits = std::uint64_t;
  static constexpr std::size_t capacity = 64;

  constexpr ProjectSet() noexcept = default;
  static constexpr ProjectSet from_bits(Bits bits) noexcept {
    ProjectSet s;
    s.bits_ = bits;
    return s;
  }
  static constexpr ProjectSet first(std::size_t count) noexcept {
    return from_bits(count >= capacity ? ~Bits{0} : ((Bits{1} << count) - 1));
  }
  static constexpr ProjectSet single(std::size_t pos) noexcept {
    return from_bits(Bits{1} << pos);
  }

  constexpr Bits bits() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool contains(std::size_t pos) const noexcept {
    return (bits_ >> pos) & 1U;
  }
  constexpr bool subset_of(ProjectSet other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }
  /// Position of the lowest-indexed member; the set must be nonempty.
  constexpr std::size_t lowest() const noexcept {
    return static_cast<std::size_t>(std::countr_zero(bits_));
  }

  constexpr ProjectSet &insert(std::size_t pos) noexcept {
    bits_ |= Bits{1} << pos;
    return *this;
  }
  constexpr ProjectSet &erase(std::size_t pos) noexcept {
    bits_ &= ~(Bits{1} << pos);
    return *this;
  }
  constexpr ProjectSet with(std::size_t pos) const noexcept {
    return from_bits(bits_ | (Bits{1} << pos));
  }
  constexpr ProjectSet without(std::size_t pos) const noexcept {
    return from_bits(bits_ & ~(Bits{1} << pos));
  }

  friend constexpr ProjectSet operator|(ProjectSet a, ProjectSet b) noexcept {
    return from_bits(a.bits_ | b.bits_);
  }
  friend constexpr ProjectSet operator&(ProjectSet a, ProjectSet b) noexcept {
    return from_bits(a.bits_ & b.bits_);
  }
  friend constexpr ProjectSet operator^(ProjectSet a, ProjectSet b) noexcept {
    return from_bits(a.bits_ ^ b.bits_);
  }
  friend constexpr ProjectSet operator-(ProjectSet a, ProjectSet b) noexcept {
    return from_bits(a.bits_ & ~b.bits_);
  }
  constexpr ProjectSet &operator|=(ProjectSet o) noexcept {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr ProjectSet &operator&=(ProjectSet o) noexcept {
    bits_ &= o.bits_;
    return *this;
  }
  friend constexpr bool operator==(ProjectSet, ProjectSet) noexcept = default;

  /// Member positions in ascending order.
  std::vector<std::size_t> positions() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (Bits b = bits_; b != 0; b &= b - 1)
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  template <class Fn> constexpr void for_each(Fn &&fn) const {
    for (Bits b = bits_; b != 0; b &= b - 1)
      fn(static_cast<std::size_t>(std::countr_zero(b)));
  }

private:
  Bits bits_ = 0;
};

/// Calls fn on every subset of `of`, in increasing bit-pattern order.
template <class Fn> void for_each_subset(ProjectSet of, Fn &&fn) {
  const auto mask = of.bits();
  ProjectSet::Bits s = 0;
  do {
    fn(ProjectSet::from_bits(s));
    s = (s - mask) & mask;
  } while (s != 0);
}

/// Number of subsets of a set with `size` members, saturating at 2^63.
constexpr std::uint64_t subset_count(std::size_t size) noexcept {
  return size >= 63 ? (std::uint64_t{1} << 63) : (std::uint64_t{1} << size);
}

/// True when the canonical rule T prefers `a` over `b`: the lowest-indexed
/// project of the symmetric difference belongs to `a`.
constexpr bool canonical_prefers(ProjectSet a, ProjectSet b) noexcept {
  const auto diff = a.bits() ^ b.bits();
  if (diff == 0)
    return false;
  return (a.bits() & (diff & (~diff + 1))) != 0;
}

/// Strict order listing T-preferred sets first.
struct CanonicalOrder {
  constexpr bool operator()(ProjectSet a, ProjectSet b) const noexcept {
    return canonical_prefers(a, b);
  }
};

struct Project {
  ProjectId id{};
  Cost cost = 1;
  std::optional<std::vector<double>> coords;
};

/// A universe of projects with a budget limit. Serves as both shortlisting
/// instance and, together with a shortlist, as allocation instance.
class Instance {
public:
  Instance() = default;

  Instance(std::vector<Project> projects, Cost budget)
      : projects_(std::move(projects)), budget_(budget) {
    if (budget_ < 1)
      throw InvalidInput("budget must be a positive integer");
    if (projects_.size() > ProjectSet::capacity)
      throw InvalidInput("at most " + std::to_string(ProjectSet::capacity) +
                         " projects per instance are supported");
    std::sort(projects_.begin(), projects_.end(),
              [](const Project &a, const Project &b) { return a.id < b.id; });
    for (std::size_t i = 0; i < projects_.size(); ++i) {
      const auto &p = projects_[i];
      if (index_of(p.id) < 1)
        throw InvalidInput("project index must be positive: " +
                           std::to_string(index_of(p.id)));
      if (i > 0 && projects_[i - 1].id == p.id)
        throw InvalidInput("duplicate project p" +
                           std::to_string(index_of(p.id)));
      if (p.cost < 1)
        throw InvalidInput("cost of p" + std::to_string(index_of(p.id)) +
                           " must be at least 1");
      if (p.cost > budget_)
        throw InvalidInput("cost of p" + std::to_string(index_of(p.id)) +
                           " exceeds the budget");
    }
  }

  /// Unit-cost instance over p_1..p_count.
  static Instance unit(std::size_t count, Cost budget) {
    std::vector<Project> ps;
    for (std::size_t i = 1; i <= count; ++i)
      ps.push_back({ProjectId{static_cast<std::int32_t>(i)}, 1, std::nullopt});
    return Instance(std::move(ps), budget);
  }

  std::size_t size() const noexcept { return projects_.size(); }
  Cost budget() const noexcept { return budget_; }
  ProjectSet all() const noexcept { return ProjectSet::first(size()); }

  const Project &project(std::size_t pos) const { return projects_.at(pos); }
  const std::vector<Project> &projects() const noexcept { return projects_; }
  Cost cost(std::size_t pos) const { return projects_[pos].cost; }
  ProjectId id(std::size_t pos) const { return projects_[pos].id; }

  std::optional<std::size_t> find(ProjectId id) const noexcept {
    auto it = std::lower_bound(
        projects_.begin(), projects_.end(), id,
        [](const Project &p, ProjectId v) { return p.id < v; });
    if (it == projects_.end() || it->id != id)
      return std::nullopt;
    return static_cast<std::size_t>(it - projects_.begin());
  }

  std::size_t position(ProjectId id) const {
    if (auto pos = find(id))
      return *pos;
    throw InvalidInput("unknown project p" + std::to_string(index_of(id)));
  }

  ProjectSet set_of(std::span<const ProjectId> ids) const {
    ProjectSet s;
    for (auto id : ids)
      s.insert(position(id));
    return s;
  }
  ProjectSet set_of(std::initializer_list<int> indices) const {
    ProjectSet s;
    for (int i : indices)
      s.insert(position(ProjectId{i}));
    return s;
  }

  std::vector<ProjectId> ids(ProjectSet s) const {
    std::vector<ProjectId> out;
    s.for_each([&](std::size_t pos) { out.push_back(id(pos)); });
    return out;
  }

  Cost cost(ProjectSet s) const noexcept {
    Cost total = 0;
    s.for_each([&](std::size_t pos) { total += projects_[pos].cost; });
    return total;
  }

  bool unit_cost() const noexcept {
    return std::all_of(projects_.begin(), projects_.end(), [&](const Project &p) {
      return p.cost == projects_.front().cost;
    });
  }

private:
  std::vector<Project> projects_;
  Cost budget_ = 1;
};

inline std::string to_string(const Instance &inst, ProjectSet s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  s.for_each([&](std::size_t pos) {
    out << (first ? "" : ",") << 'p' << index_of(inst.id(pos));
    first = false;
  });
  out << '}';
  return out.str();
}

/// c(P) for a list of project ids; unknown ids are rejected.
inline Cost total_cost(const Instance &inst, std::span<const ProjectId> ids) {
  Cost total = 0;
  for (auto id : ids)
    total += inst.cost(inst.position(id));
  return total;
}

/// GREED over positions already in examination order.
inline ProjectSet greedy_positions(const Instance &inst,
                                   std::span<const std::size_t> order,
                                   Cost budget) {
  ProjectSet selected;
  Cost spent = 0;
  for (auto pos : order) {
    const auto c = inst.cost(pos);
    if (spent + c <= budget) {
      selected.insert(pos);
      spent += c;
    }
  }
  return selected;
}

/// Examines `members` following `order` and keeps each project that still
/// fits the budget. The order must list every member exactly once.
inline ProjectSet greedy_select(const Instance &inst, ProjectSet members,
                                std::span<const ProjectId> order, Cost budget) {
  std::vector<std::size_t> positions;
  positions.reserve(order.size());
  ProjectSet seen;
  for (auto id : order) {
    const auto pos = inst.position(id);
    if (!members.contains(pos))
      throw InvalidInput("order mentions p" + std::to_string(index_of(id)) +
                         " outside the selection set");
    if (seen.contains(pos))
      throw InvalidInput("order repeats p" + std::to_string(index_of(id)));
    seen.insert(pos);
    positions.push_back(pos);
  }
  if (seen != members)
    throw InvalidInput("order does not cover every project of the set");
  return greedy_positions(inst, positions, budget);
}

/// T(P): the member with minimal index.
inline ProjectId tiebreak_project(const Instance &inst, ProjectSet s) {
  if (s.empty())
    throw InvalidInput("tie-breaking requires a nonempty set of projects");
  return inst.id(s.lowest());
}

/// T(>=): refines ranked indifference classes into a strict order, ascending
/// index inside each class. If `expected` is given, the classes must cover it
/// exactly.
inline std::vector<ProjectId>
tiebreak_order(const Instance &inst,
               const std::vector<std::vector<ProjectId>> &classes,
               std::optional<ProjectSet> expected = std::nullopt) {
  std::vector<ProjectId> out;
  ProjectSet seen;
  for (const auto &cls : classes) {
    ProjectSet members;
    for (auto id : cls) {
      const auto pos = inst.position(id);
      if (seen.contains(pos) || members.contains(pos))
        throw InvalidInput("indifference classes overlap at p" +
                           std::to_string(index_of(id)));
      members.insert(pos);
    }
    seen |= members;
    members.for_each([&](std::size_t pos) { out.push_back(inst.id(pos)); });
  }
  if (expected && seen != *expected)
    throw InvalidInput("indifference classes do not partition the project set");
  return out;
}

/// T over a family of sets. Duplicates are allowed.
inline ProjectSet tiebreak_family(std::span<const ProjectSet> family) {
  if (family.empty())
    throw InvalidInput("tie-breaking requires a nonempty family of sets");
  ProjectSet best = family.front();
  for (auto s : family.subspan(1))
    if (canonical_prefers(s, best))
      best = s;
  return best;
}

inline ProjectSet tiebreak_family(std::initializer_list<ProjectSet> family) {
  return tiebreak_family(std::span<const ProjectSet>(family.begin(), family.size()));
}

} // namespace pbe
