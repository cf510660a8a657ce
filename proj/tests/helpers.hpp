#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pbe/pbe.hpp"

namespace testing_helpers {

inline std::vector<int> ids(const pbe::Instance &inst, pbe::ProjectSet s) {
  std::vector<int> out;
  for (auto id : inst.ids(s))
    out.push_back(pbe::index_of(id));
  return out;
}

inline pbe::PreferenceOrder order(const pbe::Instance &inst, std::initializer_list<int> ranking) {
  std::vector<pbe::ProjectId> r;
  for (auto i : ranking)
    r.push_back(pbe::ProjectId{i});
  return pbe::PreferenceOrder(inst, std::move(r));
}

inline pbe::Instance with_costs(std::initializer_list<pbe::Cost> costs, pbe::Cost budget) {
  std::vector<pbe::Project> ps;
  int i = 1;
  for (auto c : costs)
    ps.push_back({pbe::ProjectId{i++}, c, std::nullopt});
  return pbe::Instance(std::move(ps), budget);
}

inline pbe::Instance with_points(std::vector<std::vector<double>> points, pbe::Cost budget) {
  std::vector<pbe::Project> ps;
  int i = 1;
  for (auto &p : points)
    ps.push_back({pbe::ProjectId{i++}, 1, std::move(p)});
  return pbe::Instance(std::move(ps), budget);
}

inline pbe::Scenario fixture(const char *name) {
  auto sc = pbe::bundled_fixture(name);
  if (!sc)
    throw std::runtime_error(std::string("missing fixture ") + name);
  return *sc;
}

} // namespace testing_helpers
