#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "curvepi/curve.hpp"

namespace fixtures {

using curvepi::ComponentData;
using curvepi::CurveConfiguration;
using curvepi::PointRef;

// Marked points are collected from the classes and removed points, plus `extra`.
inline CurveConfiguration make(unsigned p, std::vector<ComponentData> comps,
                               std::vector<std::vector<PointRef>> classes,
                               std::vector<PointRef> removed = {}, std::vector<PointRef> extra = {}) {
  CurveConfiguration c;
  c.characteristic = p;
  c.components = std::move(comps);
  for (const auto& comp : c.components) c.points[comp.id];
  auto note = [&](const PointRef& r) {
    auto& labels = c.points[r.component];
    if (std::find(labels.begin(), labels.end(), r.label) == labels.end()) labels.push_back(r.label);
  };
  for (auto& cls : classes) {
    for (const auto& r : cls) note(r);
    std::sort(cls.begin(), cls.end());
  }
  for (const auto& r : removed) note(r);
  for (const auto& r : extra) note(r);
  c.classes = std::move(classes);
  c.removed = std::move(removed);
  return c;
}

inline ComponentData line(std::string id) { return {std::move(id), 0, 0}; }

// P^1 with 0 ~ 1.
inline CurveConfiguration nodal_p1(unsigned p = 5) {
  return make(p, {line("C1")}, {{{"C1", "0"}, {"C1", "1"}}}, {}, {{"C1", "inf"}});
}

// P^1 with 0 ~ 1 and inf ~ 2.
inline CurveConfiguration two_node_p1(unsigned p = 5) {
  return make(p, {line("C1")}, {{{"C1", "0"}, {"C1", "1"}}, {{"C1", "inf"}, {"C1", "2"}}}, {}, {{"C1", "3"}});
}

// Cycle of three lines.
inline CurveConfiguration triangle(unsigned p = 5) {
  return make(p, {line("A"), line("B"), line("C")},
              {{{"A", "1"}, {"B", "0"}}, {{"B", "1"}, {"C", "0"}}, {{"C", "1"}, {"A", "0"}}});
}

// Two lines meeting in two points.
inline CurveConfiguration banana(unsigned p = 5) {
  return make(p, {line("A"), line("B")}, {{{"A", "0"}, {"B", "0"}}, {{"A", "1"}, {"B", "1"}}}, {},
              {{"A", "2"}, {"B", "2"}});
}

// Two lines meeting in one point.
inline CurveConfiguration cross(unsigned p = 5) {
  return make(p, {line("A"), line("B")}, {{{"A", "0"}, {"B", "0"}}}, {}, {{"A", "1"}, {"B", "1"}});
}

}  // namespace fixtures
