#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace curvepi {

struct PointRef {
  std::string component;
  std::string label;

  friend bool operator==(const PointRef&, const PointRef&) = default;
  friend auto operator<=>(const PointRef&, const PointRef&) = default;
  std::string str() const { return component + ":" + label; }
};

struct ComponentData {
  std::string id;
  unsigned genus = 0;
  unsigned p_rank = 0;

  friend bool operator==(const ComponentData&, const ComponentData&) = default;
};

// A seminormal curve described through its normalization: smooth components,
// the marked points on them, the classes of points glued to a single singular
// point, and the smooth points removed to form an affine curve.
struct CurveConfiguration {
  unsigned characteristic = 0;
  std::vector<ComponentData> components;
  // Marked points per component id, in file order.
  std::map<std::string, std::vector<std::string>> points;
  // Members are kept sorted; class order is significant.
  std::vector<std::vector<PointRef>> classes;
  std::vector<PointRef> removed;

  bool is_projective() const noexcept { return removed.empty(); }
  std::optional<std::size_t> component_index(const std::string& id) const;
  const ComponentData& component(const std::string& id) const;
  bool has_point(const PointRef& p) const;
  // Index of the class containing p.
  std::optional<std::size_t> class_of(const PointRef& p) const;
  bool is_removed(const PointRef& p) const;
  // Marked points lying in no class and not removed.
  std::vector<PointRef> smooth_points() const;
  unsigned total_genus() const;
  unsigned total_p_rank() const;

  friend bool operator==(const CurveConfiguration&, const CurveConfiguration&) = default;
};

struct Violation {
  std::string code;
  std::string message;
};

// Every invariant violation, in a fixed order. Never throws.
std::vector<Violation> validate(const CurveConfiguration& config);
// Throws invalid_config with the first violation.
void require_valid(const CurveConfiguration& config);

struct DualGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t connected_components = 0;

  long long betti() const {
    return static_cast<long long>(edges.size()) - static_cast<long long>(vertices.size()) +
           static_cast<long long>(connected_components);
  }
};

DualGraph dual_graph(const CurveConfiguration& config);
bool is_connected(const CurveConfiguration& config);
// 1 - n + sum(|class| - 1); connected projective configurations only.
long long delta(const CurveConfiguration& config);
unsigned affine_delta(const CurveConfiguration& config);

struct RankReport {
  long long delta = 0;
  unsigned pi1_rank_bound = 0;
  unsigned pro_p_rank = 0;
  std::optional<unsigned> tame_rank;
  unsigned affine_delta = 0;
};

RankReport rank_report(const CurveConfiguration& config);
// sum s_i + delta; connected projective configurations only.
unsigned pro_p_rank(const CurveConfiguration& config);

// Glues each listed set of points to one singular point. A member that already
// lies in a class drags its whole class along; overlapping sets are merged.
CurveConfiguration identify(const CurveConfiguration& config,
                            const std::vector<std::vector<PointRef>>& relation);

struct ElementaryIdentification {
  PointRef first;
  PointRef second;
  bool same_component = false;
};

std::vector<ElementaryIdentification> factorize(const CurveConfiguration& config);
// The configuration with every class dissolved.
CurveConfiguration normalization(const CurveConfiguration& config);
CurveConfiguration replay(const CurveConfiguration& start,
                          const std::vector<ElementaryIdentification>& steps);
// Equality ignoring the order of classes, removed points and marked points.
bool same_curve(const CurveConfiguration& a, const CurveConfiguration& b);

CurveConfiguration disjoint_union(const CurveConfiguration& a, const CurveConfiguration& b);

struct RandomConfigOptions {
  std::size_t max_components = 6;
  std::size_t max_classes = 6;
  unsigned max_genus = 2;
  bool connected = true;
  bool projective = true;
  unsigned characteristic = 5;
};

CurveConfiguration random_configuration(std::uint64_t seed, const RandomConfigOptions& opts = {});

std::string to_dot(const CurveConfiguration& config);

}  // namespace curvepi
