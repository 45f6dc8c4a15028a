#pragma once
// Sheet-graph connectivity computed from raw permutations, without the
// library's tables, union-find or normal forms.

#include <map>
#include <set>

#include "brute.hpp"
#include "curvepi/cover.hpp"

namespace brute {

// Number of connected components of the cover (translation gluings only).
inline std::size_t cover_components(const curvepi::CoverDescriptor& cover) {
  const std::size_t n = cover.group.degree();
  std::vector<Perm> gens;
  for (const auto& g : cover.group.generators()) gens.push_back(g.images());
  auto elems_set = closure(n, gens);
  std::vector<Perm> elems(elems_set.begin(), elems_set.end());
  using Node = std::pair<std::string, Perm>;
  std::map<Node, std::set<Node>> adj;
  for (const auto& comp : cover.base.components) {
    std::vector<Perm> m;
    for (const auto& g : cover.monodromy.at(comp.id).generators()) m.push_back(g.images());
    for (const auto& l : elems) {
      adj[{comp.id, l}];
      for (const auto& x : m) {
        adj[{comp.id, l}].insert({comp.id, compose(x, l)});
        adj[{comp.id, compose(x, l)}].insert({comp.id, l});
      }
    }
  }
  for (const auto& gl : cover.gluings) {
    for (const auto& b : gl.branches) {
      for (const auto& l : elems) {
        Node u{gl.base.component, l}, v{b.branch.component, compose(b.constant.images(), l)};
        adj[u].insert(v);
        adj[v].insert(u);
      }
    }
  }
  std::set<Node> seen;
  std::size_t comps = 0;
  for (const auto& [start, _] : adj) {
    if (seen.contains(start)) continue;
    ++comps;
    std::vector<Node> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (const auto& y : adj[x]) {
        if (seen.insert(y).second) stack.push_back(y);
      }
    }
  }
  return comps;
}

}  // namespace brute
