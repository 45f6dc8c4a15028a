#include "curvepi/group_lattice.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_map>

#include "curvepi/error.hpp"

namespace curvepi {

namespace {

// One generator per cyclic subgroup, largest cyclic subgroups first.
std::vector<Elem> cyclic_representatives(const GroupTable& table) {
  std::unordered_map<Subset, Elem, Subset::Hash> seen;
  std::vector<Elem> reps;
  for (Elem x = 0; x < table.size(); ++x) {
    Elem gen[1] = {x};
    Subset s = table.closure(gen);
    if (seen.emplace(std::move(s), x).second) reps.push_back(x);
  }
  std::stable_sort(reps.begin(), reps.end(), [&](Elem a, Elem b) {
    return table.element_order(a) > table.element_order(b);
  });
  return reps;
}

bool sweep(const GroupTable& table, const std::vector<Elem>& reps, std::vector<Elem>& tuple,
           unsigned k) {
  if (tuple.size() == k) return table.generates_all(tuple);
  if (tuple.empty()) {
    for (Elem r : reps) {
      tuple.push_back(r);
      if (sweep(table, reps, tuple, k)) return true;
      tuple.pop_back();
    }
    return false;
  }
  Subset current = table.closure(tuple);
  if (current.count() == table.size()) return true;
  // Entries after the first form a set: take them in increasing index order
  // and skip elements already generated.
  Elem start = tuple.size() >= 2 ? tuple.back() + 1 : 0;
  for (Elem x = start; x < table.size(); ++x) {
    if (current.test(x)) continue;
    tuple.push_back(x);
    if (sweep(table, reps, tuple, k)) return true;
    tuple.pop_back();
  }
  return false;
}

Permutation random_element(const StabilizerChain& chain, std::mt19937_64& rng) {
  Permutation g = Permutation::identity(chain.degree);
  for (const auto& level : chain.levels) {
    std::uniform_int_distribution<std::size_t> pick(0, level.orbit.size() - 1);
    g = g * *level.transversal[level.orbit[pick(rng)]];
  }
  return g;
}

MinGenerators random_upper_bound(const PermutationGroup& g, const MinGeneratorsOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  const auto& chain = g.chain();
  unsigned fallback = 0;
  for (const auto& s : g.generators()) fallback += s.is_identity() ? 0 : 1;
  for (unsigned k = 1; k < fallback; ++k) {
    for (std::size_t t = 0; t < std::max<std::size_t>(opts.random_budget, 1); ++t) {
      std::vector<Permutation> tuple;
      for (unsigned i = 0; i < k; ++i) tuple.push_back(random_element(chain, rng));
      if (PermutationGroup(g.degree(), tuple).order() == g.order()) return {k, true};
    }
  }
  return {fallback, true};
}

}  // namespace

MinGenerators min_generators(const PermutationGroup& g, const MinGeneratorsOptions& opts) {
  const auto order = g.order();
  if (order == 1) return {0, false};
  if (order > opts.exhaustive_bound) {
    if (opts.allow_random_fallback) return random_upper_bound(g, opts);
    throw Error(ErrorCode::group_too_large,
                "d(G) exact search limited to order " + std::to_string(opts.exhaustive_bound) +
                    ", group has order " + std::to_string(order));
  }
  const GroupTable& table = g.table();
  const auto reps = cyclic_representatives(table);
  const auto n = table.size();
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
  for (unsigned k = 1;; ++k) {
    for (std::size_t t = 0; t < opts.random_budget; ++t) {
      std::vector<Elem> tuple(k);
      for (auto& x : tuple) x = pick(rng);
      if (table.generates_all(tuple)) return {k, false};
    }
    std::vector<Elem> tuple;
    if (sweep(table, reps, tuple, k)) return {k, false};
  }
}

unsigned min_generators_exhaustive(const PermutationGroup& g) {
  const GroupTable& table = g.table();
  const std::size_t n = table.size();
  if (n == 1) return 0;
  for (unsigned k = 1;; ++k) {
    std::vector<Elem> tuple(k, 0);
    while (true) {
      if (table.generates_all(tuple)) return k;
      std::size_t pos = 0;
      while (pos < k && ++tuple[pos] == n) tuple[pos++] = 0;
      if (pos == k) break;
    }
  }
}

unsigned long long count_generating_tuples(const PermutationGroup& g, unsigned k) {
  const GroupTable& table = g.table();
  const std::size_t n = table.size();
  if (k == 0) return n == 1 ? 1 : 0;
  unsigned long long count = 0;
  std::vector<Elem> tuple(k, 0);
  while (true) {
    if (table.generates_all(tuple)) ++count;
    std::size_t pos = 0;
    while (pos < k && ++tuple[pos] == n) tuple[pos++] = 0;
    if (pos == k) break;
  }
  return count;
}

std::optional<std::size_t> SubgroupLattice::find(const Subset& s) const {
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    if (subgroups[i] == s) return i;
  }
  return std::nullopt;
}

SubgroupLattice subgroup_lattice(const PermutationGroup& g, std::size_t bound) {
  if (g.order() > bound) {
    throw Error(ErrorCode::group_too_large, "subgroup lattice limited to order " +
                                                std::to_string(bound) + ", group has order " +
                                                std::to_string(g.order()));
  }
  const GroupTable& table = g.table();
  std::unordered_map<Subset, std::size_t, Subset::Hash> index;
  std::vector<Subset> subs;
  std::vector<std::vector<Elem>> gens;
  auto add = [&](Subset s, std::vector<Elem> gs) {
    if (index.contains(s)) return;
    index.emplace(s, subs.size());
    subs.push_back(std::move(s));
    gens.push_back(std::move(gs));
  };

  for (Elem x = 0; x < table.size(); ++x) {
    Elem gen[1] = {x};
    add(table.closure(gen), x == 0 ? std::vector<Elem>{} : std::vector<Elem>{x});
  }
  const std::size_t n_cyclic = subs.size();
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::size_t c = 1; c < n_cyclic; ++c) {
      if (subs[c].is_subset_of(subs[i])) continue;
      std::vector<Elem> joined = gens[i];
      joined.push_back(gens[c][0]);
      add(table.closure(joined), joined);
    }
  }

  std::vector<std::size_t> order(subs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto ca = subs[a].count(), cb = subs[b].count();
    if (ca != cb) return ca < cb;
    return subs[a] < subs[b];
  });
  SubgroupLattice lattice;
  for (auto i : order) {
    lattice.subgroups.push_back(subs[i]);
    lattice.generators.push_back(gens[i]);
  }
  return lattice;
}

std::vector<long long> moebius(const SubgroupLattice& lattice) {
  const std::size_t m = lattice.size();
  std::vector<long long> mu(m, 0);
  mu[m - 1] = 1;
  for (std::size_t h = m - 1; h-- > 0;) {
    long long sum = 0;
    for (std::size_t k = h + 1; k < m; ++k) {
      if (lattice.contains(k, h) && lattice.subgroups[k] != lattice.subgroups[h]) sum += mu[k];
    }
    mu[h] = -sum;
  }
  return mu;
}

long long eulerian(const SubgroupLattice& lattice, const std::vector<long long>& mu, unsigned k) {
  __int128 total = 0;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (mu[i] == 0) continue;
    __int128 power = 1;
    const auto size = static_cast<__int128>(lattice.subgroups[i].count());
    for (unsigned j = 0; j < k; ++j) {
      power *= size;
      if (power > static_cast<__int128>(1) << 100) {
        throw Error(ErrorCode::too_large, "Eulerian function overflow");
      }
    }
    total += power * mu[i];
  }
  if (total > std::numeric_limits<long long>::max() || total < 0) {
    throw Error(ErrorCode::too_large, "Eulerian function overflow");
  }
  return static_cast<long long>(total);
}

long long eulerian(const PermutationGroup& g, unsigned k, std::size_t bound) {
  auto lattice = subgroup_lattice(g, bound);
  return eulerian(lattice, moebius(lattice), k);
}

PermutationGroup subgroup_from_elements(const PermutationGroup& g, const std::vector<Elem>& gens) {
  const GroupTable& table = g.table();
  std::vector<Permutation> perms;
  for (Elem e : gens) perms.push_back(table.element(e));
  return PermutationGroup(g.degree(), std::move(perms));
}

std::optional<unsigned> nakajima_tG(const PermutationGroup& g, unsigned p,
                                    const MinGeneratorsOptions& opts) {
  if (!is_prime(p)) throw Error(ErrorCode::not_prime, std::to_string(p) + " is not prime");
  // For a p-group k[G] is local with maximal ideal I_G, so the minimal number
  // of generators of I_G is dim I_G / I_G^2 = d(G).
  if (!is_p_group(g, p)) return std::nullopt;
  return min_generators(g, opts).value;
}

}  // namespace curvepi
