#pragma once
// Naive reference computations used as oracles. They work on raw image
// vectors and never touch the library's chains, tables or lattices.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace brute {

using Perm = std::vector<std::uint32_t>;

inline Perm compose(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

inline Perm identity(std::size_t n) {
  Perm out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint32_t>(i);
  return out;
}

inline Perm inverse(const Perm& a) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[a[i]] = static_cast<std::uint32_t>(i);
  return out;
}

inline std::set<Perm> closure(std::size_t n, const std::vector<Perm>& gens) {
  std::set<Perm> seen{identity(n)};
  std::vector<Perm> frontier{identity(n)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        Perm y = compose(x, g);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

inline std::size_t element_order(const Perm& a) {
  Perm x = a;
  std::size_t k = 1;
  const Perm e = identity(a.size());
  while (x != e) {
    x = compose(x, a);
    ++k;
  }
  return k;
}

inline Perm power(const Perm& a, std::size_t e) {
  Perm x = identity(a.size());
  for (std::size_t i = 0; i < e; ++i) x = compose(x, a);
  return x;
}

// Number of k-tuples from `elems` generating a group of size `order`.
inline unsigned long long count_generating(std::size_t n, const std::vector<Perm>& elems, unsigned k,
                                           std::size_t order) {
  if (k == 0) return order == 1 ? 1 : 0;
  unsigned long long count = 0;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    std::vector<Perm> gens;
    for (auto i : idx) gens.push_back(elems[i]);
    if (closure(n, gens).size() == order) ++count;
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == elems.size()) idx[pos++] = 0;
    if (pos == k) break;
  }
  return count;
}

inline unsigned min_generators(std::size_t n, const std::vector<Perm>& elems) {
  if (elems.size() == 1) return 0;
  for (unsigned k = 1;; ++k) {
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      std::vector<Perm> gens;
      for (auto i : idx) gens.push_back(elems[i]);
      if (closure(n, gens).size() == elems.size()) return k;
      std::size_t pos = 0;
      while (pos < k && ++idx[pos] == elems.size()) idx[pos++] = 0;
      if (pos == k) break;
    }
  }
}

inline bool is_p_power(std::size_t m, unsigned p) {
  while (m % p == 0) m /= p;
  return m == 1;
}

// Subgroup generated by all elements of p-power order.
inline std::set<Perm> p_elements_subgroup(std::size_t n, const std::vector<Perm>& elems, unsigned p) {
  std::vector<Perm> gens;
  for (const auto& x : elems) {
    if (is_p_power(element_order(x), p)) gens.push_back(x);
  }
  return closure(n, gens);
}

// |G / [G,G] G^p|, from the subgroup generated by all commutators and p-th powers.
inline std::size_t elementary_quotient_order(std::size_t n, const std::vector<Perm>& elems, unsigned p) {
  std::vector<Perm> gens;
  for (const auto& a : elems) {
    gens.push_back(power(a, p));
    for (const auto& b : elems) gens.push_back(compose(compose(inverse(a), inverse(b)), compose(a, b)));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return elems.size() / closure(n, gens).size();
}

// All subgroups, by testing every subset for closure. Tiny groups only.
inline std::vector<std::set<Perm>> all_subgroups(const std::vector<Perm>& elems) {
  std::vector<std::set<Perm>> out;
  const std::size_t m = elems.size();
  for (std::uint64_t mask = 1; mask < (1ULL << m); ++mask) {
    if (!(mask & 1)) continue;  // elems[0] is the identity
    std::set<Perm> s;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) s.insert(elems[i]);
    }
    bool closed = true;
    for (const auto& a : s) {
      for (const auto& b : s) {
        if (!s.contains(compose(a, b))) {
          closed = false;
          break;
        }
      }
      if (!closed) break;
    }
    if (closed) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace brute
