#include "curvepi/perm_group.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "curvepi/error.hpp"
#include "curvepi/group_table.hpp"

namespace curvepi {

// ---------------------------------------------------------------------------
// Stabilizer chain
// ---------------------------------------------------------------------------

unsigned long long StabilizerChain::order() const {
  unsigned long long n = 1;
  for (const auto& level : levels) n *= level.orbit.size();
  return n;
}

std::pair<Permutation, std::size_t> StabilizerChain::strip(const Permutation& g) const {
  Permutation h = g;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& level = levels[i];
    Point beta = h(level.base_point);
    if (!level.transversal[beta]) return {h, i};
    h = level.transversal[beta]->inverse() * h;
  }
  return {h, levels.size()};
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree) {
    throw Error(ErrorCode::degree_mismatch, "permutation of degree " + std::to_string(g.degree()) +
                                                " tested against group of degree " +
                                                std::to_string(degree));
  }
  auto [residue, level] = strip(g);
  return level == levels.size() && residue.is_identity();
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  for (const auto& level : levels) b.push_back(level.base_point);
  return b;
}

std::vector<Permutation> StabilizerChain::strong_generators() const {
  std::vector<Permutation> out;
  for (const auto& level : levels) {
    for (const auto& g : level.generators) {
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
  }
  return out;
}

namespace {

void compute_orbit(StabilizerChain::Level& level, std::size_t degree) {
  level.orbit.clear();
  level.transversal.assign(degree, std::nullopt);
  level.transversal[level.base_point] = Permutation::identity(degree);
  level.orbit.push_back(level.base_point);
  for (std::size_t i = 0; i < level.orbit.size(); ++i) {
    Point beta = level.orbit[i];
    for (const auto& s : level.generators) {
      Point img = s(beta);
      if (!level.transversal[img]) {
        level.transversal[img] = s * *level.transversal[beta];
        level.orbit.push_back(img);
      }
    }
  }
}

bool fixes_all(const Permutation& g, const std::vector<Point>& pts, std::size_t upto) {
  for (std::size_t i = 0; i < upto; ++i) {
    if (g(pts[i]) != pts[i]) return false;
  }
  return true;
}

}  // namespace

StabilizerChain build_stabilizer_chain(std::size_t degree,
                                       const std::vector<Permutation>& generators) {
  StabilizerChain chain;
  chain.degree = degree;
  std::vector<Permutation> gens;
  for (const auto& g : generators) {
    if (g.degree() != degree) {
      throw Error(ErrorCode::degree_mismatch, "generator degree " + std::to_string(g.degree()) +
                                                  " differs from group degree " +
                                                  std::to_string(degree));
    }
    if (!g.is_identity()) gens.push_back(g);
  }

  std::vector<Point> base;
  for (const auto& g : gens) {
    if (fixes_all(g, base, base.size())) base.push_back(g.first_moved_point());
  }
  chain.levels.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    auto& level = chain.levels[i];
    level.base_point = base[i];
    for (const auto& g : gens) {
      if (fixes_all(g, base, i)) level.generators.push_back(g);
    }
    compute_orbit(level, degree);
  }

  // Incremental Schreier-Sims: verify levels from the bottom up; whenever a
  // Schreier generator fails to sift, add its residue and restart below.
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(chain.levels.size()) - 1;
  while (i >= 0) {
    bool restart = false;
    auto& level = chain.levels[static_cast<std::size_t>(i)];
    for (std::size_t oi = 0; oi < level.orbit.size() && !restart; ++oi) {
      Point beta = level.orbit[oi];
      const Permutation u_beta = *level.transversal[beta];
      for (std::size_t si = 0; si < level.generators.size(); ++si) {
        const Permutation s = level.generators[si];
        Permutation g1 = s * u_beta;
        const Permutation& u1 = *level.transversal[s(beta)];
        if (g1 == u1) continue;
        Permutation schreier = u1.inverse() * g1;
        auto [h, j] = chain.strip(schreier);
        if (j == chain.levels.size() && h.is_identity()) continue;
        if (j == chain.levels.size()) {
          StabilizerChain::Level fresh;
          fresh.base_point = h.first_moved_point();
          chain.levels.push_back(std::move(fresh));
        }
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
          chain.levels[l].generators.push_back(h);
          compute_orbit(chain.levels[l], degree);
        }
        i = static_cast<std::ptrdiff_t>(j);
        restart = true;
        break;
      }
    }
    if (!restart) --i;
  }
  return chain;
}

// ---------------------------------------------------------------------------
// PermutationGroup
// ---------------------------------------------------------------------------

struct PermutationGroup::Cache {
  std::once_flag chain_once;
  std::unique_ptr<StabilizerChain> chain;
  std::once_flag elements_once;
  std::vector<Permutation> elements;
  std::once_flag table_once;
  std::unique_ptr<GroupTable> table;
};

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  if (degree_ == 0) throw Error(ErrorCode::invalid_argument, "group degree must be positive");
  for (const auto& g : generators_) {
    if (g.degree() != degree_) {
      throw Error(ErrorCode::degree_mismatch, "generator degree " + std::to_string(g.degree()) +
                                                  " differs from group degree " +
                                                  std::to_string(degree_));
    }
  }
}

const StabilizerChain& PermutationGroup::chain() const {
  std::call_once(cache_->chain_once, [this] {
    cache_->chain = std::make_unique<StabilizerChain>(build_stabilizer_chain(degree_, generators_));
  });
  return *cache_->chain;
}

bool PermutationGroup::contains(const Permutation& g) const { return chain().contains(g); }

bool PermutationGroup::contains_group(const PermutationGroup& h) const {
  if (h.degree() != degree_) {
    throw Error(ErrorCode::degree_mismatch, "subgroup degree differs from group degree");
  }
  return std::all_of(h.generators().begin(), h.generators().end(),
                     [this](const Permutation& g) { return contains(g); });
}

bool PermutationGroup::same_elements(const PermutationGroup& other) const {
  return other.degree() == degree_ && order() == other.order() && contains_group(other);
}

bool PermutationGroup::is_normal_in(const PermutationGroup& ambient) const {
  if (!ambient.contains_group(*this)) return false;
  for (const auto& g : ambient.generators()) {
    Permutation gi = g.inverse();
    for (const auto& n : generators_) {
      if (!contains(g * n * gi)) return false;
    }
  }
  return true;
}

const std::vector<Permutation>& PermutationGroup::elements() const {
  std::call_once(cache_->elements_once, [this] {
    const auto& ch = chain();
    if (ch.order() > kElementLimit) {
      throw Error(ErrorCode::group_too_large,
                  "element enumeration limited to order " + std::to_string(kElementLimit) +
                      ", group has order " + std::to_string(ch.order()));
    }
    std::vector<Permutation> out{Permutation::identity(degree_)};
    // Every element is uniquely u_0 u_1 ... u_{k-1} with u_i in the i-th transversal.
    for (std::ptrdiff_t li = static_cast<std::ptrdiff_t>(ch.levels.size()) - 1; li >= 0; --li) {
      const auto& level = ch.levels[static_cast<std::size_t>(li)];
      std::vector<Permutation> next;
      next.reserve(out.size() * level.orbit.size());
      for (Point x : level.orbit) {
        const Permutation& u = *level.transversal[x];
        for (const auto& rest : out) next.push_back(u * rest);
      }
      out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    cache_->elements = std::move(out);
  });
  return cache_->elements;
}

const GroupTable& PermutationGroup::table() const {
  std::call_once(cache_->table_once, [this] {
    if (order() > kTableLimit) {
      throw Error(ErrorCode::group_too_large,
                  "Cayley table limited to order " + std::to_string(kTableLimit) +
                      ", group has order " + std::to_string(order()));
    }
    cache_->table = std::make_unique<GroupTable>(elements());
  });
  return *cache_->table;
}

std::vector<Permutation> enumerate_by_closure(const PermutationGroup& g, std::size_t limit) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> queue{Permutation::identity(g.degree())};
  seen.insert(queue[0]);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& s : g.generators()) {
      Permutation y = queue[i] * s;
      if (seen.insert(y).second) {
        queue.push_back(y);
        if (queue.size() > limit) {
          throw Error(ErrorCode::group_too_large, "closure exceeded limit");
        }
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

// ---------------------------------------------------------------------------
// Arithmetic helpers
// ---------------------------------------------------------------------------

bool is_prime(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

unsigned p_adic_valuation(unsigned long long n, unsigned long long p) {
  unsigned v = 0;
  while (n > 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

unsigned long long p_part(unsigned long long n, unsigned long long p) {
  unsigned long long r = 1;
  while (n > 0 && n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

bool is_p_group(const PermutationGroup& g, unsigned p) {
  return p_part(g.order(), p) == g.order();
}

Permutation commutator(const Permutation& a, const Permutation& b) {
  return a.inverse() * b.inverse() * a * b;
}

namespace {

void require_prime(unsigned p) {
  if (!is_prime(p)) throw Error(ErrorCode::not_prime, std::to_string(p) + " is not prime");
}

}  // namespace

// ---------------------------------------------------------------------------
// Subgroup constructions
// ---------------------------------------------------------------------------

PermutationGroup normal_closure(const PermutationGroup& g, std::span<const Permutation> s) {
  std::vector<Permutation> gens;
  for (const auto& x : s) {
    if (!g.contains(x)) {
      throw Error(ErrorCode::not_a_member, x.to_cycle_string() + " is not in the group");
    }
    if (!x.is_identity()) gens.push_back(x);
  }
  PermutationGroup n(g.degree(), gens);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const auto& t : g.generators()) {
      Permutation c = t * gens[i] * t.inverse();
      if (!n.contains(c)) {
        gens.push_back(c);
        n = PermutationGroup(g.degree(), gens);
      }
    }
  }
  return n;
}

PermutationGroup derived_subgroup(const PermutationGroup& g) {
  std::vector<Permutation> comms;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(commutator(gens[i], gens[j]));
  }
  return normal_closure(g, comms);
}

PermutationGroup sylow_subgroup(const PermutationGroup& g, unsigned p) {
  require_prime(p);
  const unsigned long long target = p_part(g.order(), p);
  PermutationGroup sylow = PermutationGroup::trivial(g.degree());
  if (target == 1) return sylow;
  const auto& elems = g.elements();
  std::vector<Permutation> gens;

  // Ascending chain: P is a p-subgroup; while it is not Sylow, p divides
  // [N_G(P):P], so some x in N_G(P) has order mod P divisible by p, and a
  // suitable power of x extends P by a factor p.
  while (sylow.order() < target) {
    bool extended = false;
    for (const auto& x : elems) {
      if (sylow.contains(x)) continue;
      const Permutation xi = x.inverse();
      bool normalizes = std::all_of(gens.begin(), gens.end(), [&](const Permutation& h) {
        return sylow.contains(x * h * xi);
      });
      if (!normalizes) continue;
      std::size_t k = 1;
      Permutation y = x;
      while (!sylow.contains(y)) {
        y = y * x;
        ++k;
      }
      if (k % p != 0) continue;
      gens.push_back(x.pow(static_cast<long long>(k / p)));
      sylow = PermutationGroup(g.degree(), gens);
      extended = true;
      break;
    }
    if (!extended) throw Error(ErrorCode::internal, "Sylow ascent stalled");
  }
  return sylow;
}

PermutationGroup quasi_p_part(const PermutationGroup& g, unsigned p) {
  if (p == 0) return PermutationGroup::trivial(g.degree());
  PermutationGroup sylow = sylow_subgroup(g, p);
  return normal_closure(g, sylow.generators());
}

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

std::size_t GroupHom::coset_of(const Permutation& g) const {
  const auto& elems = source.elements();
  auto it = std::lower_bound(elems.begin(), elems.end(), g);
  if (it == elems.end() || *it != g) {
    throw Error(ErrorCode::not_a_member, g.to_cycle_string() + " is not in the source group");
  }
  return coset_index_[static_cast<std::size_t>(it - elems.begin())];
}

Permutation GroupHom::map(const Permutation& g) const {
  std::vector<Point> img(coset_reps.size());
  for (std::size_t i = 0; i < coset_reps.size(); ++i) {
    img[i] = static_cast<Point>(coset_of(g * coset_reps[i]));
  }
  return Permutation(std::move(img));
}

GroupHom quotient(const PermutationGroup& g, const PermutationGroup& n) {
  if (!n.is_normal_in(g)) {
    throw Error(ErrorCode::not_normal, "subgroup is not normal in the group");
  }
  GroupHom hom;
  hom.source = g;
  hom.kernel = n;
  const auto& elems = g.elements();
  const auto& kernel_elems = n.elements();
  hom.coset_index_.assign(elems.size(), SIZE_MAX);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (hom.coset_index_[i] != SIZE_MAX) continue;
    // elems is sorted and i is the first unassigned index, so elems[i] is
    // the minimal element of its coset.
    const std::size_t id = hom.coset_reps.size();
    hom.coset_reps.push_back(elems[i]);
    for (const auto& k : kernel_elems) {
      Permutation y = elems[i] * k;
      auto it = std::lower_bound(elems.begin(), elems.end(), y);
      hom.coset_index_[static_cast<std::size_t>(it - elems.begin())] = id;
    }
  }
  std::vector<Permutation> image_gens;
  for (const auto& s : g.generators()) image_gens.push_back(hom.map(s));
  hom.image = PermutationGroup(std::max<std::size_t>(1, hom.coset_reps.size()), image_gens);
  return hom;
}

unsigned abelianization_p_rank(const PermutationGroup& g, unsigned p) {
  require_prime(p);
  std::vector<Permutation> rels;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    rels.push_back(gens[i].pow(p));
    for (std::size_t j = i + 1; j < gens.size(); ++j) rels.push_back(commutator(gens[i], gens[j]));
  }
  PermutationGroup frattini_like = normal_closure(g, rels);
  unsigned long long index = g.order() / frattini_like.order();
  unsigned rank = p_adic_valuation(index, p);
  if (p_part(index, p) != index) throw Error(ErrorCode::internal, "index is not a p-power");
  return rank;
}

}  // namespace curvepi
