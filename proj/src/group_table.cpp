#include "curvepi/group_table.hpp"

#include <bit>

#include "curvepi/error.hpp"

namespace curvepi {

std::size_t Subset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Subset::is_subset_of(const Subset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

std::vector<Elem> Subset::members() const {
  std::vector<Elem> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      int b = std::countr_zero(bits);
      out.push_back(static_cast<Elem>(w * 64 + static_cast<std::size_t>(b)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t Subset::Hash::operator()(const Subset& s) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (auto w : s.words_) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
  return h;
}

GroupTable::GroupTable(std::vector<Permutation> sorted_elements)
    : elements_(std::move(sorted_elements)) {
  const std::size_t n = elements_.size();
  if (n == 0 || !elements_[0].is_identity()) {
    throw Error(ErrorCode::internal, "group table needs the identity first");
  }
  if (n > 65536) throw Error(ErrorCode::group_too_large, "table too large");
  index_.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) index_.emplace(elements_[i], static_cast<Elem>(i));
  mul_.resize(n * n);
  inv_.resize(n);
  order_.resize(n);
  const std::size_t deg = elements_[0].degree();
  std::vector<Point> buf(deg);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& ia = elements_[a].images();
    for (std::size_t b = 0; b < n; ++b) {
      const auto& ib = elements_[b].images();
      for (std::size_t x = 0; x < deg; ++x) buf[x] = ia[ib[x]];
      auto it = index_.find(Permutation(buf));
      if (it == index_.end()) throw Error(ErrorCode::internal, "element list not closed");
      mul_[a * n + b] = it->second;
      if (it->second == 0) inv_[a] = static_cast<Elem>(b);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t k = 1;
    Elem x = static_cast<Elem>(a);
    while (x != 0) {
      x = mul(x, static_cast<Elem>(a));
      ++k;
    }
    order_[a] = k;
  }
}

Elem GroupTable::pow(Elem a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Elem r = identity();
  Elem b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::optional<Elem> GroupTable::find(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Elem GroupTable::index_of(const Permutation& p) const {
  auto found = find(p);
  if (!found) {
    throw Error(ErrorCode::not_a_member, p.to_cycle_string() + " is not a group element");
  }
  return *found;
}

Subset GroupTable::closure(std::span<const Elem> gens) const {
  Subset s(size());
  std::vector<Elem> queue{identity()};
  s.set(identity());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Elem g : gens) {
      Elem y = mul(queue[i], g);
      if (!s.test(y)) {
        s.set(y);
        queue.push_back(y);
      }
    }
  }
  return s;
}

bool GroupTable::generates_all(std::span<const Elem> gens) const {
  return closure(gens).count() == size();
}

Subset GroupTable::full() const {
  Subset s(size());
  for (std::size_t i = 0; i < size(); ++i) s.set(static_cast<Elem>(i));
  return s;
}

}  // namespace curvepi
