#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace curvepi {

using Point = std::uint32_t;

// A bijection of {0, .., degree-1}. Externally (files, CLI) points are
// 1-indexed; the conversion happens in from_one_based / to_one_based.
//
// Products compose right to left: (a * b)(x) == a(b(x)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree) { return Permutation(degree); }
  static Permutation from_one_based(std::span<const long long> images);
  // Disjoint cycles on 1-indexed points, e.g. {{1,2,3},{4,5}}.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  Point operator[](Point x) const { return images_[x]; }
  const std::vector<Point>& images() const noexcept { return images_; }
  std::vector<long long> to_one_based() const;

  bool is_identity() const noexcept;
  Permutation inverse() const;
  Permutation pow(long long e) const;
  std::size_t order() const;
  // Smallest point moved, or degree() when this is the identity.
  Point first_moved_point() const noexcept;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  std::string to_cycle_string() const;

 private:
  std::vector<Point> images_;
};

// True when `images` is a bijection of {0..n-1}.
bool is_bijection(std::span<const Point> images);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace curvepi
