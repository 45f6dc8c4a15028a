#include "curvepi/permutation.hpp"

#include <numeric>
#include <sstream>

#include "curvepi/error.hpp"

namespace curvepi {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  if (!is_bijection(images_)) {
    throw Error(ErrorCode::invalid_argument, "image array is not a bijection");
  }
}

Permutation Permutation::from_one_based(std::span<const long long> images) {
  std::vector<Point> zero(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] < 1 || images[i] > static_cast<long long>(images.size())) {
      throw Error(ErrorCode::invalid_argument,
                  "image " + std::to_string(images[i]) + " out of range 1.." +
                      std::to_string(images.size()));
    }
    zero[i] = static_cast<Point>(images[i] - 1);
  }
  return Permutation(std::move(zero));
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> seen(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point from = cycle[i];
      Point to = cycle[(i + 1) % cycle.size()];
      if (from < 1 || from > degree || seen[from - 1]) {
        throw Error(ErrorCode::invalid_argument, "bad cycle notation");
      }
      seen[from - 1] = true;
      img[from - 1] = to - 1;
    }
  }
  return Permutation(std::move(img));
}

std::vector<long long> Permutation::to_one_based() const {
  std::vector<long long> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = images_[i] + 1;
  return out;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

Permutation Permutation::pow(long long e) const {
  Permutation base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e)
                               : static_cast<unsigned long long>(e);
  Permutation result(degree());
  while (n > 0) {
    if (n & 1ULL) result = result * base;
    base = base * base;
    n >>= 1ULL;
  }
  return result;
}

std::size_t Permutation::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::size_t result = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (Point x = static_cast<Point>(i); !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

Point Permutation::first_moved_point() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return static_cast<Point>(i);
  }
  return static_cast<Point>(images_.size());
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) {
    throw Error(ErrorCode::degree_mismatch, "cannot multiply permutations of degree " +
                                                std::to_string(a.degree()) + " and " +
                                                std::to_string(b.degree()));
  }
  Permutation out;
  out.images_.resize(a.degree());
  for (std::size_t i = 0; i < a.degree(); ++i) out.images_[i] = a.images_[b.images_[i]];
  return out;
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    any = true;
    os << '(';
    Point x = static_cast<Point>(i);
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) os << ' ';
      os << x + 1;
      first = false;
      x = images_[x];
    }
    os << ')';
  }
  if (!any) os << "()";
  return os.str();
}

bool is_bijection(std::span<const Point> images) {
  std::vector<bool> hit(images.size(), false);
  for (Point x : images) {
    if (x >= images.size() || hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace curvepi
