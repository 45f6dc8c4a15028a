#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvepi/cover.hpp"
#include "curvepi/curve.hpp"
#include "curvepi/perm_group.hpp"

namespace curvepi {

inline constexpr unsigned long long kTupleLimit = 10'000'000;

struct EnumerateOptions {
  unsigned jobs = 1;
  // Witness tuples kept, in tuple order.
  std::size_t witness_limit = 1;
  unsigned long long tuple_limit = kTupleLimit;
  // Stop as soon as witness_limit witnesses are found; the count is then partial.
  bool stop_early = false;
};

struct EnumerationResult {
  unsigned long long tuples = 0;
  unsigned long long connected = 0;
  bool complete = true;
  // Free gluing constants of each witness, in free_constants order.
  std::vector<std::vector<Permutation>> witnesses;
};

// The tree-normalized descriptor with trivial monodromy and the given free
// constants (one per off-tree branch, class/branch order).
CoverDescriptor cover_from_constants(const PermutationGroup& g, const CurveConfiguration& config,
                                     const std::vector<Permutation>& free);

// Counts the tuples of free constants in G^delta whose cover is connected.
// Tuples are ordered lexicographically by group table index, first slot
// most significant.
EnumerationResult enumerate_connected_covers(const PermutationGroup& g, const CurveConfiguration& config,
                                             const EnumerateOptions& opts = {});

struct CensusEntry {
  std::string name;
  unsigned long long order = 0;
  unsigned d = 0;
  // Set when the whole tuple space was enumerated.
  std::optional<unsigned long long> count;
  std::vector<Permutation> witness;
  PermutationGroup group;
};

struct CensusOptions {
  unsigned jobs = 1;
  // Full counts are only computed up to this many tuples.
  unsigned long long count_limit = 1'000'000;
};

// Catalog groups of order <= max_order that occur as Galois groups of
// connected etale covers, in catalog order.
std::vector<CensusEntry> quotient_census(const CurveConfiguration& config, unsigned long long max_order,
                                         const CensusOptions& opts = {});

struct ControlResult {
  std::string name;
  std::string expected;
  std::string observed;
  bool passed = false;
};

struct DescentReport {
  // Every gluing tuple is checked, connected or not.
  unsigned long long covers = 0;
  unsigned long long connected = 0;
  unsigned long long descents = 0;
  unsigned long long glue_checks = 0;
  std::vector<std::string> mismatches;
  std::vector<ControlResult> controls;

  bool ok() const;
};

struct CrossCheckOptions {
  unsigned jobs = 1;
  unsigned long long tuple_limit = 100'000;
  bool controls = true;
};

// Rebuilds the cover of every tuple of free constants from the cover of the
// curve with one class dissolved, by descent and (for two-point classes) by
// gluing followed by induction, and compares canonical keys and
// connectivity. Also runs corrupted-relation controls.
DescentReport cross_check_descent(const PermutationGroup& g, const CurveConfiguration& config,
                                  const CrossCheckOptions& opts = {});

// Configuration with class k dissolved into smooth marked points.
CurveConfiguration dissolve_class(const CurveConfiguration& config, std::size_t k);

}  // namespace curvepi
