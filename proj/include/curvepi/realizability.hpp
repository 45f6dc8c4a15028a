#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "curvepi/curve.hpp"
#include "curvepi/group_lattice.hpp"
#include "curvepi/perm_group.hpp"

namespace curvepi {

enum class Verdict { yes, no, unknown };

std::string_view verdict_name(Verdict v);

struct RealizabilityVerdict {
  Verdict verdict = Verdict::unknown;
  // Instantiated inequality: named values in a fixed order.
  std::vector<std::pair<std::string, std::variant<long long, std::string>>> evidence;
  std::string rule;
  // True when a randomized d(G) upper bound entered the decision.
  bool randomized = false;
};

// G is the Galois group of a connected etale cover of an affine curve with
// normalization of genus g, r points at infinity and invariant delta iff
// G/p(G) has at most 2g + r - 1 + delta generators.
RealizabilityVerdict affine_realizable(const PermutationGroup& g, unsigned p, unsigned genus, unsigned r,
                                       unsigned delta, const MinGeneratorsOptions& opts = {});

RealizabilityVerdict projective_realizable(const PermutationGroup& g, unsigned p, const CurveConfiguration& config,
                                           const MinGeneratorsOptions& opts = {});

// Necessary conditions only: never Yes.
RealizabilityVerdict hasse_witt_check(const PermutationGroup& g, unsigned p, const CurveConfiguration& config);
RealizabilityVerdict nakajima_check(const PermutationGroup& g, unsigned p, const CurveConfiguration& config,
                                    const MinGeneratorsOptions& opts = {});

RealizabilityVerdict tame_realizable(const PermutationGroup& g, unsigned p, unsigned genus, unsigned r,
                                     unsigned delta, const MinGeneratorsOptions& opts = {});

// Affine and tame questions for a configuration with one component and at
// least one removed point: g, r and delta are read off the configuration.
RealizabilityVerdict affine_realizable(const PermutationGroup& g, unsigned p, const CurveConfiguration& config,
                                       const MinGeneratorsOptions& opts = {});
RealizabilityVerdict tame_realizable(const PermutationGroup& g, unsigned p, const CurveConfiguration& config,
                                     const MinGeneratorsOptions& opts = {});

}  // namespace curvepi
