#include "curvepi/realizability.hpp"

#include "curvepi/error.hpp"

namespace curvepi {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "Yes";
    case Verdict::no: return "No";
    case Verdict::unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

void require_char(unsigned p) {
  if (p != 0 && !is_prime(p)) throw Error(ErrorCode::not_prime, std::to_string(p) + " is neither 0 nor prime");
}

void require_positive_char(unsigned p) {
  if (!is_prime(p)) throw Error(ErrorCode::not_prime, "the check needs a prime characteristic, got " + std::to_string(p));
}

void require_affine(unsigned r) {
  if (r == 0) throw Error(ErrorCode::invalid_argument, "an affine curve needs at least one point at infinity (r >= 1)");
}

RealizabilityVerdict make(Verdict v, std::string rule) {
  RealizabilityVerdict out;
  out.verdict = v;
  out.rule = std::move(rule);
  return out;
}

void add(RealizabilityVerdict& v, std::string name, long long value) { v.evidence.emplace_back(std::move(name), value); }
void add(RealizabilityVerdict& v, std::string name, std::string value) {
  v.evidence.emplace_back(std::move(name), std::move(value));
}

// Yes iff d <= bound; an upper-bound-only d can still prove Yes.
RealizabilityVerdict rank_test(const MinGenerators& d, long long bound, const std::string& d_name,
                               const std::string& rule) {
  RealizabilityVerdict v;
  v.rule = rule;
  v.randomized = d.upper_bound_only;
  if (static_cast<long long>(d.value) <= bound) {
    v.verdict = Verdict::yes;
  } else if (d.upper_bound_only) {
    v.verdict = Verdict::unknown;
    add(v, "reason", std::string("randomized upper bound for d exceeds the bound"));
  } else {
    v.verdict = Verdict::no;
  }
  add(v, d_name, static_cast<long long>(d.value));
  add(v, "bound", bound);
  return v;
}

void require_projective_connected(const CurveConfiguration& config) {
  require_valid(config);
  if (!config.is_projective()) throw Error(ErrorCode::not_projective, "the configuration has removed points");
  if (!is_connected(config)) throw Error(ErrorCode::not_connected, "the configuration is not connected");
}

struct AffineParams {
  unsigned genus, r, delta;
};

AffineParams affine_params(const CurveConfiguration& config) {
  require_valid(config);
  if (config.components.size() != 1) {
    throw Error(ErrorCode::invalid_argument, "affine and tame modes need an irreducible normalization");
  }
  return {config.components[0].genus, static_cast<unsigned>(config.removed.size()), affine_delta(config)};
}

}  // namespace

RealizabilityVerdict affine_realizable(const PermutationGroup& g, unsigned p, unsigned genus, unsigned r,
                                       unsigned delta, const MinGeneratorsOptions& opts) {
  require_char(p);
  require_affine(r);
  const long long bound = 2LL * genus + r - 1 + delta;
  if (p == 0) {
    auto v = rank_test(min_generators(g, opts), bound, "d", "affine-char0");
    return v;
  }
  auto qp = quasi_p_part(g, p);
  auto q = quotient(g, qp);
  auto v = rank_test(min_generators(q.image, opts), bound, "d_quotient", "affine");
  v.evidence.insert(v.evidence.begin(), {"quotient_order", static_cast<long long>(q.image.order())});
  return v;
}

RealizabilityVerdict projective_realizable(const PermutationGroup& g, unsigned p, const CurveConfiguration& config,
                                           const MinGeneratorsOptions& opts) {
  require_char(p);
  require_projective_connected(config);
  const long long d_free = delta(config);
  const auto d = min_generators(g, opts);
  bool all_rational = true;
  for (const auto& c : config.components) all_rational = all_rational && c.genus == 0;
  if (all_rational) return rank_test(d, d_free, "d", "genus-zero");

  const long long total_genus = config.total_genus();
  const long long rank_bound = 2 * total_genus + d_free;
  if (!d.upper_bound_only && static_cast<long long>(d.value) > rank_bound) {
    auto v = make(Verdict::no, "rank-bound");
    add(v, "d", d.value);
    add(v, "bound", rank_bound);
    return v;
  }
  if (p > 0) {
    const long long sigma = abelianization_p_rank(g, p);
    const long long pro_p = static_cast<long long>(config.total_p_rank()) + d_free;
    if (sigma > pro_p) {
      auto v = make(Verdict::no, "pro-p-rank");
      add(v, "sigma", sigma);
      add(v, "bound", pro_p);
      return v;
    }
    if (sigma > total_genus + d_free) {
      auto v = make(Verdict::no, "hasse-witt");
      add(v, "sigma", sigma);
      add(v, "bound", total_genus + d_free);
      return v;
    }
    if (!d.upper_bound_only && is_p_group(g, p) && static_cast<long long>(d.value) > total_genus + d_free) {
      auto v = make(Verdict::no, "nakajima");
      add(v, "t_G", d.value);
      add(v, "bound", total_genus + d_free);
      return v;
    }
  }
  if (static_cast<long long>(d.value) <= d_free) {
    auto v = make(Verdict::yes, "free-factor");
    v.randomized = d.upper_bound_only;
    add(v, "d", d.value);
    add(v, "bound", d_free);
    return v;
  }
  auto v = make(Verdict::unknown, "undecided");
  v.randomized = d.upper_bound_only;
  add(v, "d", d.value);
  add(v, "delta", d_free);
  add(v, "reason", std::string(p > 0 ? "positive-genus components in characteristic p"
                                     : "surface-group relations are not decided"));
  return v;
}

RealizabilityVerdict hasse_witt_check(const PermutationGroup& g, unsigned p, const CurveConfiguration& config) {
  require_positive_char(p);
  require_projective_connected(config);
  const long long sigma = abelianization_p_rank(g, p);
  const long long bound = static_cast<long long>(config.total_genus()) + delta(config);
  auto v = make(sigma > bound ? Verdict::no : Verdict::unknown, "hasse-witt");
  add(v, "sigma", sigma);
  add(v, "bound", bound);
  return v;
}

RealizabilityVerdict nakajima_check(const PermutationGroup& g, unsigned p, const CurveConfiguration& config,
                                    const MinGeneratorsOptions& opts) {
  require_positive_char(p);
  require_projective_connected(config);
  const long long bound = static_cast<long long>(config.total_genus()) + delta(config);
  auto t = nakajima_tG(g, p, opts);
  if (!t) {
    auto v = make(Verdict::unknown, "nakajima");
    add(v, "t_G", std::string("unknown"));
    add(v, "bound", bound);
    add(v, "reason", std::string("t_G is only supported for p-groups"));
    return v;
  }
  auto v = make(static_cast<long long>(*t) > bound ? Verdict::no : Verdict::unknown, "nakajima");
  add(v, "t_G", static_cast<long long>(*t));
  add(v, "bound", bound);
  return v;
}

RealizabilityVerdict tame_realizable(const PermutationGroup& g, unsigned p, unsigned genus, unsigned r,
                                     unsigned delta, const MinGeneratorsOptions& opts) {
  require_char(p);
  require_affine(r);
  const long long bound = 2LL * genus + r - 1 + delta;
  const auto d = min_generators(g, opts);
  if (p == 0 || g.order() % p != 0) return rank_test(d, bound, "d", "tame");
  RealizabilityVerdict v;
  v.rule = "tame";
  v.randomized = d.upper_bound_only;
  if (!d.upper_bound_only && static_cast<long long>(d.value) > bound) {
    v.verdict = Verdict::no;
    add(v, "d", d.value);
    add(v, "bound", bound);
    return v;
  }
  v.verdict = Verdict::unknown;
  add(v, "d", d.value);
  add(v, "bound", bound);
  add(v, "reason", std::string("p divides the group order"));
  return v;
}

RealizabilityVerdict affine_realizable(const PermutationGroup& g, unsigned p, const CurveConfiguration& config,
                                       const MinGeneratorsOptions& opts) {
  auto a = affine_params(config);
  return affine_realizable(g, p, a.genus, a.r, a.delta, opts);
}

RealizabilityVerdict tame_realizable(const PermutationGroup& g, unsigned p, const CurveConfiguration& config,
                                     const MinGeneratorsOptions& opts) {
  auto a = affine_params(config);
  return tame_realizable(g, p, a.genus, a.r, a.delta, opts);
}

}  // namespace curvepi
