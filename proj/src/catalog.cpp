#include "curvepi/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "json.hpp"

#include "curvepi/error.hpp"

namespace curvepi {

namespace builders {

namespace {

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

}  // namespace

PermutationGroup cyclic(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "cyclic group of order 0");
  if (n == 1) return PermutationGroup::trivial(1);
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>((i + 1) % n);
  return PermutationGroup(n, {Permutation(img)});
}

PermutationGroup dihedral(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "dihedral group of order 0");
  if (n == 1) return cyclic(2);
  if (n == 2) return elementary_abelian(2, 2);
  std::vector<Point> rot(n), refl(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot[i] = static_cast<Point>((i + 1) % n);
    refl[i] = static_cast<Point>((n - i) % n);
  }
  return PermutationGroup(n, {Permutation(rot), Permutation(refl)});
}

PermutationGroup symmetric(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "symmetric group on 0 points");
  if (n == 1) return PermutationGroup::trivial(1);
  std::vector<Point> cyc(n);
  for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<Point>((i + 1) % n);
  std::vector<Point> tr(n);
  for (std::size_t i = 0; i < n; ++i) tr[i] = static_cast<Point>(i);
  std::swap(tr[0], tr[1]);
  if (n == 2) return PermutationGroup(2, {Permutation(tr)});
  return PermutationGroup(n, {Permutation(cyc), Permutation(tr)});
}

PermutationGroup alternating(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "alternating group on 0 points");
  if (n < 3) return PermutationGroup::trivial(n);
  // The 3-cycles (1 2 k) generate A_n.
  std::vector<Permutation> gens;
  for (Point k = 3; k <= n; ++k) gens.push_back(Permutation::from_cycles(n, {{1, 2, k}}));
  return PermutationGroup(n, std::move(gens));
}

PermutationGroup elementary_abelian(std::size_t p, std::size_t rank) {
  if (rank == 0) return PermutationGroup::trivial(1);
  PermutationGroup g = cyclic(p);
  for (std::size_t i = 1; i < rank; ++i) g = direct_product(g, cyclic(p));
  return g;
}

PermutationGroup direct_product(const PermutationGroup& a, const PermutationGroup& b) {
  const std::size_t da = a.degree(), db = b.degree();
  std::vector<Permutation> gens;
  for (const auto& g : a.generators()) {
    std::vector<Point> img(da + db);
    for (std::size_t i = 0; i < da; ++i) img[i] = g(static_cast<Point>(i));
    for (std::size_t i = 0; i < db; ++i) img[da + i] = static_cast<Point>(da + i);
    gens.emplace_back(img);
  }
  for (const auto& g : b.generators()) {
    std::vector<Point> img(da + db);
    for (std::size_t i = 0; i < da; ++i) img[i] = static_cast<Point>(i);
    for (std::size_t i = 0; i < db; ++i) img[da + i] = static_cast<Point>(da + g(static_cast<Point>(i)));
    gens.emplace_back(img);
  }
  return PermutationGroup(da + db, std::move(gens));
}

PermutationGroup regular(std::size_t n, const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                         const std::vector<std::size_t>& generators) {
  std::vector<Permutation> gens;
  for (auto g : generators) {
    std::vector<Point> img(n);
    for (std::size_t x = 0; x < n; ++x) img[x] = static_cast<Point>(mul(g, x));
    gens.emplace_back(std::move(img));
  }
  PermutationGroup group(n, std::move(gens));
  if (group.order() != n) {
    throw Error(ErrorCode::invalid_argument, "regular construction does not define a group of order " +
                                                 std::to_string(n));
  }
  return group;
}

PermutationGroup metacyclic(std::size_t m, std::size_t n, std::size_t r, std::size_t s) {
  // Normal form a^i b^j encoded as i + m*j.
  std::vector<long long> rpow(n + 1, 1);
  for (std::size_t j = 1; j <= n; ++j) rpow[j] = rpow[j - 1] * static_cast<long long>(r) % static_cast<long long>(m);
  if (rpow[n] % static_cast<long long>(m) != 1 % static_cast<long long>(m) ||
      (static_cast<long long>(s) * (static_cast<long long>(r) - 1)) % static_cast<long long>(m) != 0) {
    throw Error(ErrorCode::invalid_argument, "inconsistent metacyclic parameters");
  }
  auto mul = [=](std::size_t x, std::size_t y) {
    const long long mm = static_cast<long long>(m);
    long long i = static_cast<long long>(x % m), j = static_cast<long long>(x / m);
    long long k = static_cast<long long>(y % m), l = static_cast<long long>(y / m);
    long long a = i + k * rpow[static_cast<std::size_t>(j)];
    long long b = j + l;
    if (b >= static_cast<long long>(n)) {
      b -= static_cast<long long>(n);
      a += static_cast<long long>(s);
    }
    return static_cast<std::size_t>(mod(a, mm) + mm * b);
  };
  std::vector<std::size_t> gens;
  if (m > 1) gens.push_back(1);
  if (n > 1) gens.push_back(m);
  return regular(m * n, mul, gens);
}

PermutationGroup abelian_by_cyclic(const std::vector<std::size_t>& moduli,
                                   const std::vector<long long>& action, std::size_t k) {
  const std::size_t d = moduli.size();
  std::size_t nsize = 1;
  for (auto m : moduli) nsize *= m;
  auto decode = [&](std::size_t v) {
    std::vector<long long> out(d);
    for (std::size_t i = 0; i < d; ++i) {
      out[i] = static_cast<long long>(v % moduli[i]);
      v /= moduli[i];
    }
    return out;
  };
  auto encode = [&](const std::vector<long long>& v) {
    std::size_t code = 0, scale = 1;
    for (std::size_t i = 0; i < d; ++i) {
      code += static_cast<std::size_t>(mod(v[i], static_cast<long long>(moduli[i]))) * scale;
      scale *= moduli[i];
    }
    return code;
  };
  // phi_pow[t][v] = action^t applied to v.
  std::vector<std::vector<std::size_t>> phi_pow(k, std::vector<std::size_t>(nsize));
  for (std::size_t v = 0; v < nsize; ++v) phi_pow[0][v] = v;
  for (std::size_t t = 1; t < k; ++t) {
    for (std::size_t v = 0; v < nsize; ++v) {
      auto x = decode(phi_pow[t - 1][v]);
      std::vector<long long> y(d, 0);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) y[r] += action[r * d + c] * x[c];
      }
      phi_pow[t][v] = encode(y);
    }
  }
  auto add = [&](std::size_t a, std::size_t b) {
    auto x = decode(a), y = decode(b);
    for (std::size_t i = 0; i < d; ++i) x[i] += y[i];
    return encode(x);
  };
  auto mul = [&](std::size_t x, std::size_t y) {
    std::size_t v1 = x % nsize, t1 = x / nsize, v2 = y % nsize, t2 = y / nsize;
    return add(v1, phi_pow[t1][v2]) + nsize * ((t1 + t2) % k);
  };
  std::vector<std::size_t> gens;
  std::size_t scale = 1;
  for (std::size_t i = 0; i < d; ++i) {
    gens.push_back(scale);
    scale *= moduli[i];
  }
  if (k > 1) gens.push_back(nsize);
  return regular(nsize * k, mul, gens);
}

PermutationGroup monomial(std::size_t m, std::size_t dim, const std::vector<MonomialMatrix>& gens) {
  std::vector<Permutation> perms;
  for (const auto& g : gens) {
    std::vector<Point> img(m * dim);
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t a = 0; a < m; ++a) {
        img[j * m + a] = static_cast<Point>(g.target[j] * m + (a + g.exponent[j]) % m);
      }
    }
    perms.emplace_back(std::move(img));
  }
  return PermutationGroup(m * dim, std::move(perms));
}

PermutationGroup linear_on_vectors(std::size_t p, std::size_t dim,
                                   const std::vector<std::vector<long long>>& matrices) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= p;
  // Nonzero vectors are codes 1..total-1, relabeled to points 0..total-2.
  auto decode = [&](std::size_t code) {
    std::vector<long long> v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      v[i] = static_cast<long long>(code % p);
      code /= p;
    }
    return v;
  };
  std::vector<Permutation> perms;
  for (const auto& mat : matrices) {
    std::vector<Point> img(total - 1);
    for (std::size_t code = 1; code < total; ++code) {
      auto v = decode(code);
      std::size_t out = 0, scale = 1;
      for (std::size_t r = 0; r < dim; ++r) {
        long long acc = 0;
        for (std::size_t c = 0; c < dim; ++c) acc += mat[r * dim + c] * v[c];
        out += static_cast<std::size_t>(mod(acc, static_cast<long long>(p))) * scale;
        scale *= p;
      }
      img[code - 1] = static_cast<Point>(out - 1);
    }
    perms.emplace_back(std::move(img));
  }
  return PermutationGroup(total - 1, std::move(perms));
}

}  // namespace builders

namespace {

using namespace builders;

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  auto add = [&](std::string name, std::vector<std::string> aliases, PermutationGroup g) {
    c.push_back({std::move(name), std::move(aliases), std::move(g)});
  };
  auto C = [](std::size_t n) { return cyclic(n); };
  auto x = [](const PermutationGroup& a, const PermutationGroup& b) { return direct_product(a, b); };
  const auto S3 = symmetric(3);
  const auto A4 = alternating(4);
  const auto Q8 = metacyclic(4, 2, 3, 2);
  const auto Dic3 = metacyclic(3, 4, 2, 0);

  add("C1", {"1", "trivial"}, C(1));
  add("C2", {}, C(2));
  add("C3", {}, C(3));
  add("C4", {}, C(4));
  add("C2^2", {"C2xC2", "V4", "D2"}, elementary_abelian(2, 2));
  add("C5", {}, C(5));
  add("C6", {}, C(6));
  add("S3", {"D3"}, S3);
  add("C7", {}, C(7));
  add("C8", {}, C(8));
  add("C4xC2", {"C2xC4"}, x(C(4), C(2)));
  add("C2^3", {"C2xC2xC2"}, elementary_abelian(2, 3));
  add("D4", {}, dihedral(4));
  add("Q8", {}, Q8);
  add("C9", {}, C(9));
  add("C3^2", {"C3xC3"}, elementary_abelian(3, 2));
  add("C10", {}, C(10));
  add("D5", {}, dihedral(5));
  add("C11", {}, C(11));
  add("C12", {}, C(12));
  add("C6xC2", {"C2xC6"}, x(C(6), C(2)));
  add("D6", {}, dihedral(6));
  add("A4", {}, A4);
  add("Dic3", {"C3:C4"}, Dic3);
  add("C13", {}, C(13));
  add("C14", {}, C(14));
  add("D7", {}, dihedral(7));
  add("C15", {}, C(15));
  add("C16", {}, C(16));
  add("C4^2", {"C4xC4"}, x(C(4), C(4)));
  add("C2^2:C4", {}, abelian_by_cyclic({2, 2}, {0, 1, 1, 0}, 4));
  add("C4:C4", {}, metacyclic(4, 4, 3, 0));
  add("C8xC2", {"C2xC8"}, x(C(8), C(2)));
  add("M16", {}, metacyclic(8, 2, 5, 0));
  add("D8", {}, dihedral(8));
  add("SD16", {}, metacyclic(8, 2, 3, 0));
  add("Q16", {}, metacyclic(8, 2, 7, 4));
  add("C4xC2^2", {"C4xC2xC2"}, x(C(4), elementary_abelian(2, 2)));
  add("D4xC2", {"C2xD4"}, x(dihedral(4), C(2)));
  add("Q8xC2", {"C2xQ8"}, x(Q8, C(2)));
  add("C4oD4", {"Pauli"},
      monomial(4, 2, {{{1, 0}, {0, 0}}, {{0, 1}, {0, 2}}, {{0, 1}, {1, 1}}}));
  add("C2^4", {"C2xC2xC2xC2"}, elementary_abelian(2, 4));
  add("C17", {}, C(17));
  add("D9", {}, dihedral(9));
  add("C18", {}, C(18));
  add("C3xS3", {"S3xC3"}, x(C(3), S3));
  add("C3^2:C2", {}, abelian_by_cyclic({3, 3}, {-1, 0, 0, -1}, 2));
  add("C6xC3", {"C3xC6"}, x(C(6), C(3)));
  add("C19", {}, C(19));
  add("Dic5", {"C5:C4"}, metacyclic(5, 4, 4, 0));
  add("C20", {}, C(20));
  add("F20", {"F5", "AGL(1,5)"}, metacyclic(5, 4, 2, 0));
  add("D10", {}, dihedral(10));
  add("C10xC2", {"C2xC10"}, x(C(10), C(2)));
  add("C7:C3", {}, metacyclic(7, 3, 2, 0));
  add("C21", {}, C(21));
  add("D11", {}, dihedral(11));
  add("C22", {}, C(22));
  add("C23", {}, C(23));
  add("C3:C8", {}, metacyclic(3, 8, 2, 0));
  add("C24", {}, C(24));
  add("SL(2,3)", {"SL2_3"}, linear_on_vectors(3, 2, {{1, 1, 0, 1}, {1, 0, 1, 1}}));
  add("Dic6", {"C3:Q8"}, metacyclic(12, 2, 11, 6));
  add("C4xS3", {"S3xC4"}, x(C(4), S3));
  add("D12", {}, dihedral(12));
  add("C2xDic3", {"Dic3xC2"}, x(C(2), Dic3));
  add("C3:D4", {}, abelian_by_cyclic({6, 2}, {-1, 3, 0, 1}, 2));
  add("C12xC2", {"C2xC12"}, x(C(12), C(2)));
  add("C3xD4", {"D4xC3"}, x(C(3), dihedral(4)));
  add("C3xQ8", {"Q8xC3"}, x(C(3), Q8));
  add("S4", {}, symmetric(4));
  add("C2xA4", {"A4xC2"}, x(C(2), A4));
  add("C2^2xS3", {"S3xC2^2", "C2xD6"}, x(elementary_abelian(2, 2), S3));
  add("C6xC2^2", {"C2^2xC6", "C2xC2xC6"}, x(C(6), elementary_abelian(2, 2)));
  add("A5", {}, alternating(5));
  return c;
}

std::vector<CatalogEntry> entries_from_json(const nlohmann::json& doc) {
  std::vector<CatalogEntry> out;
  const auto& groups = doc.at("groups");
  for (const auto& item : groups) {
    CatalogEntry e;
    e.name = item.at("name").get<std::string>();
    if (item.contains("aliases")) e.aliases = item.at("aliases").get<std::vector<std::string>>();
    auto degree = item.at("degree").get<std::size_t>();
    std::vector<Permutation> gens;
    for (const auto& g : item.at("generators")) {
      auto imgs = g.get<std::vector<long long>>();
      if (imgs.size() != degree) {
        throw Error(ErrorCode::degree_mismatch, "catalog entry " + e.name + " has a generator of wrong degree");
      }
      gens.push_back(Permutation::from_one_based(imgs));
    }
    e.group = PermutationGroup(degree, std::move(gens));
    out.push_back(std::move(e));
  }
  return out;
}

bool names_match(const CatalogEntry& e, std::string_view name) {
  if (e.name == name) return true;
  for (const auto& a : e.aliases) {
    if (a == name) return true;
  }
  return false;
}

std::optional<std::size_t> parse_count(std::string_view s) {
  if (s.empty() || s.size() > 6) return std::nullopt;
  std::size_t v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(ch - '0');
  }
  return v;
}

std::optional<PermutationGroup> family_group(std::string_view name) {
  if (name.size() < 2) return std::nullopt;
  const char head = name[0];
  std::string_view rest = name.substr(1);
  std::size_t caret = rest.find('^');
  if (head == 'C' && caret != std::string_view::npos) {
    auto base = parse_count(rest.substr(0, caret));
    auto rank = parse_count(rest.substr(caret + 1));
    if (!base || !rank || *base == 0 || *rank > 8) return std::nullopt;
    PermutationGroup g = builders::cyclic(*base);
    for (std::size_t i = 1; i < *rank; ++i) g = builders::direct_product(g, builders::cyclic(*base));
    return *rank == 0 ? PermutationGroup::trivial(1) : g;
  }
  auto n = parse_count(rest);
  if (!n || *n == 0) return std::nullopt;
  switch (head) {
    case 'C':
      return builders::cyclic(*n);
    case 'D':
      return builders::dihedral(*n);
    case 'S':
      if (*n > 12) return std::nullopt;
      return builders::symmetric(*n);
    case 'A':
      if (*n > 12) return std::nullopt;
      return builders::alternating(*n);
    default:
      return std::nullopt;
  }
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    if (const char* path = std::getenv("PI1_CATALOG_PATH"); path != nullptr && *path != '\0') {
      return load_catalog_file(path);
    }
    return builtin_catalog();
  }();
  return entries;
}

std::vector<CatalogEntry> load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open catalog " + path);
  try {
    return entries_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, "catalog " + path + ": " + e.what());
  }
}

std::string catalog_to_json(const std::vector<CatalogEntry>& entries) {
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json item;
    item["name"] = e.name;
    item["aliases"] = e.aliases;
    item["order"] = e.group.order();
    item["degree"] = e.group.degree();
    nlohmann::ordered_json gens = nlohmann::ordered_json::array();
    for (const auto& g : e.group.generators()) gens.push_back(g.to_one_based());
    item["generators"] = std::move(gens);
    groups.push_back(std::move(item));
  }
  nlohmann::ordered_json doc;
  doc["groups"] = std::move(groups);
  return doc.dump(1) + "\n";
}

std::optional<PermutationGroup> catalog_lookup(std::string_view name) {
  for (const auto& e : catalog()) {
    if (names_match(e, name)) return e.group;
  }
  return std::nullopt;
}

PermutationGroup group_by_name(std::string_view name) {
  if (auto g = catalog_lookup(name)) return *g;
  if (auto g = family_group(name)) return *g;
  // Direct products, split at the first 'x' whose both sides resolve.
  for (std::size_t pos = name.find('x'); pos != std::string_view::npos; pos = name.find('x', pos + 1)) {
    try {
      auto left = group_by_name(name.substr(0, pos));
      auto right = group_by_name(name.substr(pos + 1));
      return builders::direct_product(left, right);
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::unknown_group, "unknown group name '" + std::string(name) + "'");
}

}  // namespace curvepi
