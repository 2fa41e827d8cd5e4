#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcc/errors.hpp"
#include "pcc/group.hpp"
#include "pcc/oracle.hpp"
#include "pcc/presentation.hpp"
#include "pcc/word.hpp"

namespace pcc {

/// A built-in presentation with its level function, known group order
/// and, where available, an independent homomorphism oracle.
struct CatalogEntry {
  std::string name;
  FavourableStructure favourable;
  long long known_order = 0;
  std::optional<HomomorphismOracle> oracle;
};

namespace detail {

inline FavourableStructure checked_favourable(const PcPresentation& p,
                                              std::vector<int> levels) {
  FavourableCheck check =
      validate_favourable(p, DeltaFunction(std::move(levels)));
  if (!check.ok())
    throw Error("catalog entry failed favourable validation: " +
                to_string(check.violations.front()));
  return *check.value;
}

}  // namespace detail

/// Derives the relations of a presentation from generator images: every
/// right-hand side is the oracle-determined normal form, looked up in the
/// table of all e_1...e_m normal-word images. Fails if the images do not
/// separate normal words (the map must be a bijection) or if some
/// right-hand side needs a generator of index <= i.
inline CatalogEntry build_from_oracle(const std::string& name,
                                      std::vector<std::string> names,
                                      std::vector<long long> orders,
                                      std::vector<int> delta_levels,
                                      std::vector<OracleElement> images) {
  PcPresentation p(std::move(names), std::move(orders));
  const int m = p.m();
  if (static_cast<int>(images.size()) != m)
    throw PreconditionError("one oracle image per generator required");
  HomomorphismOracle oracle{std::move(images)};

  std::map<std::string, std::vector<long long>> by_image;
  std::vector<long long> exps(static_cast<std::size_t>(m), 0);
  while (true) {
    const std::string key = oracle_key(oracle.image(NormalWord(exps)));
    if (!by_image.emplace(key, exps).second)
      throw Error("oracle images do not separate normal words");
    int i = m - 1;
    while (i >= 0) {
      if (++exps[static_cast<std::size_t>(i)] < p.order(i)) break;
      exps[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }

  auto normal_form_of = [&](const OracleElement& g, int base) {
    const auto it = by_image.find(oracle_key(g));
    if (it == by_image.end())
      throw Error("oracle element has no normal form (images do not generate)");
    std::vector<Run> rs;
    for (int k = 0; k < m; ++k) {
      const long long a = it->second[static_cast<std::size_t>(k)];
      if (a == 0) continue;
      if (k <= base)
        throw Error("oracle-derived relation escapes the higher-index alphabet");
      rs.push_back(Run{k, a});
    }
    return Word(std::move(rs));
  };

  for (int i = 0; i < m; ++i) {
    OracleElement g = oracle.identity_element();
    for (long long t = 0; t < p.order(i); ++t)
      g = compose(g, oracle.images[static_cast<std::size_t>(i)]);
    p.set_power_rhs(i, normal_form_of(g, i));
    for (int j = i + 1; j < m; ++j) {
      const OracleElement conj =
          compose(compose(inverse(oracle.images[static_cast<std::size_t>(i)]),
                          oracle.images[static_cast<std::size_t>(j)]),
                  oracle.images[static_cast<std::size_t>(i)]);
      p.set_conj_rhs(i, j, normal_form_of(conj, i));
    }
  }

  const long long order = p.order_product();
  FavourableStructure f = detail::checked_favourable(p, std::move(delta_levels));
  return CatalogEntry{name, std::move(f), order, std::move(oracle)};
}

namespace detail {

inline CatalogEntry make_cyclic(long long n) {
  PcPresentation p({"a"}, {n});
  std::optional<HomomorphismOracle> oracle;
  if (n >= 2 && n <= Perm::degree) {
    std::vector<int> cycle;
    for (int x = 1; x <= static_cast<int>(n); ++x) cycle.push_back(x);
    oracle = HomomorphismOracle{{OracleElement(Perm::from_cycles({cycle}))}};
  }
  return CatalogEntry{"C" + std::to_string(n), checked_favourable(p, {1}), n,
                      std::move(oracle)};
}

inline CatalogEntry make_c4chain() {
  PcPresentation p({"a", "b"}, {2, 2});
  p.set_power_rhs(0, Word::letter(1));  // a^2 = b
  HomomorphismOracle oracle{
      {OracleElement(Perm::from_cycles({{1, 2, 3, 4}})),
       OracleElement(Perm::from_cycles({{1, 3}, {2, 4}}))}};
  return CatalogEntry{"C4chain", checked_favourable(p, {1, 1}), 4,
                      std::move(oracle)};
}

inline CatalogEntry make_s3() {
  PcPresentation p({"a", "b"}, {2, 3});
  p.set_conj_rhs(0, 1, Word::letter(1, 2));  // b a = a b^2
  HomomorphismOracle oracle{
      {OracleElement(Perm::from_cycles({{1, 2}})),
       OracleElement(Perm::from_cycles({{1, 2, 3}}))}};
  return CatalogEntry{"S3", checked_favourable(p, {1, 2}), 6,
                      std::move(oracle)};
}

inline CatalogEntry make_d8() {
  PcPresentation p({"s", "r", "t"}, {2, 2, 2});
  p.set_power_rhs(1, Word::letter(2));  // r^2 = t
  p.set_conj_rhs(0, 1, concat(Word::letter(1), Word::letter(2)));  // r s = s r t
  p.set_conj_rhs(0, 2, Word::letter(2));  // t s = s t
  p.set_conj_rhs(1, 2, Word::letter(2));  // t r = r t
  HomomorphismOracle oracle{
      {OracleElement(Perm::from_cycles({{1, 3}})),
       OracleElement(Perm::from_cycles({{1, 2, 3, 4}})),
       OracleElement(Perm::from_cycles({{1, 3}, {2, 4}}))}};
  return CatalogEntry{"D8", checked_favourable(p, {1, 2, 2}), 8,
                      std::move(oracle)};
}

inline CatalogEntry make_q8() {
  PcPresentation p({"x", "y", "z"}, {2, 2, 2});
  p.set_power_rhs(0, Word::letter(2));  // x^2 = z
  p.set_power_rhs(1, Word::letter(2));  // y^2 = z
  p.set_conj_rhs(0, 1, concat(Word::letter(1), Word::letter(2)));  // y x = x y z
  p.set_conj_rhs(0, 2, Word::letter(2));  // z x = x z
  p.set_conj_rhs(1, 2, Word::letter(2));  // z y = y z
  HomomorphismOracle oracle{{OracleElement(QuaternionUnit::i()),
                             OracleElement(QuaternionUnit::j()),
                             OracleElement(QuaternionUnit::minus_one())}};
  return CatalogEntry{"Q8", checked_favourable(p, {1, 1, 2}), 8,
                      std::move(oracle)};
}

inline CatalogEntry make_h27() {
  PcPresentation p({"x", "y", "z"}, {3, 3, 3});
  p.set_conj_rhs(0, 1, concat(Word::letter(1), Word::letter(2)));  // y x = x y z
  p.set_conj_rhs(0, 2, Word::letter(2));  // z x = x z
  p.set_conj_rhs(1, 2, Word::letter(2));  // z y = y z
  return CatalogEntry{"H27", checked_favourable(p, {1, 1, 2}), 27,
                      std::nullopt};
}

inline CatalogEntry make_s4() {
  return build_from_oracle(
      "S4", {"a", "b", "c", "d"}, {2, 3, 2, 2}, {1, 2, 3, 3},
      {OracleElement(Perm::from_cycles({{1, 2}})),
       OracleElement(Perm::from_cycles({{1, 2, 3}})),
       OracleElement(Perm::from_cycles({{1, 2}, {3, 4}})),
       OracleElement(Perm::from_cycles({{1, 3}, {2, 4}}))});
}

}  // namespace detail

inline std::vector<std::string> catalog_list() {
  return {"C6", "C4chain", "S3", "D8", "Q8", "H27", "S4"};
}

/// Looks up a built-in entry. Names C<n> with n >= 2 give the cyclic
/// family; the rest are the fixed entries of catalog_list().
inline CatalogEntry catalog_get(const std::string& name) {
  if (name == "C4chain") return detail::make_c4chain();
  if (name == "S3") return detail::make_s3();
  if (name == "D8") return detail::make_d8();
  if (name == "Q8") return detail::make_q8();
  if (name == "H27") return detail::make_h27();
  if (name == "S4") return detail::make_s4();
  if (name.size() >= 2 && name[0] == 'C' &&
      name.find_first_not_of("0123456789", 1) == std::string::npos) {
    long long n = 0;
    try {
      n = std::stoll(name.substr(1));
    } catch (const std::exception&) {
      throw Error("unknown catalog entry '" + name + "'");
    }
    if (n < 2) throw Error("cyclic entries require n >= 2");
    return detail::make_cyclic(n);
  }
  throw Error("unknown catalog entry '" + name + "'");
}

}  // namespace pcc
