#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcc/errors.hpp"
#include "pcc/word.hpp"

namespace pcc {

namespace detail {

inline long long checked_mul(long long a, long long b) {
  long long out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw Error("integer overflow in bound computation");
  return out;
}

inline long long checked_pow(long long base, long long exp) {
  long long out = 1;
  for (long long k = 0; k < exp; ++k) out = checked_mul(out, base);
  return out;
}

/// True iff the word is normal with respect to the given relative orders:
/// strictly increasing generator indices across runs and every run
/// exponent below the generator's order.
inline bool word_is_normal(const Word& w, const std::vector<long long>& orders) {
  int prev = -1;
  for (const Run& r : w.runs()) {
    if (r.gen <= prev) return false;
    if (r.gen < 0 || r.gen >= static_cast<int>(orders.size())) return false;
    if (r.exp >= orders[static_cast<std::size_t>(r.gen)]) return false;
    prev = r.gen;
  }
  return true;
}

}  // namespace detail

/// A finite polycyclic presentation: generators a_1..a_m with relative
/// orders e_i, power relations a_i^{e_i} = v_ii and conjugate relations
/// a_j a_i = a_i v_ij for i < j. Right-hand sides live over generators of
/// strictly higher index; that and normality are checked by
/// validate_structure, not enforced on construction, so invalid states
/// are representable and reportable.
///
/// Values are immutable after construction (the set_* calls are for
/// builders); all operations on presentations are pure functions.
class PcPresentation {
 public:
  PcPresentation(std::vector<std::string> names, std::vector<long long> orders)
      : names_(std::move(names)), orders_(std::move(orders)) {
    if (orders_.empty()) throw PreconditionError("presentation needs m >= 1");
    if (names_.size() != orders_.size())
      throw PreconditionError("names/orders size mismatch");
    const int m = static_cast<int>(orders_.size());
    power_rhs_.assign(static_cast<std::size_t>(m), Word());
    conj_rhs_.assign(static_cast<std::size_t>(m),
                     std::vector<Word>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        conj_rhs_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            Word::letter(j);  // commuting default a_j a_i = a_i a_j
  }

  static std::vector<std::string> default_names(int m) {
    std::vector<std::string> out;
    for (int i = 1; i <= m; ++i) out.push_back("g" + std::to_string(i));
    return out;
  }

  int m() const { return static_cast<int>(orders_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const {
    return names_.at(static_cast<std::size_t>(i));
  }
  const std::vector<long long>& orders() const { return orders_; }
  long long order(int i) const {
    return orders_.at(static_cast<std::size_t>(i));
  }

  const Word& power_rhs(int i) const {
    if (!(0 <= i && i < m()))
      throw PreconditionError("power_rhs requires 0 <= i < m");
    return power_rhs_[static_cast<std::size_t>(i)];
  }
  const Word& conj_rhs(int i, int j) const {
    if (!(0 <= i && i < j && j < m()))
      throw PreconditionError("conj_rhs requires 0 <= i < j < m");
    return conj_rhs_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  void set_power_rhs(int i, Word w) {
    if (!(0 <= i && i < m()))
      throw PreconditionError("set_power_rhs requires 0 <= i < m");
    power_rhs_[static_cast<std::size_t>(i)] = std::move(w);
  }
  void set_conj_rhs(int i, int j, Word w) {
    if (!(0 <= i && i < j && j < m()))
      throw PreconditionError("set_conj_rhs requires 0 <= i < j < m");
    conj_rhs_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
        std::move(w);
  }

  bool is_default_power(int i) const { return power_rhs(i).empty(); }
  bool is_default_conj(int i, int j) const {
    return conj_rhs(i, j) == Word::letter(j);
  }

  /// e_1 * ... * e_m; the group order for consistent presentations.
  long long order_product() const {
    long long n = 1;
    for (long long e : orders_) n = detail::checked_mul(n, e);
    return n;
  }

  bool operator==(const PcPresentation&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<long long> orders_;
  std::vector<Word> power_rhs_;
  std::vector<std::vector<Word>> conj_rhs_;
};

struct Violation {
  std::string relation;  // e.g. "orders", "pow 2", "conj 3 1" (1-based)
  std::string clause;    // e.g. "sub-alphabet", "RHS not normal"
  std::string detail;

  bool operator==(const Violation&) const = default;
};

inline std::string to_string(const Violation& v) {
  return v.relation + ": " + v.clause + ": " + v.detail;
}

/// Checks the structural invariants: every e_i >= 2, every right-hand
/// side a normal word over generators of strictly higher index. Empty
/// result means the presentation is valid.
inline std::vector<Violation> validate_structure(const PcPresentation& p) {
  std::vector<Violation> out;
  const int m = p.m();

  for (int i = 0; i < m; ++i)
    if (p.order(i) < 2)
      out.push_back({"orders", "relative order below 2",
                     "e_" + std::to_string(i + 1) + " = " +
                         std::to_string(p.order(i))});

  auto check_rhs = [&](const std::string& rel, const Word& w, int base) {
    for (const Run& r : w.runs()) {
      if (r.gen < 0 || r.gen >= m) {
        out.push_back({rel, "generator out of range",
                       "index " + std::to_string(r.gen + 1)});
        return;
      }
      if (r.gen <= base)
        out.push_back({rel, "sub-alphabet",
                       "generator " + p.name(r.gen) +
                           " not above index " + std::to_string(base + 1)});
    }
    if (!detail::word_is_normal(w, p.orders()))
      out.push_back({rel, "RHS not normal", render_word(w, p.names())});
  };

  for (int i = 0; i < m; ++i)
    check_rhs("pow " + std::to_string(i + 1), p.power_rhs(i), i);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      check_rhs("conj " + std::to_string(j + 1) + " " + std::to_string(i + 1),
                p.conj_rhs(i, j), i);
  return out;
}

/// The level function delta: non-decreasing, surjective onto {1..d}.
/// Instances always satisfy the shape invariants; use validate() to test
/// a raw level vector first.
class DeltaFunction {
 public:
  explicit DeltaFunction(std::vector<int> levels) : levels_(std::move(levels)) {
    if (!validate(levels_).empty())
      throw PreconditionError("invalid delta level vector");
  }

  static std::vector<Violation> validate(const std::vector<int>& levels) {
    std::vector<Violation> out;
    if (levels.empty()) {
      out.push_back({"delta", "empty", "no levels given"});
      return out;
    }
    if (levels.front() != 1)
      out.push_back({"delta", "first level must be 1",
                     "got " + std::to_string(levels.front())});
    for (std::size_t i = 1; i < levels.size(); ++i) {
      const int step = levels[i] - levels[i - 1];
      if (step < 0)
        out.push_back({"delta", "not non-decreasing",
                       "level drops at position " + std::to_string(i + 1)});
      else if (step > 1)
        out.push_back({"delta", "not surjective",
                       "level skips at position " + std::to_string(i + 1)});
    }
    return out;
  }

  int size() const { return static_cast<int>(levels_.size()); }
  int level(int i) const { return levels_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& levels() const { return levels_; }
  int d() const { return levels_.back(); }

  bool operator==(const DeltaFunction&) const = default;

 private:
  std::vector<int> levels_;
};

/// A presentation together with a validated level function, its soluble
/// bound d and maximum normal word length N.
struct FavourableStructure {
  PcPresentation presentation;
  DeltaFunction delta;
  int d;
  long long n_max;

  bool operator==(const FavourableStructure&) const = default;
};

struct FavourableCheck {
  std::optional<FavourableStructure> value;
  std::vector<Violation> violations;

  bool ok() const { return value.has_value(); }
};

/// N = sum of (e_i - 1): the maximum letter length of a normal word.
inline long long max_normal_length(const PcPresentation& p) {
  long long n = 0;
  for (long long e : p.orders()) n += e - 1;
  return n;
}

/// Checks the favourable conditions for a given delta:
///   - v_ii is the single letter a_{i+1}, or every generator occurring in
///     it has level strictly above level(a_i) (empty RHS passes);
///   - for i < j, the tail of v_ij (v_ij minus one leading a_j letter if
///     present) has all its generators strictly above level(a_i).
/// Structure violations, if any, are reported instead.
inline FavourableCheck validate_favourable(const PcPresentation& p,
                                           const DeltaFunction& delta) {
  FavourableCheck out;
  out.violations = validate_structure(p);
  if (!out.violations.empty()) return out;
  const int m = p.m();
  if (delta.size() != m) {
    out.violations.push_back(
        {"delta", "size mismatch",
         "expected " + std::to_string(m) + " levels, got " +
             std::to_string(delta.size())});
    return out;
  }

  auto require_above = [&](const std::string& rel, const Word& tail, int i) {
    for (const Run& r : tail.runs())
      if (delta.level(r.gen) <= delta.level(i))
        out.violations.push_back(
            {rel, "tail level",
             "generator " + p.name(r.gen) + " has level " +
                 std::to_string(delta.level(r.gen)) + ", requires > " +
                 std::to_string(delta.level(i))});
  };

  for (int i = 0; i < m; ++i) {
    const Word& v = p.power_rhs(i);
    if (v.empty()) continue;
    if (v == Word::letter(i + 1)) continue;  // the "v_ii is a_{i+1}" branch
    require_above("pow " + std::to_string(i + 1), v, i);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Word& v = p.conj_rhs(i, j);
      Word tail = v;
      if (!v.empty() && v.runs().front().gen == j) {
        // Strip one leading a_j: the weaker of the two admissible shapes.
        std::vector<Run> rs = v.runs();
        rs.front().exp -= 1;
        tail = Word(std::move(rs));
      }
      require_above(
          "conj " + std::to_string(j + 1) + " " + std::to_string(i + 1), tail,
          i);
    }
  }
  if (!out.violations.empty()) return out;
  out.value = FavourableStructure{p, delta, delta.d(), max_normal_length(p)};
  return out;
}

/// Searches for a delta accepted by validate_favourable. Deltas are in
/// bijection with partitions of the ordered generator list into d
/// consecutive blocks; the search is exhaustive over those, returning the
/// minimal-d witness, ties broken by lexicographically smallest level
/// vector. The per-candidate test runs against level constraints
/// extracted once from the relations.
inline std::optional<DeltaFunction> infer_delta(const PcPresentation& p) {
  if (!validate_structure(p).empty())
    throw PreconditionError("infer_delta requires a structurally valid presentation");
  const int m = p.m();

  // For each i: generators whose level must exceed level(i).
  std::vector<std::vector<int>> conj_req(static_cast<std::size_t>(m));
  std::vector<std::vector<int>> pow_req(static_cast<std::size_t>(m));
  std::vector<bool> pow_free(static_cast<std::size_t>(m), false);
  for (int i = 0; i < m; ++i) {
    const Word& v = p.power_rhs(i);
    if (v.empty() || v == Word::letter(i + 1)) {
      pow_free[static_cast<std::size_t>(i)] = true;
    } else {
      for (const Run& r : v.runs())
        pow_req[static_cast<std::size_t>(i)].push_back(r.gen);
    }
    for (int j = i + 1; j < m; ++j) {
      const Word& w = p.conj_rhs(i, j);
      bool first = true;
      for (const Run& r : w.runs()) {
        if (first && r.gen == j && r.exp == 1) {
          first = false;
          continue;  // the stripped leading a_j letter
        }
        first = false;
        conj_req[static_cast<std::size_t>(i)].push_back(r.gen);
      }
    }
  }

  auto valid = [&](const std::vector<int>& lv) {
    for (int i = 0; i < m; ++i) {
      for (int k : conj_req[static_cast<std::size_t>(i)])
        if (lv[static_cast<std::size_t>(k)] <= lv[static_cast<std::size_t>(i)])
          return false;
      if (!pow_free[static_cast<std::size_t>(i)])
        for (int k : pow_req[static_cast<std::size_t>(i)])
          if (lv[static_cast<std::size_t>(k)] <= lv[static_cast<std::size_t>(i)])
            return false;
    }
    return true;
  };

  for (int d = 1; d <= m; ++d) {
    // All level vectors with exactly d blocks, in lexicographic order.
    std::vector<std::vector<int>> candidates;
    std::vector<int> lv(static_cast<std::size_t>(m), 1);
    auto rec = [&](auto&& self, int pos, int cur) -> void {
      if (pos == m) {
        if (cur == d) candidates.push_back(lv);
        return;
      }
      // Remaining positions must still be able to reach level d.
      for (int step = 0; step <= 1; ++step) {
        const int next = cur + step;
        if (next > d) continue;
        if (d - next > m - pos - 1) continue;
        lv[static_cast<std::size_t>(pos)] = next;
        self(self, pos + 1, next);
      }
    };
    if (m == 1) {
      if (d == 1 && valid({1})) return DeltaFunction({1});
      continue;
    }
    lv[0] = 1;
    rec(rec, 1, 1);
    std::sort(candidates.begin(), candidates.end());
    for (const auto& c : candidates)
      if (valid(c)) return DeltaFunction(c);
  }
  return std::nullopt;
}

/// The derived presentation: restriction to the generators of level > 1
/// with all levels decremented. Requires d > 1.
inline FavourableStructure derived_presentation(const FavourableStructure& f) {
  if (f.d <= 1)
    throw PreconditionError("derived presentation undefined for soluble bound 1");
  const PcPresentation& p = f.presentation;
  const int m = p.m();
  int first = m;
  for (int i = 0; i < m; ++i)
    if (f.delta.level(i) > 1) {
      first = i;
      break;
    }
  const int md = m - first;

  std::vector<std::string> names(p.names().begin() + first, p.names().end());
  std::vector<long long> orders(p.orders().begin() + first, p.orders().end());
  PcPresentation out(std::move(names), std::move(orders));
  for (int i = first; i < m; ++i) {
    out.set_power_rhs(i - first, shift_generators(p.power_rhs(i), -first));
    for (int j = i + 1; j < m; ++j)
      out.set_conj_rhs(i - first, j - first,
                       shift_generators(p.conj_rhs(i, j), -first));
  }
  std::vector<int> levels(static_cast<std::size_t>(md));
  for (int i = 0; i < md; ++i) levels[static_cast<std::size_t>(i)] =
      f.delta.level(first + i) - 1;

  FavourableCheck check = validate_favourable(out, DeltaFunction(levels));
  if (!check.ok())
    throw Error("derived presentation failed favourable validation");
  return *check.value;
}

struct TheoremBounds {
  long long step_bound;
  long long length_bound;

  bool operator==(const TheoremBounds&) const = default;
};

/// Worst-case cost of collecting the concatenation of two normal words:
/// N^(3d-1) steps; intermediate length 2N for d = 1 and 2(d-1)N^2 above.
inline TheoremBounds theorem_bounds(const FavourableStructure& f) {
  const long long n = f.n_max;
  const long long steps = detail::checked_pow(n, 3LL * f.d - 1);
  const long long len =
      f.d == 1 ? detail::checked_mul(2, n)
               : detail::checked_mul(detail::checked_mul(2, f.d - 1),
                                     detail::checked_mul(n, n));
  return TheoremBounds{steps, len};
}

/// Step bound for a p-group of order p^n collected with respect to a
/// composition-series presentation: ((p-1)n)^(3 log2(n) + 1).
inline double pgroup_corollary_bound(long long p, long long n) {
  if (p < 2) throw PreconditionError("p must be a prime >= 2");
  for (long long q = 2; q * q <= p; ++q)
    if (p % q == 0) throw PreconditionError("p must be prime");
  if (n < 2) throw PreconditionError("corollary bound requires n >= 2");
  const double base = static_cast<double>((p - 1) * n);
  const double expo = 3.0 * std::log2(static_cast<double>(n)) + 1.0;
  return std::pow(base, expo);
}

/// Derived-length bound 1 + log2(n-1) for a group of composition length n.
inline double hall_bound(long long n) {
  if (n < 2) throw PreconditionError("hall bound requires n >= 2");
  return 1.0 + std::log2(static_cast<double>(n - 1));
}

}  // namespace pcc
