#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pcc/collector.hpp"
#include "pcc/errors.hpp"
#include "pcc/presentation.hpp"
#include "pcc/word.hpp"

namespace pcc {

/// Product of two normal words: collect their concatenation. The stats
/// carry the exact step count and maximum intermediate length, which is
/// what the complexity bounds speak about.
inline CollectResult multiply(const NormalWord& u, const NormalWord& w,
                              const PcPresentation& p,
                              const CollectOptions& opts = {}) {
  return collect_from_left(concat(u.to_word(), w.to_word()), p, opts);
}

inline NormalWord letter_inverse(int i, const PcPresentation& p,
                                 const CollectOptions& opts = {});

namespace detail {

/// Inverse of an arbitrary word: collected product of the letter
/// inverses in reverse order.
inline NormalWord inverse_word(const Word& w, const PcPresentation& p,
                               const CollectOptions& opts) {
  NormalWord acc = NormalWord::identity(p.m());
  const std::vector<Run>& rs = w.runs();
  for (auto it = rs.rbegin(); it != rs.rend(); ++it) {
    const NormalWord gi = letter_inverse(it->gen, p, opts);
    for (long long t = 0; t < it->exp; ++t)
      acc = multiply(acc, gi, p, opts).normal;
  }
  return acc;
}

}  // namespace detail

/// Normal word x with a_i x = 1, computed as a_i^{e_i - 1} * (v_ii)^-1.
/// The recursion through v_ii only ever descends into strictly higher
/// generator indices, so it terminates.
inline NormalWord letter_inverse(int i, const PcPresentation& p,
                                 const CollectOptions& opts) {
  const Word head = Word::letter(i, p.order(i) - 1);
  const NormalWord tail = detail::inverse_word(p.power_rhs(i), p, opts);
  return collect_from_left(concat(head, tail.to_word()), p, opts).normal;
}

inline NormalWord inverse(const NormalWord& u, const PcPresentation& p,
                          const CollectOptions& opts = {}) {
  return detail::inverse_word(u.to_word(), p, opts);
}

/// u^k by repeated squaring; power(u, 0) is the identity.
inline NormalWord power(const NormalWord& u, long long k,
                        const PcPresentation& p,
                        const CollectOptions& opts = {}) {
  if (k < 0) throw PreconditionError("power exponent must be >= 0");
  NormalWord acc = NormalWord::identity(p.m());
  NormalWord base = u;
  while (k > 0) {
    if (k & 1) acc = multiply(acc, base, p, opts).normal;
    k >>= 1;
    if (k > 0) base = multiply(base, base, p, opts).normal;
  }
  return acc;
}

/// Least k >= 1 with u^k = 1, by iterated multiplication. Exceeding
/// e_1...e_m means distinct normal words collide as group elements, i.e.
/// the presentation is inconsistent.
inline long long element_order(const NormalWord& u, const PcPresentation& p,
                               const CollectOptions& opts = {}) {
  const long long bound = p.order_product();
  NormalWord x = u;
  long long k = 1;
  while (!x.is_identity()) {
    x = multiply(x, u, p, opts).normal;
    ++k;
    if (k > bound)
      throw Error("element order exceeds e_1...e_m; presentation inconsistent");
  }
  return k;
}

/// All e_1...e_m normal words in mixed-radix lexicographic order with
/// alpha_1 as the most significant digit; the identity comes first.
inline std::vector<NormalWord> enumerate_normal_words(
    const PcPresentation& p) {
  const int m = p.m();
  const long long n = p.order_product();
  std::vector<NormalWord> out;
  out.reserve(static_cast<std::size_t>(n));
  std::vector<long long> exps(static_cast<std::size_t>(m), 0);
  while (true) {
    out.push_back(NormalWord(exps));
    int i = m - 1;
    while (i >= 0) {
      if (++exps[static_cast<std::size_t>(i)] < p.order(i)) break;
      exps[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

/// Position of w in enumerate_normal_words(p).
inline long long normal_word_index(const NormalWord& w,
                                   const PcPresentation& p) {
  if (w.size() != p.m())
    throw PreconditionError("normal word size does not match presentation");
  long long idx = 0;
  for (int i = 0; i < p.m(); ++i) {
    const long long a = w.exponent(i);
    if (a < 0 || a >= p.order(i))
      throw PreconditionError("exponent out of range for normal word index");
    idx = idx * p.order(i) + a;
  }
  return idx;
}

/// Full multiplication table over the normal-word enumeration, with
/// aggregate collection cost recorded while building it.
struct CayleyTable {
  long long order = 0;
  std::vector<NormalWord> words;
  std::vector<std::int32_t> table;  // row-major: table[i*order + j]
  long long total_steps = 0;
  long long max_steps = 0;
  long long max_length = 0;

  std::int32_t at(long long i, long long j) const {
    return table[static_cast<std::size_t>(i * order + j)];
  }
};

inline CayleyTable cayley_table(const PcPresentation& p,
                                const CollectOptions& opts = {},
                                long long ceiling = 4096) {
  const long long n = p.order_product();
  if (n > ceiling) throw CeilingError(n, ceiling);
  CayleyTable t;
  t.order = n;
  t.words = enumerate_normal_words(p);
  t.table.assign(static_cast<std::size_t>(n * n), 0);
  for (long long i = 0; i < n; ++i) {
    for (long long j = 0; j < n; ++j) {
      CollectResult r = multiply(t.words[static_cast<std::size_t>(i)],
                                 t.words[static_cast<std::size_t>(j)], p, opts);
      t.table[static_cast<std::size_t>(i * n + j)] =
          static_cast<std::int32_t>(normal_word_index(r.normal, p));
      t.total_steps += r.stats.steps;
      t.max_steps = std::max(t.max_steps, r.stats.steps);
      t.max_length = std::max(t.max_length, r.stats.max_length);
    }
  }
  return t;
}

/// CSV export: header row of the normal-word strings (column c names the
/// word with index c), then one row of indices per left factor.
inline std::string render_cayley_csv(const CayleyTable& t,
                                     const PcPresentation& p) {
  std::ostringstream out;
  for (long long j = 0; j < t.order; ++j) {
    if (j) out << ',';
    out << render_word(t.words[static_cast<std::size_t>(j)], p.names());
  }
  out << '\n';
  for (long long i = 0; i < t.order; ++i) {
    for (long long j = 0; j < t.order; ++j) {
      if (j) out << ',';
      out << t.at(i, j);
    }
    out << '\n';
  }
  return out.str();
}

enum class ConsistencyMode { Overlap, Brute, Both };

struct ConsistencyFailure {
  std::string left_expr;   // bracketed test word, e.g. "b (a^2)"
  std::string right_expr;  // e.g. "(b a) a"
  NormalWord left_nf;
  NormalWord right_nf;
};

struct ConsistencyReport {
  ConsistencyMode mode = ConsistencyMode::Overlap;
  std::vector<ConsistencyFailure> failures;

  bool consistent() const { return failures.empty(); }
};

struct BruteOptions {
  long long full_threshold = 64;   // full n^3 associativity check up to here
  long long sample_count = 100000;  // sampled triples above the threshold
  std::uint64_t seed = 1;
  long long ceiling = 4096;
};

namespace detail {

inline void check_overlaps(const PcPresentation& p, const CollectOptions& opts,
                           std::vector<ConsistencyFailure>& failures) {
  const int m = p.m();
  const std::vector<std::string>& names = p.names();

  auto nf = [&](const Word& w) { return collect_from_left(w, p, opts).normal; };
  auto compare = [&](const std::string& le, const Word& lw,
                     const std::string& re, const Word& rw) {
    const NormalWord l = nf(lw);
    const NormalWord r = nf(rw);
    if (!(l == r)) failures.push_back({le, re, l, r});
  };
  auto pow_tok = [&](int g, long long e) {
    return e == 1 ? names[static_cast<std::size_t>(g)]
                  : names[static_cast<std::size_t>(g)] + "^" +
                        std::to_string(e);
  };

  // a_k (a_j a_i) vs (a_k a_j) a_i for k > j > i
  for (int k = 2; k < m; ++k)
    for (int j = 1; j < k; ++j)
      for (int i = 0; i < j; ++i) {
        const Word inner_l = nf(concat(Word::letter(j), Word::letter(i))).to_word();
        const Word inner_r = nf(concat(Word::letter(k), Word::letter(j))).to_word();
        compare(names[static_cast<std::size_t>(k)] + " (" +
                    names[static_cast<std::size_t>(j)] + " " +
                    names[static_cast<std::size_t>(i)] + ")",
                concat(Word::letter(k), inner_l),
                "(" + names[static_cast<std::size_t>(k)] + " " +
                    names[static_cast<std::size_t>(j)] + ") " +
                    names[static_cast<std::size_t>(i)],
                concat(inner_r, Word::letter(i)));
      }

  for (int j = 0; j < m; ++j) {
    const long long ej = p.order(j);
    // (a_j^{e_j}) a_i vs a_j^{e_j-1} (a_j a_i) for j > i
    for (int i = 0; i < j; ++i) {
      const Word lhs = concat(nf(Word::letter(j, ej)).to_word(), Word::letter(i));
      const Word rhs = concat(Word::letter(j, ej - 1),
                              nf(concat(Word::letter(j), Word::letter(i))).to_word());
      compare("(" + pow_tok(j, ej) + ") " + names[static_cast<std::size_t>(i)],
              lhs,
              pow_tok(j, ej - 1) + " (" + names[static_cast<std::size_t>(j)] +
                  " " + names[static_cast<std::size_t>(i)] + ")",
              rhs);
    }
    // a_j (a_i^{e_i}) vs (a_j a_i) a_i^{e_i-1} for j > i
    for (int i = 0; i < j; ++i) {
      const long long ei = p.order(i);
      const Word lhs = concat(Word::letter(j), nf(Word::letter(i, ei)).to_word());
      const Word rhs = concat(nf(concat(Word::letter(j), Word::letter(i))).to_word(),
                              Word::letter(i, ei - 1));
      compare(names[static_cast<std::size_t>(j)] + " (" + pow_tok(i, ei) + ")",
              lhs,
              "(" + names[static_cast<std::size_t>(j)] + " " +
                  names[static_cast<std::size_t>(i)] + ") " +
                  pow_tok(i, ei - 1),
              rhs);
    }
    // a_j (a_j^{e_j}) vs (a_j^{e_j}) a_j
    const Word lhs = concat(Word::letter(j), nf(Word::letter(j, ej)).to_word());
    const Word rhs = concat(nf(Word::letter(j, ej)).to_word(), Word::letter(j));
    compare(names[static_cast<std::size_t>(j)] + " (" + pow_tok(j, ej) + ")",
            lhs, "(" + pow_tok(j, ej) + ") " + names[static_cast<std::size_t>(j)],
            rhs);
  }
}

inline void check_brute(const PcPresentation& p, const CollectOptions& opts,
                        const BruteOptions& brute,
                        std::vector<ConsistencyFailure>& failures) {
  const CayleyTable t = cayley_table(p, opts, brute.ceiling);
  const long long n = t.order;
  auto wstr = [&](long long i) {
    return render_word(t.words[static_cast<std::size_t>(i)], p.names());
  };

  for (long long i = 0; i < n; ++i) {
    if (t.at(i, 0) != i)
      failures.push_back({wstr(i) + " id", wstr(i),
                          t.words[static_cast<std::size_t>(t.at(i, 0))],
                          t.words[static_cast<std::size_t>(i)]});
    if (t.at(0, i) != i)
      failures.push_back({"id " + wstr(i), wstr(i),
                          t.words[static_cast<std::size_t>(t.at(0, i))],
                          t.words[static_cast<std::size_t>(i)]});
    bool has_inverse = false;
    for (long long j = 0; j < n; ++j)
      if (t.at(i, j) == 0 && t.at(j, i) == 0) {
        has_inverse = true;
        break;
      }
    if (!has_inverse)
      failures.push_back({wstr(i) + " has no two-sided inverse", "id",
                          t.words[static_cast<std::size_t>(i)],
                          NormalWord::identity(p.m())});
  }

  auto assoc = [&](long long i, long long j, long long k) {
    const long long l = t.at(t.at(i, j), k);
    const long long r = t.at(i, t.at(j, k));
    if (l != r)
      failures.push_back(
          {"(" + wstr(i) + " . " + wstr(j) + ") . " + wstr(k),
           wstr(i) + " . (" + wstr(j) + " . " + wstr(k) + ")",
           t.words[static_cast<std::size_t>(l)],
           t.words[static_cast<std::size_t>(r)]});
  };

  if (n <= brute.full_threshold) {
    for (long long i = 0; i < n; ++i)
      for (long long j = 0; j < n; ++j)
        for (long long k = 0; k < n; ++k) assoc(i, j, k);
  } else {
    // Engine output reduced mod n directly: keeps sampling reproducible
    // across standard-library implementations; the tiny modulo bias is
    // irrelevant for a coverage sampler.
    std::mt19937_64 gen(brute.seed);
    for (long long s = 0; s < brute.sample_count; ++s) {
      const long long i = static_cast<long long>(gen() % static_cast<std::uint64_t>(n));
      const long long j = static_cast<long long>(gen() % static_cast<std::uint64_t>(n));
      const long long k = static_cast<long long>(gen() % static_cast<std::uint64_t>(n));
      assoc(i, j, k);
    }
  }
}

}  // namespace detail

/// Overlap mode collects both bracketings of the standard test words
/// (associativity triples a_k a_j a_i and the power overlaps); brute mode
/// builds the Cayley table and checks identity, two-sided inverses and
/// associativity directly. Either mode reports the witness word pair and
/// the two distinct normal forms for every discrepancy.
inline ConsistencyReport check_consistency(const PcPresentation& p,
                                           ConsistencyMode mode,
                                           const CollectOptions& opts = {},
                                           const BruteOptions& brute = {}) {
  ConsistencyReport report;
  report.mode = mode;
  if (mode == ConsistencyMode::Overlap || mode == ConsistencyMode::Both)
    detail::check_overlaps(p, opts, report.failures);
  if (mode == ConsistencyMode::Brute || mode == ConsistencyMode::Both)
    detail::check_brute(p, opts, brute, report.failures);
  return report;
}

}  // namespace pcc
