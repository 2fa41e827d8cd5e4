#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pcc/errors.hpp"
#include "pcc/presentation.hpp"
#include "pcc/word.hpp"

namespace pcc {

enum class SiteKind { Power, Conjugate };

/// A minimal non-normal subword occurrence. Power sites cover the e_i
/// letters a_i^{e_i} starting at `start`; conjugate sites cover the two
/// letters a_j a_i (j > i) at `start`, `start`+1. Positions are 1-based
/// over the flat letter sequence.
struct ReductionSite {
  SiteKind kind = SiteKind::Power;
  int gen_i = 0;  // the lower generator (the only one for power sites)
  int gen_j = 0;  // conjugate sites: the higher generator; else == gen_i
  long long start = 0;

  bool operator==(const ReductionSite&) const = default;
};

struct TraceEntry {
  ReductionSite site;
  long long length_before = 0;

  bool operator==(const TraceEntry&) const = default;
};

struct CollectionStats {
  long long steps = 0;
  long long max_length = 0;  // over all intermediates, input and output included
  std::optional<std::vector<TraceEntry>> trace;
};

inline bool is_normal(const Word& w, const PcPresentation& p) {
  return detail::word_is_normal(w, p.orders());
}

/// The site with minimal start position, or none iff the word is normal.
/// At most one minimal non-normal subword starts at any letter (a power
/// and a conjugate occurrence cannot share a start because all e_i >= 2),
/// so the result is unique. Words are stored in run form; scanning runs
/// left to right visits candidate sites in increasing start order: the
/// power site inside a run precedes the descent at the run's right edge.
inline std::optional<ReductionSite> leftmost_reducible(
    const Word& w, const PcPresentation& p) {
  const std::vector<Run>& rs = w.runs();
  long long pos = 1;
  for (std::size_t r = 0; r < rs.size(); ++r) {
    const Run& cur = rs[r];
    if (cur.gen < 0 || cur.gen >= p.m())
      throw PreconditionError("word uses a generator outside the presentation");
    if (cur.exp >= p.order(cur.gen))
      return ReductionSite{SiteKind::Power, cur.gen, cur.gen, pos};
    if (r + 1 < rs.size() && rs[r + 1].gen < cur.gen)
      return ReductionSite{SiteKind::Conjugate, rs[r + 1].gen, cur.gen,
                           pos + cur.exp - 1};
    pos += cur.exp;
  }
  return std::nullopt;
}

/// Applies one collection step at the given site:
///   power(i):       ... a_i^{e_i} ...  ->  ... v_ii ...
///   conjugate(j,i): ... a_j a_i ...    ->  ... a_i v_ij ...
/// The site must match the word (checked); the result is re-canonicalized
/// into run form. Usable both on freshly found sites and on recorded
/// trace entries during replay.
inline Word apply_at(const Word& w, const ReductionSite& site,
                     const PcPresentation& p) {
  const std::vector<Run>& rs = w.runs();
  std::vector<Run> out;
  out.reserve(rs.size() + 4);

  long long run_start = 1;
  std::size_t r = 0;
  for (; r < rs.size(); ++r) {
    if (site.start < run_start + rs[r].exp) break;
    run_start += rs[r].exp;
    out.push_back(rs[r]);
  }
  if (r == rs.size())
    throw PreconditionError("site position beyond end of word");
  const Run& hit = rs[r];
  const long long offset = site.start - run_start;  // letters before the site

  if (site.kind == SiteKind::Power) {
    const long long e = p.order(site.gen_i);
    if (hit.gen != site.gen_i || offset + e > hit.exp)
      throw PreconditionError("power site does not match word");
    if (offset > 0) out.push_back(Run{hit.gen, offset});
    for (const Run& v : p.power_rhs(site.gen_i).runs()) out.push_back(v);
    if (hit.exp - offset - e > 0)
      out.push_back(Run{hit.gen, hit.exp - offset - e});
  } else {
    if (hit.gen != site.gen_j || offset != hit.exp - 1 || r + 1 == rs.size() ||
        rs[r + 1].gen != site.gen_i)
      throw PreconditionError("conjugate site does not match word");
    if (offset > 0) out.push_back(Run{hit.gen, offset});
    out.push_back(Run{site.gen_i, 1});
    for (const Run& v : p.conj_rhs(site.gen_i, site.gen_j).runs())
      out.push_back(v);
    const Run& next = rs[r + 1];
    if (next.exp - 1 > 0) out.push_back(Run{next.gen, next.exp - 1});
    ++r;  // the a_i letter came from this run
  }
  for (++r; r < rs.size(); ++r) out.push_back(rs[r]);
  return Word(std::move(out));
}

/// One step at the leftmost site. The word must not be normal.
inline Word collection_step(const Word& w, const PcPresentation& p) {
  const std::optional<ReductionSite> site = leftmost_reducible(w, p);
  if (!site) throw PreconditionError("collection_step on a normal word");
  return apply_at(w, *site, p);
}

struct CollectOptions {
  long long step_limit = 100'000'000;
  bool keep_trace = false;
};

struct CollectResult {
  NormalWord normal;
  CollectionStats stats;
};

/// Exponent-vector form of a word that is already normal.
inline NormalWord as_normal_word(const Word& w, const PcPresentation& p) {
  if (!is_normal(w, p)) throw PreconditionError("word is not normal");
  std::vector<long long> exps(static_cast<std::size_t>(p.m()), 0);
  for (const Run& r : w.runs()) exps[static_cast<std::size_t>(r.gen)] = r.exp;
  return NormalWord(std::move(exps));
}

/// Collection from the left: rewrites the leftmost minimal non-normal
/// subword until none remains. Deterministic; returns the exact step
/// count and the maximum letter length over every word in the chain.
inline CollectResult collect_from_left(const Word& w, const PcPresentation& p,
                                       const CollectOptions& opts = {}) {
  if (opts.step_limit <= 0) throw PreconditionError("step limit must be > 0");
  Word cur = w;
  CollectionStats stats;
  stats.max_length = cur.letter_length();
  if (opts.keep_trace) stats.trace.emplace();
  while (std::optional<ReductionSite> site = leftmost_reducible(cur, p)) {
    if (stats.steps >= opts.step_limit) throw StepLimitError(opts.step_limit);
    if (stats.trace) stats.trace->push_back({*site, cur.letter_length()});
    cur = apply_at(cur, *site, p);
    ++stats.steps;
    stats.max_length = std::max(stats.max_length, cur.letter_length());
  }
  return CollectResult{as_normal_word(cur, p), std::move(stats)};
}

/// Re-applies a recorded trace site-by-site, checking each stored
/// length-before against the current word. Returns the final word, which
/// for a trace recorded by collect_from_left is the same normal word.
inline Word replay_trace(const Word& w, const PcPresentation& p,
                         const std::vector<TraceEntry>& trace) {
  Word cur = w;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (cur.letter_length() != trace[k].length_before)
      throw PreconditionError("trace replay length mismatch at step " +
                              std::to_string(k + 1));
    cur = apply_at(cur, trace[k].site, p);
  }
  return cur;
}

/// `step k: pos p, <LHS> -> <RHS>, len L` with L the letter length after
/// the step. The relation instance is spelled with generator names.
inline std::string render_trace_line(long long k, const TraceEntry& entry,
                                     const PcPresentation& p) {
  const ReductionSite& s = entry.site;
  std::ostringstream out;
  out << "step " << k << ": pos " << s.start << ", ";
  if (s.kind == SiteKind::Power) {
    out << p.name(s.gen_i) << '^' << p.order(s.gen_i) << " -> "
        << render_word(p.power_rhs(s.gen_i), p.names());
    out << ", len "
        << entry.length_before + p.power_rhs(s.gen_i).letter_length() -
               p.order(s.gen_i);
  } else {
    out << p.name(s.gen_j) << ' ' << p.name(s.gen_i) << " -> "
        << render_word(concat(Word::letter(s.gen_i),
                              p.conj_rhs(s.gen_i, s.gen_j)),
                       p.names());
    out << ", len "
        << entry.length_before +
               p.conj_rhs(s.gen_i, s.gen_j).letter_length() - 1;
  }
  return out.str();
}

}  // namespace pcc
