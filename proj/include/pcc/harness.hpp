#pragma once

#include <chrono>
#include <exception>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "pcc/collector.hpp"
#include "pcc/errors.hpp"
#include "pcc/group.hpp"
#include "pcc/presentation.hpp"
#include "pcc/word.hpp"

namespace pcc {

/// Empirical maxima of one exhaustive pair run against the closed-form
/// bounds. `n` is the maximum normal word length N of the presentation.
struct ExperimentReport {
  std::string group;
  int m = 0;
  long long n = 0;
  int d = 0;
  long long step_bound = 0;
  long long length_bound = 0;
  long long emp_max_steps = 0;
  std::string emp_argmax_u;
  std::string emp_argmax_w;
  long long emp_max_length = 0;
  long long pairs_checked = 0;
  double elapsed_seconds = 0.0;
  double step_bound_ratio = 0.0;
  double length_bound_ratio = 0.0;
};

/// Theorem step bound with headroom; saturates instead of overflowing.
inline long long default_step_limit(const TheoremBounds& b) {
  long long out = 0;
  if (__builtin_mul_overflow(b.step_bound, 4LL, &out))
    return std::numeric_limits<long long>::max();
  return out;
}

struct ExhaustOptions {
  int workers = 1;
  long long ceiling = 4096;  // maximum group order
  std::optional<long long> step_limit;
};

namespace detail {

struct PairMaxima {
  long long max_steps = -1;
  long long argmax = -1;  // pair index u * order + w; -1 when block empty
  long long max_length = 0;
};

}  // namespace detail

/// Collects concat(u, w) for every ordered pair of normal words and
/// records the global maxima of step count and intermediate length. The
/// pair space may be split across workers; partial maxima merge by block
/// order with ties resolved to the smallest pair index, so the report is
/// identical for every worker count.
inline ExperimentReport exhaustive_experiment(const FavourableStructure& f,
                                              const std::string& group_name,
                                              const ExhaustOptions& opts = {}) {
  const PcPresentation& p = f.presentation;
  const long long order = p.order_product();
  if (order > opts.ceiling) throw CeilingError(order, opts.ceiling);

  const TheoremBounds bounds = theorem_bounds(f);
  CollectOptions copts;
  copts.step_limit = opts.step_limit.value_or(default_step_limit(bounds));

  const std::vector<NormalWord> words = enumerate_normal_words(p);
  std::vector<Word> forms;
  forms.reserve(words.size());
  for (const NormalWord& w : words) forms.push_back(w.to_word());

  const long long pairs = order * order;
  const int workers = std::max(1, opts.workers);
  const auto t0 = std::chrono::steady_clock::now();

  auto run_block = [&](long long lo, long long hi, detail::PairMaxima& out) {
    for (long long idx = lo; idx < hi; ++idx) {
      const long long iu = idx / order;
      const long long iw = idx % order;
      const CollectResult r =
          collect_from_left(concat(forms[static_cast<std::size_t>(iu)],
                                   forms[static_cast<std::size_t>(iw)]),
                            p, copts);
      if (r.stats.steps > out.max_steps) {
        out.max_steps = r.stats.steps;
        out.argmax = idx;
      }
      out.max_length = std::max(out.max_length, r.stats.max_length);
    }
  };

  std::vector<detail::PairMaxima> partial(static_cast<std::size_t>(workers));
  if (workers == 1) {
    run_block(0, pairs, partial[0]);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int b = 0; b < workers; ++b) {
      const long long lo = pairs * b / workers;
      const long long hi = pairs * (b + 1) / workers;
      threads.emplace_back([&, b, lo, hi] {
        try {
          run_block(lo, hi, partial[static_cast<std::size_t>(b)]);
        } catch (...) {
          errors[static_cast<std::size_t>(b)] = std::current_exception();
        }
      });
    }
    for (std::thread& t : threads) t.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }

  detail::PairMaxima best;
  for (const detail::PairMaxima& part : partial) {
    if (part.argmax >= 0 && part.max_steps > best.max_steps) {
      best.max_steps = part.max_steps;
      best.argmax = part.argmax;
    }
    best.max_length = std::max(best.max_length, part.max_length);
  }
  const auto t1 = std::chrono::steady_clock::now();

  ExperimentReport report;
  report.group = group_name;
  report.m = p.m();
  report.n = f.n_max;
  report.d = f.d;
  report.step_bound = bounds.step_bound;
  report.length_bound = bounds.length_bound;
  report.emp_max_steps = best.max_steps;
  report.emp_argmax_u = render_word(
      words[static_cast<std::size_t>(best.argmax / order)], p.names());
  report.emp_argmax_w = render_word(
      words[static_cast<std::size_t>(best.argmax % order)], p.names());
  report.emp_max_length = best.max_length;
  report.pairs_checked = pairs;
  report.elapsed_seconds =
      std::chrono::duration<double>(t1 - t0).count();
  report.step_bound_ratio = static_cast<double>(report.emp_max_steps) /
                            static_cast<double>(report.step_bound);
  report.length_bound_ratio = static_cast<double>(report.emp_max_length) /
                              static_cast<double>(report.length_bound);
  return report;
}

struct LemmaOptions {
  long long ceiling = 4096;       // exhaustive tuple budget (lemma 2)
  long long samples = 10000;      // sampled tuples beyond the budget
  std::uint64_t seed = 1;
  long long order_ceiling = 4096;
  std::optional<long long> step_limit;
};

struct LemmaResult {
  int lemma = 2;
  int r = 0;  // lemma 2 only
  bool pass = false;
  bool sampled = false;
  long long cases = 0;
  long long max_steps = 0;
  long long step_bound = 0;
  long long max_length = 0;
  long long length_bound = 0;
  long long sigma_prime = 0;
  long long lambda_prime = 0;
  long long n_prime = 0;
  std::string witness;  // first violating word, else the step argmax
};

namespace detail {

struct DerivedContext {
  FavourableStructure derived;
  long long sigma_prime;
  long long lambda_prime;
  long long n_prime;
  int offset;                        // derived gen k <-> parent gen k+offset
  std::vector<Word> embedded_forms;  // derived normal words in parent alphabet
};

/// Measures sigma' and lambda' exhaustively on the derived presentation
/// and prepares its normal words re-labelled into the parent alphabet.
inline DerivedContext derived_context(const FavourableStructure& f,
                                      const LemmaOptions& opts) {
  DerivedContext ctx{derived_presentation(f), 0, 0, 0, 0, {}};
  ExhaustOptions eo;
  eo.ceiling = opts.order_ceiling;
  eo.step_limit = opts.step_limit;
  const ExperimentReport base =
      exhaustive_experiment(ctx.derived, "derived", eo);
  ctx.sigma_prime = base.emp_max_steps;
  ctx.lambda_prime = base.emp_max_length;
  ctx.n_prime = ctx.derived.n_max;
  ctx.offset = f.presentation.m() - ctx.derived.presentation.m();
  for (const NormalWord& w : enumerate_normal_words(ctx.derived.presentation))
    ctx.embedded_forms.push_back(shift_generators(w.to_word(), ctx.offset));
  return ctx;
}

}  // namespace detail

/// Checks that collecting any concatenation of r normal words of the
/// derived presentation (embedded in the parent alphabet, empty factors
/// allowed) takes at most (r-1) * sigma' steps with intermediate length
/// at most lambda' + (r-2) * N'. Exhaustive over all tuples while their
/// count fits the budget, seeded sampling beyond it.
inline LemmaResult lemma2_check(const FavourableStructure& f, int r,
                                const LemmaOptions& opts = {}) {
  if (r < 2) throw PreconditionError("lemma 2 requires r >= 2");
  const detail::DerivedContext ctx = detail::derived_context(f, opts);
  const long long count = static_cast<long long>(ctx.embedded_forms.size());

  LemmaResult res;
  res.lemma = 2;
  res.r = r;
  res.sigma_prime = ctx.sigma_prime;
  res.lambda_prime = ctx.lambda_prime;
  res.n_prime = ctx.n_prime;
  res.step_bound = (r - 1) * ctx.sigma_prime;
  res.length_bound = ctx.lambda_prime + (r - 2) * ctx.n_prime;
  res.pass = true;

  long long tuple_count = 1;
  for (int t = 0; t < r && !res.sampled; ++t) {
    tuple_count *= count;
    if (tuple_count > opts.ceiling) res.sampled = true;
  }

  CollectOptions copts;
  if (opts.step_limit) copts.step_limit = *opts.step_limit;

  auto run_word = [&](const Word& w) {
    const CollectResult c = collect_from_left(w, f.presentation, copts);
    ++res.cases;
    const bool violation = c.stats.steps > res.step_bound ||
                           c.stats.max_length > res.length_bound;
    if (violation && res.pass) {
      res.pass = false;
      res.witness = render_word(w, f.presentation.names());
    }
    if (c.stats.steps > res.max_steps) {
      res.max_steps = c.stats.steps;
      if (res.pass) res.witness = render_word(w, f.presentation.names());
    }
    res.max_length = std::max(res.max_length, c.stats.max_length);
  };

  auto word_of = [&](const std::vector<long long>& digits) {
    Word w;
    for (long long dgt : digits)
      w = concat(w, ctx.embedded_forms[static_cast<std::size_t>(dgt)]);
    return w;
  };

  if (!res.sampled) {
    std::vector<long long> digits(static_cast<std::size_t>(r), 0);
    while (true) {
      run_word(word_of(digits));
      int t = r - 1;
      while (t >= 0) {
        if (++digits[static_cast<std::size_t>(t)] < count) break;
        digits[static_cast<std::size_t>(t)] = 0;
        --t;
      }
      if (t < 0) break;
    }
  } else {
    std::mt19937_64 gen(opts.seed);
    std::vector<long long> digits(static_cast<std::size_t>(r), 0);
    for (long long s = 0; s < opts.samples; ++s) {
      for (int t = 0; t < r; ++t)
        digits[static_cast<std::size_t>(t)] = static_cast<long long>(
            gen() % static_cast<std::uint64_t>(count));
      run_word(word_of(digits));
    }
  }
  return res;
}

/// Checks every word u' a w' with a of level 1 and u', w' normal words of
/// the derived presentation: at most N' + N' * sigma' steps, length at
/// most 1 + lambda' + (N'-1) * N'. Always exhaustive.
inline LemmaResult lemma3_check(const FavourableStructure& f,
                                const LemmaOptions& opts = {}) {
  const detail::DerivedContext ctx = detail::derived_context(f, opts);

  LemmaResult res;
  res.lemma = 3;
  res.sigma_prime = ctx.sigma_prime;
  res.lambda_prime = ctx.lambda_prime;
  res.n_prime = ctx.n_prime;
  res.step_bound = ctx.n_prime + ctx.n_prime * ctx.sigma_prime;
  res.length_bound = 1 + ctx.lambda_prime + (ctx.n_prime - 1) * ctx.n_prime;
  res.pass = true;

  CollectOptions copts;
  if (opts.step_limit) copts.step_limit = *opts.step_limit;

  for (int a = 0; a < f.presentation.m(); ++a) {
    if (f.delta.level(a) != 1) continue;
    for (const Word& u : ctx.embedded_forms) {
      for (const Word& w : ctx.embedded_forms) {
        const Word probe = concat(concat(u, Word::letter(a)), w);
        const CollectResult c = collect_from_left(probe, f.presentation, copts);
        ++res.cases;
        const bool violation = c.stats.steps > res.step_bound ||
                               c.stats.max_length > res.length_bound;
        if (violation && res.pass) {
          res.pass = false;
          res.witness = render_word(probe, f.presentation.names());
        }
        if (c.stats.steps > res.max_steps) {
          res.max_steps = c.stats.steps;
          if (res.pass) res.witness = render_word(probe, f.presentation.names());
        }
        res.max_length = std::max(res.max_length, c.stats.max_length);
      }
    }
  }
  return res;
}

enum class ReportFormat { Json, Csv, Text };

namespace detail {

inline std::string fixed6(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << v;
  return out.str();
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(const ExperimentReport& r) {
  nlohmann::ordered_json j;
  j["group"] = r.group;
  j["m"] = r.m;
  j["n"] = r.n;
  j["d"] = r.d;
  j["step_bound"] = r.step_bound;
  j["length_bound"] = r.length_bound;
  j["emp_max_steps"] = r.emp_max_steps;
  j["emp_argmax_u"] = r.emp_argmax_u;
  j["emp_argmax_w"] = r.emp_argmax_w;
  j["emp_max_length"] = r.emp_max_length;
  j["pairs_checked"] = r.pairs_checked;
  j["elapsed_seconds"] = r.elapsed_seconds;
  j["step_bound_ratio"] = r.step_bound_ratio;
  j["length_bound_ratio"] = r.length_bound_ratio;
  return j;
}

inline ExperimentReport parse_report_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  ExperimentReport r;
  r.group = j.at("group").get<std::string>();
  r.m = j.at("m").get<int>();
  r.n = j.at("n").get<long long>();
  r.d = j.at("d").get<int>();
  r.step_bound = j.at("step_bound").get<long long>();
  r.length_bound = j.at("length_bound").get<long long>();
  r.emp_max_steps = j.at("emp_max_steps").get<long long>();
  r.emp_argmax_u = j.at("emp_argmax_u").get<std::string>();
  r.emp_argmax_w = j.at("emp_argmax_w").get<std::string>();
  r.emp_max_length = j.at("emp_max_length").get<long long>();
  r.pairs_checked = j.at("pairs_checked").get<long long>();
  r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  r.step_bound_ratio = j.at("step_bound_ratio").get<double>();
  r.length_bound_ratio = j.at("length_bound_ratio").get<double>();
  return r;
}

/// Serializes a report. JSON keeps every field and round-trips through
/// parse_report_json; CSV is one header plus one data row; the text form
/// omits elapsed_seconds so identical experiments print identical bytes.
inline std::string emit_report(const ExperimentReport& r, ReportFormat fmt) {
  switch (fmt) {
    case ReportFormat::Json:
      return report_to_json(r).dump(2) + "\n";
    case ReportFormat::Csv: {
      std::ostringstream out;
      out << "group,m,n,d,step_bound,length_bound,emp_max_steps,"
             "emp_argmax_u,emp_argmax_w,emp_max_length,pairs_checked,"
             "elapsed_seconds,step_bound_ratio,length_bound_ratio\n";
      out << '"' << r.group << "\"," << r.m << ',' << r.n << ',' << r.d << ','
          << r.step_bound << ',' << r.length_bound << ',' << r.emp_max_steps
          << ",\"" << r.emp_argmax_u << "\",\"" << r.emp_argmax_w << "\","
          << r.emp_max_length << ',' << r.pairs_checked << ','
          << std::setprecision(10) << r.elapsed_seconds << ','
          << detail::fixed6(r.step_bound_ratio) << ','
          << detail::fixed6(r.length_bound_ratio) << "\n";
      return out.str();
    }
    case ReportFormat::Text: {
      std::ostringstream out;
      out << "group: " << r.group << "\n"
          << "m: " << r.m << "\n"
          << "N: " << r.n << "\n"
          << "d: " << r.d << "\n"
          << "step_bound: " << r.step_bound << "\n"
          << "emp_max_steps: " << r.emp_max_steps << "\n"
          << "step_bound_ratio: " << detail::fixed6(r.step_bound_ratio) << "\n"
          << "emp_argmax_u: " << r.emp_argmax_u << "\n"
          << "emp_argmax_w: " << r.emp_argmax_w << "\n"
          << "length_bound: " << r.length_bound << "\n"
          << "emp_max_length: " << r.emp_max_length << "\n"
          << "length_bound_ratio: " << detail::fixed6(r.length_bound_ratio)
          << "\n"
          << "pairs_checked: " << r.pairs_checked << "\n";
      return out.str();
    }
  }
  throw PreconditionError("unknown report format");
}

inline std::string render_lemma_result(const LemmaResult& r) {
  std::ostringstream out;
  out << "lemma: " << r.lemma << "\n";
  if (r.lemma == 2) out << "r: " << r.r << "\n";
  out << "mode: " << (r.sampled ? "sampled" : "exhaustive") << "\n"
      << "cases: " << r.cases << "\n"
      << "n_prime: " << r.n_prime << "\n"
      << "sigma_prime: " << r.sigma_prime << "\n"
      << "lambda_prime: " << r.lambda_prime << "\n"
      << "max_steps: " << r.max_steps << " (bound " << r.step_bound << ")\n"
      << "max_length: " << r.max_length << " (bound " << r.length_bound
      << ")\n"
      << "witness: " << r.witness << "\n"
      << "result: " << (r.pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace pcc
