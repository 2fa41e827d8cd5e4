// Acceptance harness: nine independent criteria, one verdict line each.
// Exits nonzero if any criterion fails; diagnostics go to stderr.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "pcc/catalog.hpp"
#include "pcc/group.hpp"
#include "pcc/harness.hpp"
#include "pcc/pcp_format.hpp"

#include "test_util.hpp"

using pcc::CatalogEntry;
using pcc::ExperimentReport;
using pcc::NormalWord;
using pcc::PcPresentation;

namespace {

int g_failures = 0;

void verdict(int k, const std::string& label, bool ok) {
  std::printf("criterion %d [%s]: %s\n", k, label.c_str(),
              ok ? "PASS" : "FAIL");
  if (!ok) ++g_failures;
}

void diag(const std::string& msg) { std::cerr << "  " << msg << "\n"; }

std::vector<std::string> entry_names() {
  std::vector<std::string> names{"C6", "C4chain", "S3", "D8", "Q8", "H27",
                                 "S4"};
  for (int n = 2; n <= 12; ++n)
    if (n != 6) names.push_back("C" + std::to_string(n));
  return names;
}

// The exhaustive pair runs feed criteria 1, 2, 3 and 6.
std::map<std::string, ExperimentReport> run_all_pairs() {
  std::map<std::string, ExperimentReport> out;
  for (const std::string& name : entry_names()) {
    CatalogEntry e = pcc::catalog_get(name);
    out.emplace(name, pcc::exhaustive_experiment(e.favourable, name));
  }
  return out;
}

bool check_step_bounds(const std::map<std::string, ExperimentReport>& reps,
                       double elapsed) {
  bool ok = true;
  for (const auto& [name, r] : reps) {
    if (r.emp_max_steps > r.step_bound) {
      diag(name + ": " + std::to_string(r.emp_max_steps) + " steps exceed " +
           std::to_string(r.step_bound));
      ok = false;
    }
    const long long order = pcc::catalog_get(name).known_order;
    if (r.pairs_checked != order * order) {
      diag(name + ": pair count mismatch");
      ok = false;
    }
  }
  const ExperimentReport& s3 = reps.at("S3");
  if (s3.pairs_checked != 36 || s3.step_bound != 243) {
    diag("S3 run shape off: pairs " + std::to_string(s3.pairs_checked));
    ok = false;
  }
  const ExperimentReport& h27 = reps.at("H27");
  if (h27.pairs_checked != 729 || h27.step_bound != 7776) {
    diag("H27 run shape off: pairs " + std::to_string(h27.pairs_checked));
    ok = false;
  }
  if (elapsed >= 10.0) {
    diag("exhaustive runs took " + std::to_string(elapsed) + " s");
    ok = false;
  }
  return ok;
}

bool check_length_bounds(const std::map<std::string, ExperimentReport>& reps) {
  bool ok = true;
  for (const auto& [name, r] : reps) {
    const long long bound =
        r.d == 1 ? 2 * r.n : 2 * (r.d - 1) * r.n * r.n;
    if (r.length_bound != bound) {
      diag(name + ": stored length bound disagrees");
      ok = false;
    }
    if (r.emp_max_length > bound) {
      diag(name + ": length " + std::to_string(r.emp_max_length) +
           " exceeds " + std::to_string(bound));
      ok = false;
    }
  }
  if (reps.at("C6").emp_max_length != 10) {
    diag("C6 must meet the 2N length bound exactly");
    ok = false;
  }
  if (reps.at("S3").emp_max_length > 18 ||
      reps.at("H27").emp_max_length > 72) {
    diag("S3/H27 length bound breached");
    ok = false;
  }
  return ok;
}

bool check_abelian_steps(const std::map<std::string, ExperimentReport>& reps) {
  bool ok = true;
  for (const auto& [name, r] : reps) {
    if (r.d != 1) continue;
    if (r.emp_max_steps > r.n * r.n) {
      diag(name + ": abelian steps exceed N^2");
      ok = false;
    }
  }
  if (reps.at("C6").emp_max_steps != 1) {
    diag("C6 pair collection must take exactly one step");
    ok = false;
  }
  return ok;
}

bool check_lemmas() {
  bool ok = true;
  for (const char* name : {"S3", "D8", "Q8", "H27"}) {
    CatalogEntry e = pcc::catalog_get(name);
    for (int r = 2; r <= 4; ++r) {
      pcc::LemmaResult res = pcc::lemma2_check(e.favourable, r);
      if (!res.pass) {
        diag(std::string(name) + ": lemma 2 fails at r = " +
             std::to_string(r) + " with witness " + res.witness);
        ok = false;
      }
    }
    pcc::LemmaResult l3 = pcc::lemma3_check(e.favourable);
    if (!l3.pass) {
      diag(std::string(name) + ": lemma 3 fails with witness " + l3.witness);
      ok = false;
    }
  }
  pcc::LemmaResult s3 = pcc::lemma2_check(pcc::catalog_get("S3").favourable, 2);
  if (s3.sigma_prime != 1 || s3.cases != 9) {
    diag("S3 derived run must measure sigma' = 1 over 9 pairs");
    ok = false;
  }
  return ok;
}

bool check_derived() {
  bool ok = true;
  for (const std::string& name : entry_names()) {
    CatalogEntry e = pcc::catalog_get(name);
    if (e.favourable.d <= 1) continue;
    pcc::FavourableStructure d = pcc::derived_presentation(e.favourable);
    pcc::FavourableCheck again =
        pcc::validate_favourable(d.presentation, d.delta);
    if (!again.ok()) {
      diag(name + ": derived presentation is not favourable");
      ok = false;
    }
    if (d.d != e.favourable.d - 1) {
      diag(name + ": derived soluble bound is not d - 1");
      ok = false;
    }
    if (d.n_max > e.favourable.n_max - 1) {
      diag(name + ": derived N' exceeds N - 1");
      ok = false;
    }
  }
  return ok;
}

bool check_corollary(const std::map<std::string, ExperimentReport>& reps) {
  bool ok = true;
  const double c23 = pcc::pgroup_corollary_bound(2, 3);
  if (std::abs(c23 - 556.9) > 0.1) {
    diag("pgroup_corollary_bound(2,3) = " + std::to_string(c23));
    ok = false;
  }
  if (static_cast<double>(reps.at("D8").emp_max_steps) > c23 ||
      static_cast<double>(reps.at("Q8").emp_max_steps) > c23) {
    diag("measured 2-group maxima exceed the corollary bound");
    ok = false;
  }
  if (pcc::hall_bound(3) != 2.0) {
    diag("hall_bound(3) must be exactly 2");
    ok = false;
  }
  // d against the derived length bound, n = composition length.
  for (const std::string& name : entry_names()) {
    CatalogEntry e = pcc::catalog_get(name);
    long long order = e.known_order;
    long long p = 0;
    for (long long q = 2; q <= order; ++q)
      if (order % q == 0) {
        p = q;
        break;
      }
    long long n = 0;
    long long rest = order;
    while (rest % p == 0) {
      rest /= p;
      ++n;
    }
    if (rest != 1) continue;  // not a p-group
    if (n == 1) {
      if (e.favourable.d != 1) {
        diag(name + ": cyclic of prime order must have d = 1");
        ok = false;
      }
    } else if (static_cast<double>(e.favourable.d) > pcc::hall_bound(n)) {
      diag(name + ": d exceeds hall_bound(" + std::to_string(n) + ")");
      ok = false;
    }
  }
  return ok;
}

bool check_ground_truth() {
  bool ok = true;
  for (const char* name : {"S3", "D8", "Q8", "S4"}) {
    CatalogEntry e = pcc::catalog_get(name);
    const PcPresentation& p = e.favourable.presentation;
    pcc::CayleyTable t = pcc::cayley_table(p);
    for (long long i = 0; i < t.order && ok; ++i) {
      for (long long j = 0; j < t.order; ++j) {
        pcc::OracleElement expect =
            compose(e.oracle->image(t.words[static_cast<std::size_t>(i)]),
                    e.oracle->image(t.words[static_cast<std::size_t>(j)]));
        const NormalWord& got = t.words[static_cast<std::size_t>(t.at(i, j))];
        if (pcc::oracle_key(e.oracle->image(got)) !=
            pcc::oracle_key(expect)) {
          diag(std::string(name) + ": table disagrees with the oracle at (" +
               std::to_string(i) + "," + std::to_string(j) + ")");
          ok = false;
          break;
        }
      }
    }
    if (!pcc::check_consistency(p, pcc::ConsistencyMode::Overlap)
             .consistent() ||
        !pcc::check_consistency(p, pcc::ConsistencyMode::Brute).consistent()) {
      diag(std::string(name) + ": consistency check failed");
      ok = false;
    }
  }

  pcc::ParsedPresentation broken = pcc::parse_presentation(
      testutil::read_file(testutil::fixture_path("inconsistent_c2c2.pcp")));
  pcc::ConsistencyReport rep = pcc::check_consistency(
      broken.presentation, pcc::ConsistencyMode::Overlap);
  if (rep.consistent()) {
    diag("the collapsing fixture was not flagged");
    ok = false;
  } else {
    const pcc::ConsistencyFailure& f = rep.failures.front();
    if (f.left_expr != "b (a^2)" || f.right_expr != "(b a) a") {
      diag("unexpected witness: " + f.left_expr + " vs " + f.right_expr);
      ok = false;
    }
  }
  return ok;
}

bool check_group_laws() {
  bool ok = true;
  for (const std::string& name : entry_names()) {
    CatalogEntry e = pcc::catalog_get(name);
    const PcPresentation& p = e.favourable.presentation;
    std::vector<NormalWord> words = pcc::enumerate_normal_words(p);
    for (const NormalWord& u : words) {
      NormalWord v = pcc::inverse(u, p);
      if (!pcc::multiply(u, v, p).normal.is_identity() ||
          !pcc::multiply(v, u, p).normal.is_identity()) {
        diag(name + ": inverse law fails");
        ok = false;
      }
    }
    // All entries fit under the full-associativity threshold; the brute
    // checker covers identity rows and every triple.
    if (!pcc::check_consistency(p, pcc::ConsistencyMode::Brute).consistent()) {
      diag(name + ": group law check failed");
      ok = false;
    }
  }
  // Order 100 exceeds the full threshold, so associativity is sampled
  // with at least 10^5 triples.
  pcc::BruteOptions brute;
  brute.sample_count = 100000;
  CatalogEntry big = pcc::catalog_get("C100");
  if (!pcc::check_consistency(big.favourable.presentation,
                              pcc::ConsistencyMode::Brute, {}, brute)
           .consistent()) {
    diag("sampled associativity failed on C100");
    ok = false;
  }

  for (const char* name : {"S3", "Q8", "C12"}) {
    CatalogEntry e = pcc::catalog_get(name);
    const PcPresentation& p = e.favourable.presentation;
    for (const NormalWord& u : pcc::enumerate_normal_words(p)) {
      NormalWord naive = NormalWord::identity(p.m());
      for (long long k = 0; k <= 2 * e.known_order; ++k) {
        if (pcc::power(u, k, p).exponents() != naive.exponents()) {
          diag(std::string(name) + ": power mismatch at k = " +
               std::to_string(k));
          ok = false;
          break;
        }
        naive = pcc::multiply(naive, u, p).normal;
      }
    }
  }
  return ok;
}

bool check_determinism() {
  bool ok = true;
  for (const char* fixture : {"S3.pcp", "H27.pcp"}) {
    const std::string path = testutil::fixture_path(fixture);
    testutil::CliRun one = testutil::run_cli("exhaust " + path + " --workers 1");
    testutil::CliRun two = testutil::run_cli("exhaust " + path + " --workers 2");
    testutil::CliRun eight =
        testutil::run_cli("exhaust " + path + " --workers 8");
    if (one.exit_code != 0 || one.output != two.output ||
        one.output != eight.output) {
      diag(std::string(fixture) + ": exhaust output varies with workers");
      ok = false;
    }
  }

  for (const char* name : {"S3", "D8"}) {
    CatalogEntry e = pcc::catalog_get(name);
    const PcPresentation& p = e.favourable.presentation;
    pcc::CollectOptions opts;
    opts.keep_trace = true;
    std::vector<NormalWord> words = pcc::enumerate_normal_words(p);
    for (const NormalWord& u : words) {
      for (const NormalWord& w : words) {
        pcc::Word start = pcc::concat(u.to_word(), w.to_word());
        pcc::CollectResult r = pcc::collect_from_left(start, p, opts);
        if (pcc::replay_trace(start, p, *r.stats.trace) !=
            r.normal.to_word()) {
          diag(std::string(name) + ": trace replay diverged");
          ok = false;
        }
      }
    }
  }
  return ok;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  std::map<std::string, ExperimentReport> reps = run_all_pairs();
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  verdict(1, "theorem step bound", check_step_bounds(reps, elapsed));
  verdict(2, "theorem length bound", check_length_bounds(reps));
  verdict(3, "abelian step refinement", check_abelian_steps(reps));
  verdict(4, "lemma 2 and 3 empirical checks", check_lemmas());
  verdict(5, "derived presentation structure", check_derived());
  verdict(6, "p-group corollary and hall bound", check_corollary(reps));
  verdict(7, "oracle ground truth and consistency", check_ground_truth());
  verdict(8, "algebraic laws", check_group_laws());
  verdict(9, "determinism", check_determinism());

  if (g_failures) {
    std::printf("%d of 9 criteria failed\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
