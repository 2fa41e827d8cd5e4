#include <algorithm>
#include <optional>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "pcc/collector.hpp"

using pcc::CollectOptions;
using pcc::PcPresentation;
using pcc::ReductionSite;
using pcc::SiteKind;
using pcc::Word;

namespace {

PcPresentation s3() {
  PcPresentation p({"a", "b"}, {2, 3});
  p.set_conj_rhs(0, 1, Word::letter(1, 2));
  return p;
}

PcPresentation c6() { return PcPresentation({"a"}, {6}); }

PcPresentation c4chain() {
  PcPresentation p({"a", "b"}, {2, 2});
  p.set_power_rhs(0, Word::letter(1));
  return p;
}

}  // namespace

TEST_CASE("is_normal recognizes exponent bounds and generator order") {
  PcPresentation p = s3();
  CHECK(pcc::is_normal(Word(), p));
  CHECK(pcc::is_normal(pcc::concat(Word::letter(0), Word::letter(1, 2)), p));
  CHECK_FALSE(pcc::is_normal(Word::letter(0, 2), p));
  CHECK_FALSE(pcc::is_normal(Word::letter(1, 3), p));
  CHECK_FALSE(pcc::is_normal(pcc::concat(Word::letter(1), Word::letter(0)), p));
}

TEST_CASE("leftmost site on a normal word is absent") {
  CHECK_FALSE(pcc::leftmost_reducible(Word(), s3()).has_value());
  CHECK_FALSE(pcc::leftmost_reducible(Word::letter(1, 2), s3()).has_value());
}

TEST_CASE("leftmost site finds a power at the start of its run") {
  std::optional<ReductionSite> site =
      pcc::leftmost_reducible(Word::letter(0, 10), c6());
  REQUIRE(site.has_value());
  CHECK(site->kind == SiteKind::Power);
  CHECK(site->gen_i == 0);
  CHECK(site->start == 1);

  // Inside a longer word the position is absolute.
  Word w = pcc::concat(Word::letter(0), Word::letter(1, 3));
  std::optional<ReductionSite> deep = pcc::leftmost_reducible(w, s3());
  REQUIRE(deep.has_value());
  CHECK(deep->kind == SiteKind::Power);
  CHECK(deep->gen_i == 1);
  CHECK(deep->start == 2);
}

TEST_CASE("leftmost site finds a descent at a run boundary") {
  Word w = pcc::concat(Word::letter(1), Word::letter(0));  // b a
  std::optional<ReductionSite> site = pcc::leftmost_reducible(w, s3());
  REQUIRE(site.has_value());
  CHECK(site->kind == SiteKind::Conjugate);
  CHECK(site->gen_i == 0);
  CHECK(site->gen_j == 1);
  CHECK(site->start == 1);

  // b^2 a: the descent sits on the last letter of the b run.
  Word w2 = pcc::concat(Word::letter(1, 2), Word::letter(0));
  std::optional<ReductionSite> site2 = pcc::leftmost_reducible(w2, s3());
  REQUIRE(site2.has_value());
  CHECK(site2->kind == SiteKind::Conjugate);
  CHECK(site2->start == 2);
}

TEST_CASE("a power inside a run precedes the descent at its end") {
  // b^3 a: the b^3 power at position 1 is left of the b a descent.
  Word w = pcc::concat(Word::letter(1, 3), Word::letter(0));
  std::optional<ReductionSite> site = pcc::leftmost_reducible(w, s3());
  REQUIRE(site.has_value());
  CHECK(site->kind == SiteKind::Power);
  CHECK(site->start == 1);
}

TEST_CASE("apply_at rewrites exactly the chosen site") {
  PcPresentation p = s3();
  Word w = pcc::concat(Word::letter(1), Word::letter(0));  // b a
  ReductionSite site{SiteKind::Conjugate, 0, 1, 1};
  Word out = pcc::apply_at(w, site, p);
  CHECK(out == pcc::concat(Word::letter(0), Word::letter(1, 2)));  // a b^2

  Word pw = Word::letter(0, 10);  // a^10 over C6
  ReductionSite psite{SiteKind::Power, 0, 0, 1};
  CHECK(pcc::apply_at(pw, psite, c6()) == Word::letter(0, 4));
}

TEST_CASE("apply_at rejects sites that do not match the word") {
  PcPresentation p = s3();
  Word w = pcc::concat(Word::letter(1), Word::letter(0));
  CHECK_THROWS_AS(
      pcc::apply_at(w, ReductionSite{SiteKind::Power, 1, 1, 1}, p),
      pcc::PreconditionError);
  CHECK_THROWS_AS(
      pcc::apply_at(w, ReductionSite{SiteKind::Conjugate, 0, 1, 9}, p),
      pcc::PreconditionError);
}

TEST_CASE("collection_step requires a reducible word") {
  CHECK_THROWS_AS(pcc::collection_step(Word::letter(0), s3()),
                  pcc::PreconditionError);
  CHECK(pcc::collection_step(Word::letter(1, 3), s3()) == Word());
}

TEST_CASE("as_normal_word converts and validates") {
  PcPresentation p = s3();
  pcc::NormalWord u =
      pcc::as_normal_word(pcc::concat(Word::letter(0), Word::letter(1)), p);
  CHECK(u.exponents() == std::vector<long long>{1, 1});
  CHECK_THROWS_AS(pcc::as_normal_word(Word::letter(1, 3), p),
                  pcc::PreconditionError);
}

TEST_CASE("collect b a b over S3") {
  PcPresentation p = s3();
  Word w = pcc::parse_word("b a b", p.names());
  pcc::CollectResult r = pcc::collect_from_left(w, p);
  CHECK(pcc::render_word(r.normal, p.names()) == "a");
  CHECK(r.stats.steps == 2);
  CHECK(r.stats.max_length == 4);
}

TEST_CASE("collect high powers over C6") {
  PcPresentation p = c6();
  pcc::CollectResult r = pcc::collect_from_left(Word::letter(0, 10), p);
  CHECK(r.normal.exponent(0) == 4);
  CHECK(r.stats.steps == 1);
  CHECK(r.stats.max_length == 10);

  pcc::CollectResult r2 = pcc::collect_from_left(Word::letter(0, 7), p);
  CHECK(r2.normal.exponent(0) == 1);
  CHECK(r2.stats.steps == 1);
}

TEST_CASE("collect (a b)(a b) over the C4 chain") {
  // a generates C4 with a^2 = b, so a b is a^3 and (a b)^2 = a^6 = b.
  PcPresentation p = c4chain();
  Word ab = pcc::parse_word("a b", p.names());
  pcc::CollectResult r = pcc::collect_from_left(pcc::concat(ab, ab), p);
  CHECK(r.normal.exponents() == std::vector<long long>{0, 1});
  CHECK(r.stats.steps == 3);
  CHECK(r.stats.max_length == 4);  // 2N with N = 2
}

TEST_CASE("collect is idempotent on its own output") {
  PcPresentation p = s3();
  for (const char* text : {"b a b", "a b a b^2", "b^2 a"}) {
    pcc::CollectResult first =
        pcc::collect_from_left(pcc::parse_word(text, p.names()), p);
    pcc::CollectResult again =
        pcc::collect_from_left(first.normal.to_word(), p);
    CHECK(again.stats.steps == 0);
    CHECK(again.normal.exponents() == first.normal.exponents());
  }
}

TEST_CASE("step limit aborts long collections") {
  CollectOptions opts;
  opts.step_limit = 1;
  PcPresentation p = s3();
  CHECK_THROWS_AS(
      pcc::collect_from_left(pcc::parse_word("b a b", p.names()), p, opts),
      pcc::StepLimitError);
  CHECK_THROWS_AS(pcc::collect_from_left(Word(), p, CollectOptions{0, false}),
                  pcc::PreconditionError);
}

TEST_CASE("traces replay to the same normal form") {
  PcPresentation p = s3();
  CollectOptions opts;
  opts.keep_trace = true;
  for (const char* text : {"b a b", "b^2 a b^2", "a b^2 a b"}) {
    Word w = pcc::parse_word(text, p.names());
    pcc::CollectResult r = pcc::collect_from_left(w, p, opts);
    REQUIRE(r.stats.trace.has_value());
    CHECK(r.stats.trace->size() ==
          static_cast<std::size_t>(r.stats.steps));
    Word replayed = pcc::replay_trace(w, p, *r.stats.trace);
    CHECK(replayed == r.normal.to_word());
  }
}

TEST_CASE("trace entries recompute the recorded statistics") {
  PcPresentation p = s3();
  CollectOptions opts;
  opts.keep_trace = true;
  Word w = pcc::parse_word("b^2 a b^2", p.names());
  pcc::CollectResult r = pcc::collect_from_left(w, p, opts);
  long long max_len = w.letter_length();
  Word cur = w;
  for (const pcc::TraceEntry& e : *r.stats.trace) {
    CHECK(cur.letter_length() == e.length_before);
    cur = pcc::apply_at(cur, e.site, p);
    max_len = std::max(max_len, cur.letter_length());
  }
  CHECK(max_len == r.stats.max_length);
  CHECK(cur == r.normal.to_word());
}

TEST_CASE("replay rejects a trace for a different word") {
  PcPresentation p = s3();
  CollectOptions opts;
  opts.keep_trace = true;
  Word w = pcc::parse_word("b a b", p.names());
  pcc::CollectResult r = pcc::collect_from_left(w, p, opts);
  Word other = pcc::parse_word("b^2 a b", p.names());
  CHECK_THROWS_AS(pcc::replay_trace(other, p, *r.stats.trace),
                  pcc::PreconditionError);
}

TEST_CASE("trace lines spell the relation instance") {
  PcPresentation p = s3();
  CollectOptions opts;
  opts.keep_trace = true;
  pcc::CollectResult r =
      pcc::collect_from_left(pcc::parse_word("b a b", p.names()), p, opts);
  REQUIRE(r.stats.trace->size() == 2);
  CHECK(pcc::render_trace_line(1, (*r.stats.trace)[0], p) ==
        "step 1: pos 1, b a -> a b^2, len 4");
  CHECK(pcc::render_trace_line(2, (*r.stats.trace)[1], p) ==
        "step 2: pos 2, b^3 -> id, len 1");
}
