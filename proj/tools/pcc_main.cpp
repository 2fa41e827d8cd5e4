#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pcc/catalog.hpp"
#include "pcc/collector.hpp"
#include "pcc/errors.hpp"
#include "pcc/group.hpp"
#include "pcc/harness.hpp"
#include "pcc/pcp_format.hpp"
#include "pcc/presentation.hpp"
#include "pcc/word.hpp"

namespace {

// Exit codes: 0 ok, 1 validation failure, 2 inconsistency or step limit,
// 3 bound violation, 4 parse or usage error.
struct CliFailure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{4, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliFailure{4, "cannot write '" + path + "'"};
  out << text;
}

std::string file_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

pcc::ParsedPresentation load(const std::string& path) {
  return pcc::parse_presentation(read_file(path));
}

/// The delta to work with: the file's if present, else an inferred one.
pcc::FavourableStructure favourable_of(const pcc::ParsedPresentation& pp) {
  if (pp.delta) {
    pcc::FavourableCheck check =
        pcc::validate_favourable(pp.presentation, *pp.delta);
    if (!check.ok()) {
      std::string msg = "presentation is not favourable with the given delta:";
      for (const pcc::Violation& v : check.violations)
        msg += "\n  " + pcc::to_string(v);
      throw CliFailure{1, msg};
    }
    return *check.value;
  }
  std::optional<pcc::DeltaFunction> inferred =
      pcc::infer_delta(pp.presentation);
  if (!inferred)
    throw CliFailure{1, "no favourable delta exists for this presentation"};
  return *pcc::validate_favourable(pp.presentation, *inferred).value;
}

pcc::Word parse_word_arg(const std::string& text,
                         const pcc::PcPresentation& p) {
  try {
    return pcc::parse_word(text, p.names());
  } catch (const pcc::Error& e) {
    throw CliFailure{4, std::string("bad word: ") + e.what()};
  }
}

pcc::CollectOptions collect_options(const pcc::ParsedPresentation& pp,
                                    std::optional<long long> limit,
                                    bool keep_trace) {
  pcc::CollectOptions opts;
  opts.keep_trace = keep_trace;
  if (limit) {
    opts.step_limit = *limit;
    return opts;
  }
  if (pp.delta) {
    pcc::FavourableCheck check =
        pcc::validate_favourable(pp.presentation, *pp.delta);
    if (check.ok())
      opts.step_limit =
          pcc::default_step_limit(pcc::theorem_bounds(*check.value));
  }
  return opts;
}

int run_validate(const std::string& path) {
  std::optional<pcc::ParsedPresentation> parsed;
  try {
    parsed = load(path);
  } catch (const pcc::ParseError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return 1;
  }
  const pcc::ParsedPresentation& pp = *parsed;
  const pcc::PcPresentation& p = pp.presentation;
  std::cout << "generators: " << p.m() << "\norders:";
  for (long long e : p.orders()) std::cout << ' ' << e;
  std::cout << "\nN: " << pcc::max_normal_length(p) << "\n";

  if (pp.delta) {
    pcc::FavourableCheck check = pcc::validate_favourable(p, *pp.delta);
    if (!check.ok()) {
      std::cout << "favourable: no (with the file's delta)\n";
      for (const pcc::Violation& v : check.violations)
        std::cout << "  " << pcc::to_string(v) << "\n";
      return 1;
    }
    std::cout << "favourable: yes\ndelta:";
    for (int lv : check.value->delta.levels()) std::cout << ' ' << lv;
    std::cout << "\nd: " << check.value->d << "\n";
    return 0;
  }
  if (std::optional<pcc::DeltaFunction> inferred = pcc::infer_delta(p)) {
    std::cout << "favourable: yes (delta inferred)\ndelta:";
    for (int lv : inferred->levels()) std::cout << ' ' << lv;
    std::cout << "\nd: " << inferred->d() << "\n";
  } else {
    std::cout << "favourable: no delta exists\n";
  }
  return 0;
}

int run_collect(const std::string& path, const std::string& word_text,
                bool trace, std::optional<long long> limit) {
  const pcc::ParsedPresentation pp = load(path);
  const pcc::Word w = parse_word_arg(word_text, pp.presentation);
  const pcc::CollectOptions opts = collect_options(pp, limit, trace);
  const pcc::CollectResult r = pcc::collect_from_left(w, pp.presentation, opts);
  if (trace && r.stats.trace) {
    for (std::size_t k = 0; k < r.stats.trace->size(); ++k)
      std::cout << pcc::render_trace_line(static_cast<long long>(k + 1),
                                          (*r.stats.trace)[k], pp.presentation)
                << "\n";
  }
  std::cout << "normal_form: "
            << pcc::render_word(r.normal, pp.presentation.names()) << "\n"
            << "steps: " << r.stats.steps << "\n"
            << "max_length: " << r.stats.max_length << "\n";
  return 0;
}

int run_mul(const std::string& path, const std::string& u_text,
            const std::string& w_text, std::optional<long long> limit) {
  const pcc::ParsedPresentation pp = load(path);
  const pcc::Word uw = parse_word_arg(u_text, pp.presentation);
  const pcc::Word ww = parse_word_arg(w_text, pp.presentation);
  if (!pcc::is_normal(uw, pp.presentation))
    throw CliFailure{4, "u is not a normal word"};
  if (!pcc::is_normal(ww, pp.presentation))
    throw CliFailure{4, "w is not a normal word"};
  const pcc::CollectOptions opts = collect_options(pp, limit, false);
  const pcc::CollectResult r =
      pcc::multiply(pcc::as_normal_word(uw, pp.presentation),
                    pcc::as_normal_word(ww, pp.presentation),
                    pp.presentation, opts);
  std::cout << "product: " << pcc::render_word(r.normal, pp.presentation.names())
            << "\n"
            << "steps: " << r.stats.steps << "\n"
            << "max_length: " << r.stats.max_length << "\n";
  return 0;
}

int run_bounds(const std::string& path, std::optional<long long> pgroup) {
  const pcc::ParsedPresentation pp = load(path);
  const pcc::FavourableStructure f = favourable_of(pp);
  const pcc::TheoremBounds b = pcc::theorem_bounds(f);
  std::cout << "N: " << f.n_max << "\nd: " << f.d << "\nstep_bound: "
            << b.step_bound << "\nlength_bound: " << b.length_bound << "\n";
  if (pgroup) {
    const long long p = *pgroup;
    long long order = f.presentation.order_product();
    long long n = 0;
    while (order > 1 && order % p == 0) {
      order /= p;
      ++n;
    }
    if (order != 1)
      throw CliFailure{4, "group order is not a power of " + std::to_string(p)};
    if (n < 2)
      throw CliFailure{4, "corollary bound requires order >= p^2"};
    std::ostringstream num;
    num << std::fixed << std::setprecision(6)
        << pcc::pgroup_corollary_bound(p, n);
    std::ostringstream hall;
    hall << std::fixed << std::setprecision(6) << pcc::hall_bound(n);
    std::cout << "pgroup_corollary_bound: " << num.str() << "\n"
              << "hall_bound: " << hall.str() << "\n";
  }
  return 0;
}

int run_consistency(const std::string& path, const std::string& mode_name,
                    std::uint64_t seed) {
  const pcc::ParsedPresentation pp = load(path);
  pcc::ConsistencyMode mode;
  if (mode_name == "overlap")
    mode = pcc::ConsistencyMode::Overlap;
  else if (mode_name == "brute")
    mode = pcc::ConsistencyMode::Brute;
  else if (mode_name == "both")
    mode = pcc::ConsistencyMode::Both;
  else
    throw CliFailure{4, "unknown mode '" + mode_name + "'"};

  pcc::BruteOptions brute;
  brute.seed = seed;
  const pcc::ConsistencyReport report =
      pcc::check_consistency(pp.presentation, mode, {}, brute);
  std::cout << "mode: " << mode_name << "\n"
            << "consistent: " << (report.consistent() ? "yes" : "no") << "\n";
  for (const pcc::ConsistencyFailure& f : report.failures)
    std::cout << "failure: " << f.left_expr << " -> "
              << pcc::render_word(f.left_nf, pp.presentation.names())
              << "  vs  " << f.right_expr << " -> "
              << pcc::render_word(f.right_nf, pp.presentation.names()) << "\n";
  return report.consistent() ? 0 : 2;
}

int run_exhaust(const std::string& path, bool assert_bounds,
                const std::string& json_path, int workers, long long ceiling,
                std::optional<long long> limit) {
  const pcc::ParsedPresentation pp = load(path);
  const pcc::FavourableStructure f = favourable_of(pp);
  pcc::ExhaustOptions opts;
  opts.workers = workers;
  opts.ceiling = ceiling;
  opts.step_limit = limit;
  const pcc::ExperimentReport report =
      pcc::exhaustive_experiment(f, file_stem(path), opts);
  std::cout << pcc::emit_report(report, pcc::ReportFormat::Text);
  if (!json_path.empty())
    write_file(json_path, pcc::emit_report(report, pcc::ReportFormat::Json));
  if (assert_bounds && (report.emp_max_steps > report.step_bound ||
                        report.emp_max_length > report.length_bound)) {
    std::cerr << "bound violation: observed steps " << report.emp_max_steps
              << " (bound " << report.step_bound << "), length "
              << report.emp_max_length << " (bound " << report.length_bound
              << ")\n";
    return 3;
  }
  return 0;
}

int run_lemma(const std::string& path, int lemma, int r, std::uint64_t seed,
              long long samples, long long ceiling) {
  const pcc::ParsedPresentation pp = load(path);
  const pcc::FavourableStructure f = favourable_of(pp);
  if (f.d <= 1)
    throw CliFailure{1, "derived presentation undefined for soluble bound 1"};
  pcc::LemmaOptions opts;
  opts.seed = seed;
  opts.samples = samples;
  opts.ceiling = ceiling;
  pcc::LemmaResult result;
  if (lemma == 2)
    result = pcc::lemma2_check(f, r, opts);
  else if (lemma == 3)
    result = pcc::lemma3_check(f, opts);
  else
    throw CliFailure{4, "--lemma must be 2 or 3"};
  std::cout << pcc::render_lemma_result(result);
  return result.pass ? 0 : 3;
}

int run_catalog_list() {
  for (const std::string& name : pcc::catalog_list()) std::cout << name << "\n";
  return 0;
}

int run_catalog_emit(const std::string& name, const std::string& out_path) {
  const pcc::CatalogEntry entry = pcc::catalog_get(name);
  const std::string text = pcc::serialize_presentation(
      entry.favourable.presentation, entry.favourable.delta);
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  return 0;
}

int run_table(const std::string& path, const std::string& csv_path,
              long long ceiling) {
  const pcc::ParsedPresentation pp = load(path);
  const pcc::CayleyTable t = pcc::cayley_table(pp.presentation, {}, ceiling);
  std::cout << "order: " << t.order << "\n"
            << "total_steps: " << t.total_steps << "\n"
            << "max_steps: " << t.max_steps << "\n"
            << "max_length: " << t.max_length << "\n";
  if (!csv_path.empty())
    write_file(csv_path, pcc::render_cayley_csv(t, pp.presentation));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collection from the left over finite polycyclic presentations"};
  app.require_subcommand(1);
  int rc = 0;

  std::string file, word_u, word_w, mode = "both", json_path, csv_path,
              catalog_name, out_path;
  bool trace = false, assert_bounds = false;
  int workers = 1, lemma_no = 0, lemma_r = 2;
  long long ceiling = 4096, samples = 10000;
  std::uint64_t seed = 1;
  std::optional<long long> limit;
  long long limit_value = 0;
  std::optional<long long> pgroup;
  long long pgroup_value = 0;

  auto* validate = app.add_subcommand("validate", "check a presentation file");
  validate->add_option("file", file)->required();
  validate->callback([&] { rc = run_validate(file); });

  auto* collect = app.add_subcommand("collect", "collect a word to normal form");
  collect->add_option("file", file)->required();
  collect->add_option("--word", word_w, "word to collect")->required();
  collect->add_flag("--trace", trace, "print one line per step");
  auto* collect_limit = collect->add_option("--limit", limit_value, "step cutoff");
  collect->callback([&] {
    if (*collect_limit) limit = limit_value;
    rc = run_collect(file, word_w, trace, limit);
  });

  auto* mul = app.add_subcommand("mul", "multiply two normal words");
  mul->add_option("file", file)->required();
  mul->add_option("-u", word_u, "left factor (normal word)")->required();
  mul->add_option("-w", word_w, "right factor (normal word)")->required();
  auto* mul_limit = mul->add_option("--limit", limit_value, "step cutoff");
  mul->callback([&] {
    if (*mul_limit) limit = limit_value;
    rc = run_mul(file, word_u, word_w, limit);
  });

  auto* bounds = app.add_subcommand("bounds", "print the closed-form bounds");
  bounds->add_option("file", file)->required();
  auto* pg = bounds->add_option("--pgroup", pgroup_value,
                                "prime p for the p-group corollary bound");
  bounds->callback([&] {
    if (*pg) pgroup = pgroup_value;
    rc = run_bounds(file, pgroup);
  });

  auto* consistency = app.add_subcommand("consistency", "overlap/brute checks");
  consistency->add_option("file", file)->required();
  consistency->add_option("--mode", mode, "overlap|brute|both (default both)");
  consistency->add_option("--seed", seed, "sampling seed for brute mode");
  consistency->callback([&] { rc = run_consistency(file, mode, seed); });

  auto* exhaust = app.add_subcommand(
      "exhaust", "exhaustive pair experiment against the bounds");
  exhaust->add_option("file", file)->required();
  exhaust->add_flag("--assert-bounds", assert_bounds,
                    "exit 3 if a bound is exceeded");
  exhaust->add_option("--json", json_path, "also write a JSON report");
  exhaust->add_option("--workers", workers, "worker thread count");
  exhaust->add_option("--ceiling", ceiling, "maximum group order");
  auto* exhaust_limit = exhaust->add_option("--limit", limit_value, "step cutoff");
  exhaust->callback([&] {
    if (*exhaust_limit) limit = limit_value;
    rc = run_exhaust(file, assert_bounds, json_path, workers, ceiling, limit);
  });

  auto* lemma = app.add_subcommand("lemma", "empirical lemma-level checks");
  lemma->add_option("file", file)->required();
  lemma->add_option("--lemma", lemma_no, "2 or 3")->required();
  lemma->add_option("--r", lemma_r, "factor count for lemma 2 (default 2)");
  lemma->add_option("--seed", seed, "sampling seed");
  lemma->add_option("--samples", samples, "sample count beyond the budget");
  lemma->add_option("--ceiling", ceiling, "exhaustive tuple budget");
  lemma->callback(
      [&] { rc = run_lemma(file, lemma_no, lemma_r, seed, samples, ceiling); });

  auto* catalog = app.add_subcommand("catalog", "built-in presentations");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "list entry names");
  list->callback([&] { rc = run_catalog_list(); });
  auto* emit = catalog->add_subcommand("emit", "write an entry as a file");
  emit->add_option("name", catalog_name)->required();
  emit->add_option("--out", out_path, "output path (default stdout)");
  emit->callback([&] { rc = run_catalog_emit(catalog_name, out_path); });

  auto* table = app.add_subcommand("table", "full Cayley table");
  table->add_option("file", file)->required();
  table->add_option("--csv", csv_path, "write the table as CSV");
  table->add_option("--ceiling", ceiling, "maximum group order");
  table->callback([&] { rc = run_table(file, csv_path, ceiling); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  } catch (const CliFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const pcc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const pcc::StepLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pcc::CeilingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const pcc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return rc;
}
