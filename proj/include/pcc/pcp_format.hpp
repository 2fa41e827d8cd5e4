#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pcc/errors.hpp"
#include "pcc/presentation.hpp"
#include "pcc/word.hpp"

namespace pcc {

struct ParsedPresentation {
  PcPresentation presentation;
  std::optional<DeltaFunction> delta;
};

namespace detail {

inline std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline long long parse_int(const std::string& tok, int line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer, got '" + tok + "'");
  }
  if (used != tok.size())
    throw ParseError(line, "expected integer, got '" + tok + "'");
  return v;
}

}  // namespace detail

/// Parses the line-oriented presentation format:
///
///   pcp 1
///   gens 2
///   names a b
///   orders 2 3
///   pow 1 = b            # a_i^{e_i} = word, omitted means identity
///   conj 2 1 = b^2       # a_j a_i = a_i word, omitted means word = a_j
///   delta 1 2            # optional level function
///
/// '#' starts a comment; blank lines are skipped. Directives must appear
/// in the order above (pow/conj lines may interleave). Errors carry the
/// 1-based line number.
inline ParsedPresentation parse_presentation(const std::string& text) {
  std::optional<PcPresentation> pres;
  std::vector<std::string> names;
  int m = -1;
  bool saw_version = false;
  bool saw_orders = false;
  std::vector<bool> pow_seen;
  std::vector<std::vector<bool>> conj_seen;
  std::optional<DeltaFunction> delta;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto pos = raw.find('#'); pos != std::string::npos) raw.resize(pos);
    std::vector<std::string> toks = detail::split_tokens(raw);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];

    if (kw == "pcp") {
      if (saw_version) throw ParseError(lineno, "duplicate pcp directive");
      if (toks.size() != 2 || toks[1] != "1")
        throw ParseError(lineno, "expected 'pcp 1'");
      saw_version = true;
      continue;
    }
    if (!saw_version) throw ParseError(lineno, "file must start with 'pcp 1'");

    if (kw == "gens") {
      if (m >= 0) throw ParseError(lineno, "duplicate gens directive");
      if (toks.size() != 2) throw ParseError(lineno, "expected 'gens <m>'");
      const long long v = detail::parse_int(toks[1], lineno);
      if (v < 1) throw ParseError(lineno, "gens must be >= 1");
      m = static_cast<int>(v);
      continue;
    }
    if (m < 0) throw ParseError(lineno, "gens must precede '" + kw + "'");

    if (kw == "names") {
      if (!names.empty()) throw ParseError(lineno, "duplicate names directive");
      if (saw_orders) throw ParseError(lineno, "names must precede orders");
      if (static_cast<int>(toks.size()) != m + 1)
        throw ParseError(lineno, "expected " + std::to_string(m) + " names");
      names.assign(toks.begin() + 1, toks.end());
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == "id")
          throw ParseError(lineno, "'id' is reserved and cannot name a generator");
        for (std::size_t j = 0; j < i; ++j)
          if (names[j] == names[i])
            throw ParseError(lineno, "duplicate generator name '" + names[i] + "'");
      }
      continue;
    }

    if (kw == "orders") {
      if (saw_orders) throw ParseError(lineno, "duplicate orders directive");
      if (static_cast<int>(toks.size()) != m + 1)
        throw ParseError(lineno, "expected " + std::to_string(m) + " orders");
      std::vector<long long> orders;
      for (int i = 1; i <= m; ++i) {
        const long long e = detail::parse_int(toks[static_cast<std::size_t>(i)], lineno);
        if (e < 2) throw ParseError(lineno, "relative order below 2");
        orders.push_back(e);
      }
      if (names.empty()) names = PcPresentation::default_names(m);
      pres.emplace(names, std::move(orders));
      saw_orders = true;
      pow_seen.assign(static_cast<std::size_t>(m), false);
      conj_seen.assign(static_cast<std::size_t>(m),
                       std::vector<bool>(static_cast<std::size_t>(m), false));
      continue;
    }
    if (!saw_orders)
      throw ParseError(lineno, "orders must precede '" + kw + "'");

    auto rhs_word = [&](std::size_t eq_at) -> Word {
      if (eq_at >= toks.size() || toks[eq_at] != "=")
        throw ParseError(lineno, "expected '='");
      std::string rhs;
      for (std::size_t k = eq_at + 1; k < toks.size(); ++k) {
        if (k > eq_at + 1) rhs += ' ';
        rhs += toks[k];
      }
      if (rhs.empty()) throw ParseError(lineno, "missing right-hand side");
      try {
        return parse_word(rhs, pres->names());
      } catch (const Error& e) {
        throw ParseError(lineno, e.what());
      }
    };

    if (kw == "pow") {
      if (toks.size() < 4) throw ParseError(lineno, "expected 'pow <i> = <word>'");
      const long long i1 = detail::parse_int(toks[1], lineno);
      if (i1 < 1 || i1 > m)
        throw ParseError(lineno, "generator index out of range");
      const int i = static_cast<int>(i1) - 1;
      if (pow_seen[static_cast<std::size_t>(i)])
        throw ParseError(lineno, "duplicate pow " + std::to_string(i1));
      pow_seen[static_cast<std::size_t>(i)] = true;
      pres->set_power_rhs(i, rhs_word(2));
      continue;
    }

    if (kw == "conj") {
      if (toks.size() < 5)
        throw ParseError(lineno, "expected 'conj <j> <i> = <word>'");
      const long long j1 = detail::parse_int(toks[1], lineno);
      const long long i1 = detail::parse_int(toks[2], lineno);
      if (i1 < 1 || j1 < 1 || i1 > m || j1 > m)
        throw ParseError(lineno, "generator index out of range");
      if (!(i1 < j1)) throw ParseError(lineno, "conj requires j > i");
      const int i = static_cast<int>(i1) - 1;
      const int j = static_cast<int>(j1) - 1;
      if (conj_seen[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
        throw ParseError(lineno, "duplicate conj " + std::to_string(j1) + " " +
                                     std::to_string(i1));
      conj_seen[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
      pres->set_conj_rhs(i, j, rhs_word(3));
      continue;
    }

    if (kw == "delta") {
      if (delta.has_value()) throw ParseError(lineno, "duplicate delta directive");
      if (static_cast<int>(toks.size()) != m + 1)
        throw ParseError(lineno, "expected " + std::to_string(m) + " levels");
      std::vector<int> levels;
      for (int i = 1; i <= m; ++i)
        levels.push_back(static_cast<int>(
            detail::parse_int(toks[static_cast<std::size_t>(i)], lineno)));
      const std::vector<Violation> errs = DeltaFunction::validate(levels);
      if (!errs.empty()) throw ParseError(lineno, to_string(errs.front()));
      delta = DeltaFunction(std::move(levels));
      continue;
    }

    throw ParseError(lineno, "unknown directive '" + kw + "'");
  }

  if (!saw_version) throw ParseError(lineno, "empty input, expected 'pcp 1'");
  if (!pres.has_value()) throw ParseError(lineno, "missing orders directive");

  const std::vector<Violation> errs = validate_structure(*pres);
  if (!errs.empty()) throw ParseError(lineno, to_string(errs.front()));
  return ParsedPresentation{std::move(*pres), std::move(delta)};
}

/// Canonical text form: directives in fixed order, default relations
/// omitted, one relation per line, conj grouped by i then j ascending.
/// parse_presentation(serialize_presentation(p)) reproduces the input.
inline std::string serialize_presentation(
    const PcPresentation& p, const std::optional<DeltaFunction>& delta = {}) {
  std::ostringstream out;
  const int m = p.m();
  out << "pcp 1\n";
  out << "gens " << m << "\n";
  out << "names";
  for (const std::string& n : p.names()) out << ' ' << n;
  out << "\n";
  out << "orders";
  for (long long e : p.orders()) out << ' ' << e;
  out << "\n";
  for (int i = 0; i < m; ++i)
    if (!p.is_default_power(i))
      out << "pow " << (i + 1) << " = "
          << render_word(p.power_rhs(i), p.names()) << "\n";
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (!p.is_default_conj(i, j))
        out << "conj " << (j + 1) << ' ' << (i + 1) << " = "
            << render_word(p.conj_rhs(i, j), p.names()) << "\n";
  if (delta.has_value()) {
    out << "delta";
    for (int lv : delta->levels()) out << ' ' << lv;
    out << "\n";
  }
  return out.str();
}

}  // namespace pcc
