#pragma once

#include <cctype>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pcc/errors.hpp"

namespace pcc {

// Generators are identified by 0-based index throughout the API; text
// formats, trace output and diagnostics use names and 1-based numbering.

struct Run {
  int gen = 0;
  long long exp = 0;

  bool operator==(const Run&) const = default;
};

/// A non-negative word in run form. Canonical: adjacent runs carry
/// distinct generators and every exponent is >= 1. The empty word is the
/// identity. Letter length is the sum of run exponents.
class Word {
 public:
  Word() = default;

  explicit Word(std::vector<Run> runs) : runs_(canonical(std::move(runs))) {}

  static Word letter(int gen, long long exp = 1) {
    return Word({Run{gen, exp}});
  }

  const std::vector<Run>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }

  long long letter_length() const {
    long long n = 0;
    for (const Run& r : runs_) n += r.exp;
    return n;
  }

  /// Smallest generator index occurring, or -1 for the identity.
  int min_gen() const {
    int g = -1;
    for (const Run& r : runs_)
      if (g < 0 || r.gen < g) g = r.gen;
    return g;
  }

  bool operator==(const Word&) const = default;

 private:
  static std::vector<Run> canonical(std::vector<Run> rs) {
    std::vector<Run> out;
    out.reserve(rs.size());
    for (const Run& r : rs) {
      if (r.exp == 0) continue;
      if (r.exp < 0) throw PreconditionError("negative run exponent");
      if (!out.empty() && out.back().gen == r.gen)
        out.back().exp += r.exp;
      else
        out.push_back(r);
    }
    return out;
  }

  std::vector<Run> runs_;
};

inline Word concat(const Word& a, const Word& b) {
  std::vector<Run> rs = a.runs();
  rs.insert(rs.end(), b.runs().begin(), b.runs().end());
  return Word(std::move(rs));
}

/// Re-labels every generator index by a fixed offset (used to embed words
/// of a sub-presentation into the parent alphabet and back).
inline Word shift_generators(const Word& w, int offset) {
  std::vector<Run> rs = w.runs();
  for (Run& r : rs) {
    r.gen += offset;
    if (r.gen < 0) throw PreconditionError("generator shift below zero");
  }
  return Word(std::move(rs));
}

/// Exponent-vector form of a normal word a_1^{a1} ... a_m^{am}. Validity
/// of the exponents against the relative orders is contextual; it is
/// established wherever a NormalWord is produced.
class NormalWord {
 public:
  NormalWord() = default;

  explicit NormalWord(std::vector<long long> exps) : exps_(std::move(exps)) {
    for (long long e : exps_)
      if (e < 0) throw PreconditionError("negative exponent in normal word");
  }

  static NormalWord identity(int m) {
    return NormalWord(std::vector<long long>(m, 0));
  }

  int size() const { return static_cast<int>(exps_.size()); }
  long long exponent(int i) const { return exps_.at(i); }
  const std::vector<long long>& exponents() const { return exps_; }

  bool is_identity() const {
    for (long long e : exps_)
      if (e != 0) return false;
    return true;
  }

  long long letter_length() const {
    return std::accumulate(exps_.begin(), exps_.end(), 0LL);
  }

  Word to_word() const {
    std::vector<Run> rs;
    for (int i = 0; i < size(); ++i)
      if (exps_[i] > 0) rs.push_back(Run{i, exps_[i]});
    return Word(std::move(rs));
  }

  bool operator==(const NormalWord&) const = default;

 private:
  std::vector<long long> exps_;
};

/// Renders a word as whitespace-separated `name` / `name^k` tokens; the
/// identity renders as `id`.
inline std::string render_word(const Word& w,
                               const std::vector<std::string>& names) {
  if (w.empty()) return "id";
  std::ostringstream out;
  bool first = true;
  for (const Run& r : w.runs()) {
    if (!first) out << ' ';
    first = false;
    out << names.at(static_cast<std::size_t>(r.gen));
    if (r.exp != 1) out << '^' << r.exp;
  }
  return out.str();
}

inline std::string render_word(const NormalWord& w,
                               const std::vector<std::string>& names) {
  return render_word(w.to_word(), names);
}

/// Parses the token format accepted everywhere words appear: tokens
/// `name` or `name^k` with k >= 1, or the single token `id`.
inline Word parse_word(std::string_view text,
                       const std::vector<std::string>& names) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));

  if (tokens.empty()) throw Error("empty word (write 'id' for the identity)");
  if (tokens.size() == 1 && tokens[0] == "id") return Word();

  std::vector<Run> rs;
  for (const std::string& tok : tokens) {
    if (tok == "id")
      throw Error("'id' cannot be combined with other letters");
    std::string name = tok;
    long long exp = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      name = tok.substr(0, caret);
      const std::string digits = tok.substr(caret + 1);
      if (digits.empty() ||
          digits.find_first_not_of("0123456789") != std::string::npos)
        throw Error("bad exponent in token '" + tok + "'");
      try {
        exp = std::stoll(digits);
      } catch (const std::out_of_range&) {
        throw Error("exponent out of range in token '" + tok + "'");
      }
      if (exp < 1) throw Error("exponent must be >= 1 in token '" + tok + "'");
    }
    int gen = -1;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) {
        gen = static_cast<int>(i);
        break;
      }
    if (gen < 0) throw Error("unknown generator '" + name + "'");
    rs.push_back(Run{gen, exp});
  }
  return Word(std::move(rs));
}

}  // namespace pcc
