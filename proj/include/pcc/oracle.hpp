#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "pcc/errors.hpp"
#include "pcc/word.hpp"

namespace pcc {

/// Permutation of the points 1..8 (stored 0-based). Composition is fixed
/// left-to-right, (g * h)(x) = h(g(x)), so that the image of a word
/// u w is image(u) * image(w) with u acting first. This convention is
/// load-bearing: flipping it transposes every composition table.
class Perm {
 public:
  static constexpr int degree = 8;

  Perm() {
    for (int i = 0; i < degree; ++i)
      img_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  }

  /// Builds from disjoint cycles over 1-based points, e.g. {{1,2},{3,4}}.
  static Perm from_cycles(const std::vector<std::vector<int>>& cycles) {
    Perm p;
    std::array<bool, degree> seen{};
    for (const std::vector<int>& pts : cycles) {
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const int from = pts[k];
        const int to = pts[(k + 1) % pts.size()];
        if (from < 1 || from > degree)
          throw PreconditionError("cycle point out of range 1..8");
        if (seen[static_cast<std::size_t>(from - 1)])
          throw PreconditionError("cycles are not disjoint");
        seen[static_cast<std::size_t>(from - 1)] = true;
        p.img_[static_cast<std::size_t>(from - 1)] =
            static_cast<std::uint8_t>(to - 1);
      }
    }
    return p;
  }

  static Perm from_cycles(
      std::initializer_list<std::initializer_list<int>> cycles) {
    std::vector<std::vector<int>> out;
    for (const auto& cyc : cycles) out.emplace_back(cyc);
    return from_cycles(out);
  }

  int apply(int x) const {  // 0-based point
    return img_.at(static_cast<std::size_t>(x));
  }

  friend Perm compose(const Perm& g, const Perm& h) {
    Perm out;
    for (int i = 0; i < degree; ++i)
      out.img_[static_cast<std::size_t>(i)] =
          h.img_[g.img_[static_cast<std::size_t>(i)]];
    return out;
  }

  friend Perm inverse(const Perm& g) {
    Perm out;
    for (int i = 0; i < degree; ++i)
      out.img_[g.img_[static_cast<std::size_t>(i)]] =
          static_cast<std::uint8_t>(i);
    return out;
  }

  std::string key() const {
    return std::string(img_.begin(), img_.end());
  }

  /// Cycle notation over moved points, "(1 2)(3 4)"; identity is "id".
  std::string to_string() const {
    std::ostringstream out;
    std::array<bool, degree> done{};
    bool moved = false;
    for (int s = 0; s < degree; ++s) {
      if (done[static_cast<std::size_t>(s)] || apply(s) == s) continue;
      moved = true;
      out << '(';
      int x = s;
      bool first = true;
      do {
        done[static_cast<std::size_t>(x)] = true;
        if (!first) out << ' ';
        first = false;
        out << (x + 1);
        x = apply(x);
      } while (x != s);
      out << ')';
    }
    return moved ? out.str() : "id";
  }

  bool operator==(const Perm&) const = default;

 private:
  std::array<std::uint8_t, degree> img_;
};

/// One of the eight quaternion units {1, -1, i, -i, j, -j, k, -k} under
/// quaternion multiplication: i*j = k, j*i = -k, i*i = j*j = k*k = -1.
class QuaternionUnit {
 public:
  QuaternionUnit() = default;  // 1

  static QuaternionUnit one() { return make(0, false); }
  static QuaternionUnit minus_one() { return make(0, true); }
  static QuaternionUnit i() { return make(1, false); }
  static QuaternionUnit j() { return make(2, false); }
  static QuaternionUnit k() { return make(3, false); }

  friend QuaternionUnit compose(const QuaternionUnit& a,
                                const QuaternionUnit& b) {
    // basis products e_a * e_b: resulting basis and whether a sign flips
    static constexpr int basis[4][4] = {
        {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static constexpr bool flip[4][4] = {
        {false, false, false, false},
        {false, true, false, true},
        {false, true, true, false},
        {false, false, true, true}};
    QuaternionUnit out;
    out.basis_ = basis[a.basis_][b.basis_];
    out.negative_ =
        (a.negative_ != b.negative_) != flip[a.basis_][b.basis_];
    return out;
  }

  friend QuaternionUnit inverse(const QuaternionUnit& a) {
    QuaternionUnit out = a;
    if (a.basis_ != 0) out.negative_ = !a.negative_;
    return out;
  }

  std::string to_string() const {
    static const char* names[4] = {"1", "i", "j", "k"};
    return (negative_ ? std::string("-") : std::string()) + names[basis_];
  }

  std::string key() const { return to_string(); }

  bool operator==(const QuaternionUnit&) const = default;

 private:
  static QuaternionUnit make(int basis, bool negative) {
    QuaternionUnit q;
    q.basis_ = basis;
    q.negative_ = negative;
    return q;
  }

  int basis_ = 0;  // 0..3 for 1, i, j, k
  bool negative_ = false;
};

using OracleElement = std::variant<Perm, QuaternionUnit>;

inline OracleElement compose(const OracleElement& a, const OracleElement& b) {
  if (a.index() != b.index())
    throw PreconditionError("cannot compose oracle elements of different kinds");
  if (std::holds_alternative<Perm>(a))
    return compose(std::get<Perm>(a), std::get<Perm>(b));
  return compose(std::get<QuaternionUnit>(a), std::get<QuaternionUnit>(b));
}

inline OracleElement inverse(const OracleElement& a) {
  if (std::holds_alternative<Perm>(a)) return inverse(std::get<Perm>(a));
  return inverse(std::get<QuaternionUnit>(a));
}

inline std::string oracle_key(const OracleElement& a) {
  return std::visit([](const auto& x) { return x.key(); }, a);
}

inline std::string oracle_to_string(const OracleElement& a) {
  return std::visit([](const auto& x) { return x.to_string(); }, a);
}

/// Generator images in a concrete group, all of one kind. The image of a
/// word is the left-to-right composition of the letter images; a faithful
/// oracle separates all normal words and certifies the collector's
/// arithmetic independently of the rewriting machinery.
struct HomomorphismOracle {
  std::vector<OracleElement> images;

  OracleElement identity_element() const {
    if (images.empty()) throw PreconditionError("oracle has no images");
    if (std::holds_alternative<Perm>(images.front()))
      return OracleElement(Perm());
    return OracleElement(QuaternionUnit());
  }

  OracleElement image(const Word& w) const {
    OracleElement acc = identity_element();
    for (const Run& r : w.runs()) {
      if (r.gen < 0 || r.gen >= static_cast<int>(images.size()))
        throw PreconditionError("word generator outside oracle images");
      for (long long t = 0; t < r.exp; ++t)
        acc = compose(acc, images[static_cast<std::size_t>(r.gen)]);
    }
    return acc;
  }

  OracleElement image(const NormalWord& w) const { return image(w.to_word()); }
};

}  // namespace pcc
