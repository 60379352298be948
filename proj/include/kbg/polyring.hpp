#pragma once

// Multivariate polynomials over F2 with a Laurent exponent for the periodicity
// class v. Polynomials are immutable values sorted descending in the monomial
// order of the ring they belong to.

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kbg/errors.hpp"

namespace kbg {

inline constexpr std::size_t kMaxVars = 9;
using Exponent = std::uint16_t;

namespace detail {

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char ch) {
    auto c = static_cast<unsigned char>(ch);
    return std::isalnum(c) || c == '_';
  });
}

}  // namespace detail

/// Ordered variable names with their halved degrees and the halved degree of v.
class VarTable {
 public:
  VarTable() = default;

  VarTable(std::vector<std::string> names, std::vector<int> halved_degrees, int v_weight)
      : names_(std::move(names)), degrees_(std::move(halved_degrees)), v_weight_(v_weight) {
    if (names_.size() != degrees_.size())
      throw UsageError("VarTable: names and degrees differ in length");
    if (names_.size() > kMaxVars)
      throw UsageError("VarTable: at most " + std::to_string(kMaxVars) + " variables supported");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!detail::is_identifier(names_[i]))
        throw UsageError("VarTable: invalid variable name '" + names_[i] + "'");
      if (names_[i] == "v") throw UsageError("VarTable: 'v' is reserved for the periodicity class");
      if (degrees_[i] <= 0) throw UsageError("VarTable: halved degrees must be positive");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[j] == names_[i]) throw UsageError("VarTable: duplicate variable '" + names_[i] + "'");
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  int degree(std::size_t i) const { return degrees_.at(i); }
  int v_weight() const noexcept { return v_weight_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  std::size_t require(std::string_view name) const {
    if (auto i = index_of(name)) return *i;
    throw UsageError("unknown variable '" + std::string(name) + "'");
  }

  /// Copy with one variable dropped.
  VarTable without(std::string_view name) const {
    auto idx = require(name);
    auto names = names_;
    auto degrees = degrees_;
    names.erase(names.begin() + static_cast<std::ptrdiff_t>(idx));
    degrees.erase(degrees.begin() + static_cast<std::ptrdiff_t>(idx));
    return VarTable(std::move(names), std::move(degrees), v_weight_);
  }

  bool operator==(const VarTable&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  int v_weight_ = 0;
};

/// Exponent vector plus Laurent exponent of v. Slots past the table size stay zero.
struct Monomial {
  std::array<Exponent, kMaxVars> exps{};
  int v_exp = 0;

  unsigned total_degree() const noexcept {
    unsigned d = 0;
    for (auto e : exps) d += e;
    return d;
  }

  bool is_one() const noexcept { return total_degree() == 0 && v_exp == 0; }

  /// Divisibility on the variable part; v is a unit.
  bool divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exps[i] > other.exps[i]) return false;
    return true;
  }

  bool coprime(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exps[i] != 0 && other.exps[i] != 0) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& lhs, const Monomial& rhs) {
    Monomial out;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned e = unsigned{lhs.exps[i]} + rhs.exps[i];
      if (e > std::numeric_limits<Exponent>::max()) throw ArithmeticOverflow("monomial exponent overflow");
      out.exps[i] = static_cast<Exponent>(e);
    }
    long long v = static_cast<long long>(lhs.v_exp) + rhs.v_exp;
    if (v > std::numeric_limits<int>::max() || v < std::numeric_limits<int>::min())
      throw ArithmeticOverflow("v exponent overflow");
    out.v_exp = static_cast<int>(v);
    return out;
  }

  /// lhs / rhs on the variable part; requires rhs.divides(lhs).
  friend Monomial quotient(const Monomial& lhs, const Monomial& rhs) {
    Monomial out;
    for (std::size_t i = 0; i < kMaxVars; ++i) out.exps[i] = static_cast<Exponent>(lhs.exps[i] - rhs.exps[i]);
    out.v_exp = lhs.v_exp - rhs.v_exp;
    return out;
  }

  friend Monomial lcm(const Monomial& lhs, const Monomial& rhs) {
    Monomial out;
    for (std::size_t i = 0; i < kMaxVars; ++i) out.exps[i] = std::max(lhs.exps[i], rhs.exps[i]);
    return out;
  }

  static Monomial variable(std::size_t index, Exponent power = 1) {
    Monomial m;
    m.exps.at(index) = power;
    return m;
  }

  bool operator==(const Monomial&) const = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = static_cast<std::size_t>(m.v_exp) * 0x9e3779b97f4a7c15ULL;
    for (auto e : m.exps) h = (h ^ e) * 0x100000001b3ULL;
    return h;
  }
};

/// Total multiplicative order on the variable part of monomials. v_exp is ignored.
class MonomialOrder {
 public:
  enum class Kind { degrevlex, block_elimination };

  MonomialOrder() = default;

  /// precedence[0] is the most significant variable.
  static MonomialOrder degrevlex(std::vector<std::size_t> precedence) {
    MonomialOrder ord;
    ord.kind_ = Kind::degrevlex;
    ord.validate(precedence);
    ord.precedence_ = std::move(precedence);
    ord.front_ = {};
    ord.rest_ = ord.precedence_;
    return ord;
  }

  /// Degrevlex on front_block first, then degrevlex on the remaining variables.
  static MonomialOrder elimination(std::vector<std::size_t> precedence, const std::vector<std::size_t>& front_block) {
    MonomialOrder ord;
    ord.kind_ = Kind::block_elimination;
    ord.validate(precedence);
    for (auto v : front_block)
      if (std::find(precedence.begin(), precedence.end(), v) == precedence.end())
        throw UsageError("elimination block names a variable outside the order");
    ord.precedence_ = std::move(precedence);
    for (auto v : ord.precedence_) {
      bool in_front = std::find(front_block.begin(), front_block.end(), v) != front_block.end();
      (in_front ? ord.front_ : ord.rest_).push_back(v);
    }
    return ord;
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& precedence() const noexcept { return precedence_; }
  const std::vector<std::size_t>& front_block() const noexcept { return front_; }

  std::strong_ordering compare(const Monomial& lhs, const Monomial& rhs) const noexcept {
    if (!front_.empty()) {
      auto c = compare_block(front_, lhs, rhs);
      if (c != 0) return c;
    }
    return compare_block(rest_, lhs, rhs);
  }

  bool operator==(const MonomialOrder&) const = default;

  /// Text form: "degrevlex:T,x1,..." or "elim:x1,y1|T,x2,...".
  std::string spec(const VarTable& vars) const {
    auto join = [&](const std::vector<std::size_t>& idx) {
      std::string out;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) out += ',';
        out += vars.name(idx[i]);
      }
      return out;
    };
    if (kind_ == Kind::degrevlex) return "degrevlex:" + join(precedence_);
    return "elim:" + join(front_) + "|" + join(rest_);
  }

  static MonomialOrder from_spec(std::string_view text, const VarTable& vars) {
    auto split = [&](std::string_view list) {
      std::vector<std::size_t> out;
      while (!list.empty()) {
        auto comma = list.find(',');
        auto item = list.substr(0, comma);
        out.push_back(vars.require(item));
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
      }
      return out;
    };
    if (text.starts_with("degrevlex:")) return degrevlex(split(text.substr(10)));
    if (text.starts_with("elim:")) {
      auto body = text.substr(5);
      auto bar = body.find('|');
      if (bar == std::string_view::npos) throw UsageError("elimination order spec needs '|'");
      auto front = split(body.substr(0, bar));
      auto rest = split(body.substr(bar + 1));
      std::vector<std::size_t> all = front;
      all.insert(all.end(), rest.begin(), rest.end());
      return elimination(std::move(all), front);
    }
    throw UsageError("unknown monomial order spec '" + std::string(text) + "'");
  }

 private:
  static std::strong_ordering compare_block(const std::vector<std::size_t>& block, const Monomial& lhs,
                                            const Monomial& rhs) noexcept {
    unsigned dl = 0;
    unsigned dr = 0;
    for (auto v : block) {
      dl += lhs.exps[v];
      dr += rhs.exps[v];
    }
    if (dl != dr) return dl <=> dr;
    for (auto it = block.rbegin(); it != block.rend(); ++it) {
      auto a = lhs.exps[*it];
      auto b = rhs.exps[*it];
      if (a != b) return b <=> a;
    }
    return std::strong_ordering::equal;
  }

  void validate(const std::vector<std::size_t>& precedence) const {
    std::vector<std::size_t> sorted = precedence;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != i) throw UsageError("monomial order precedence must be a permutation of the variables");
    if (sorted.size() > kMaxVars) throw UsageError("too many variables in order");
  }

  Kind kind_ = Kind::degrevlex;
  std::vector<std::size_t> precedence_;
  std::vector<std::size_t> front_;
  std::vector<std::size_t> rest_;
};

/// A VarTable together with the monomial order its polynomials are sorted in.
struct Ring {
  VarTable vars;
  MonomialOrder order;

  bool operator==(const Ring&) const = default;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(VarTable vars, MonomialOrder order) {
  if (order.precedence().size() != vars.size())
    throw UsageError("monomial order does not cover the variable table");
  return std::make_shared<const Ring>(Ring{std::move(vars), std::move(order)});
}

/// Ring with degrevlex in the table's own variable order.
inline RingPtr make_ring(VarTable vars) {
  std::vector<std::size_t> prec(vars.size());
  std::iota(prec.begin(), prec.end(), std::size_t{0});
  auto order = MonomialOrder::degrevlex(std::move(prec));
  return make_ring(std::move(vars), std::move(order));
}

/// Result of the weighted-degree audit of one polynomial.
struct WeightedDegree {
  enum class Status { zero, homogeneous, inhomogeneous };
  Status status = Status::zero;
  int degree = 0;
  // Populated only when inhomogeneous.
  int other_degree = 0;
  Monomial first;
  Monomial second;

  bool homogeneous() const noexcept { return status != Status::inhomogeneous; }
};

class PolyF2 {
 public:
  explicit PolyF2(RingPtr ring) : ring_(std::move(ring)) {}

  /// Canonicalizes: sorts descending and cancels repeated monomials in pairs.
  PolyF2(RingPtr ring, std::vector<Monomial> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    canonicalize();
  }

  static PolyF2 zero(RingPtr ring) { return PolyF2(std::move(ring)); }
  static PolyF2 one(RingPtr ring) { return monomial(std::move(ring), Monomial{}); }
  static PolyF2 monomial(RingPtr ring, const Monomial& m) {
    PolyF2 p(std::move(ring));
    p.terms_.push_back(m);
    return p;
  }
  static PolyF2 variable(RingPtr ring, std::string_view name, Exponent power = 1) {
    auto idx = ring->vars.require(name);
    return monomial(std::move(ring), Monomial::variable(idx, power));
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const VarTable& vars() const noexcept { return ring_->vars; }
  const MonomialOrder& order() const noexcept { return ring_->order; }
  const std::vector<Monomial>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_one() const noexcept { return terms_.size() == 1 && terms_.front().is_one(); }

  const Monomial& leading() const {
    if (terms_.empty()) throw UsageError("leading monomial of the zero polynomial");
    return terms_.front();
  }

  /// Highest exponent of variable `index` appearing in any term.
  Exponent max_exponent(std::size_t index) const noexcept {
    Exponent e = 0;
    for (const auto& t : terms_) e = std::max(e, t.exps[index]);
    return e;
  }

  bool involves(std::size_t index) const noexcept { return max_exponent(index) != 0; }

  friend PolyF2 operator+(const PolyF2& p, const PolyF2& q) {
    check_same_ring(p, q);
    PolyF2 out(p.ring_);
    out.terms_.reserve(p.terms_.size() + q.terms_.size());
    const auto& ord = p.order();
    auto i = p.terms_.begin();
    auto j = q.terms_.begin();
    while (i != p.terms_.end() && j != q.terms_.end()) {
      auto c = ord.compare(*i, *j);
      if (c == 0) {
        // Equal in the order means equal exponent vectors; differing v exponents are distinct terms.
        if (i->v_exp == j->v_exp) {
          ++i;
          ++j;
        } else if (i->v_exp > j->v_exp) {
          out.terms_.push_back(*i++);
        } else {
          out.terms_.push_back(*j++);
        }
      } else if (c > 0) {
        out.terms_.push_back(*i++);
      } else {
        out.terms_.push_back(*j++);
      }
    }
    out.terms_.insert(out.terms_.end(), i, p.terms_.end());
    out.terms_.insert(out.terms_.end(), j, q.terms_.end());
    return out;
  }

  PolyF2& operator+=(const PolyF2& q) { return *this = *this + q; }

  /// m * p; multiplication by a monomial preserves the sort order.
  friend PolyF2 operator*(const Monomial& m, const PolyF2& p) {
    PolyF2 out(p.ring_);
    out.terms_.reserve(p.terms_.size());
    for (const auto& t : p.terms_) out.terms_.push_back(m * t);
    return out;
  }

  friend PolyF2 operator*(const PolyF2& p, const PolyF2& q) {
    check_same_ring(p, q);
    std::vector<Monomial> all;
    all.reserve(p.terms_.size() * q.terms_.size());
    for (const auto& s : p.terms_)
      for (const auto& t : q.terms_) all.push_back(s * t);
    return PolyF2(p.ring_, std::move(all));
  }

  PolyF2& operator*=(const PolyF2& q) { return *this = *this * q; }

  PolyF2 pow(unsigned k) const {
    PolyF2 result = one(ring_);
    PolyF2 base = *this;
    while (k) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k) base *= base;
    }
    return result;
  }

  /// Same polynomial sorted for another ring with an identical variable table.
  PolyF2 in_ring(RingPtr target) const {
    if (target->vars != vars()) throw UsageError("in_ring: variable tables differ");
    return PolyF2(std::move(target), terms_);
  }

  /// Re-expresses the polynomial over a table that matches variables by name.
  /// Every variable with a nonzero exponent must exist in the target.
  PolyF2 remap(RingPtr target) const {
    std::vector<std::optional<std::size_t>> map(vars().size());
    for (std::size_t i = 0; i < vars().size(); ++i) map[i] = target->vars.index_of(vars().name(i));
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m;
      m.v_exp = t.v_exp;
      for (std::size_t i = 0; i < vars().size(); ++i) {
        if (t.exps[i] == 0) continue;
        if (!map[i]) throw UsageError("remap: variable '" + vars().name(i) + "' missing from target ring");
        m.exps[*map[i]] = t.exps[i];
      }
      out.push_back(m);
    }
    return PolyF2(std::move(target), std::move(out));
  }

  /// Sets every v exponent to 0. `collided` reports whether two terms merged.
  PolyF2 forget_v(bool* collided = nullptr) const {
    std::vector<Monomial> out = terms_;
    for (auto& t : out) t.v_exp = 0;
    PolyF2 result(ring_, std::move(out));
    if (collided) *collided = result.terms_.size() != terms_.size();
    return result;
  }

  WeightedDegree halved_degree() const {
    WeightedDegree out;
    for (const auto& t : terms_) {
      int d = weight(t);
      if (out.status == WeightedDegree::Status::zero) {
        out.status = WeightedDegree::Status::homogeneous;
        out.degree = d;
        out.first = t;
      } else if (d != out.degree) {
        out.status = WeightedDegree::Status::inhomogeneous;
        out.other_degree = d;
        out.second = t;
        return out;
      }
    }
    return out;
  }

  int weight(const Monomial& m) const {
    int d = m.v_exp * vars().v_weight();
    for (std::size_t i = 0; i < vars().size(); ++i) d += m.exps[i] * vars().degree(i);
    return d;
  }

  /// Simultaneous substitution of polynomials for variables.
  PolyF2 substitute(const std::map<std::string, PolyF2>& assignments) const {
    std::vector<std::optional<PolyF2>> values(vars().size());
    for (const auto& [name, value] : assignments) {
      check_same_ring(*this, value);
      values[vars().require(name)] = value;
    }
    std::vector<std::map<unsigned, PolyF2>> powers(vars().size());
    auto power_of = [&](std::size_t var, unsigned e) -> const PolyF2& {
      auto it = powers[var].find(e);
      if (it == powers[var].end()) it = powers[var].emplace(e, values[var]->pow(e)).first;
      return it->second;
    };
    PolyF2 result(ring_);
    std::vector<Monomial> untouched;
    for (const auto& t : terms_) {
      Monomial rest = t;
      PolyF2 factor = one(ring_);
      bool touched = false;
      for (std::size_t i = 0; i < vars().size(); ++i) {
        if (!values[i] || t.exps[i] == 0) continue;
        touched = true;
        factor *= power_of(i, t.exps[i]);
        rest.exps[i] = 0;
      }
      if (touched)
        result += rest * factor;
      else
        untouched.push_back(t);
    }
    return result + PolyF2(ring_, std::move(untouched));
  }

  std::string str() const;

  friend bool operator==(const PolyF2& p, const PolyF2& q) {
    return p.vars() == q.vars() && p.terms_ == q.terms_;
  }

  friend std::ostream& operator<<(std::ostream& os, const PolyF2& p) { return os << p.str(); }

 private:
  static void check_same_ring(const PolyF2& p, const PolyF2& q) {
    if (p.ring_ == q.ring_) return;
    if (*p.ring_ != *q.ring_) throw UsageError("polynomials belong to different rings");
  }

  void canonicalize() {
    const auto& ord = order();
    std::sort(terms_.begin(), terms_.end(), [&](const Monomial& a, const Monomial& b) {
      auto c = ord.compare(a, b);
      if (c != 0) return c > 0;
      return a.v_exp > b.v_exp;
    });
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size();) {
      std::size_t j = i;
      while (j < terms_.size() && terms_[j] == terms_[i]) ++j;
      if ((j - i) % 2 == 1) out.push_back(terms_[i]);
      i = j;
    }
    terms_ = std::move(out);
  }

  RingPtr ring_;
  std::vector<Monomial> terms_;
};

inline std::string format_monomial(const Monomial& m, const VarTable& vars) {
  std::string out;
  auto append = [&](const std::string& factor) {
    if (!out.empty()) out += '*';
    out += factor;
  };
  if (m.v_exp != 0) append("v^" + std::to_string(m.v_exp));
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (m.exps[i] == 0) continue;
    append(m.exps[i] == 1 ? vars.name(i) : vars.name(i) + "^" + std::to_string(m.exps[i]));
  }
  return out.empty() ? "1" : out;
}

inline std::string PolyF2::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += " + ";
    out += format_monomial(terms_[i], vars());
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, RingPtr ring) : text_(text), ring_(std::move(ring)) {}

  PolyF2 parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    if (peek() == '0') {
      auto save = pos_;
      ++pos_;
      skip_ws();
      if (at_end()) return PolyF2::zero(ring_);
      pos_ = save;
    }
    std::vector<Monomial> terms;
    terms.push_back(term());
    skip_ws();
    while (!at_end()) {
      expect('+');
      terms.push_back(term());
      skip_ws();
    }
    return PolyF2(ring_, std::move(terms));
  }

 private:
  Monomial term() {
    Monomial m = factor();
    skip_ws();
    while (!at_end() && peek() == '*') {
      ++pos_;
      m = m * factor();
      skip_ws();
    }
    return m;
  }

  Monomial factor() {
    skip_ws();
    if (at_end()) throw ParseError("expected factor", pos_);
    if (peek() == '1') {
      ++pos_;
      return Monomial{};
    }
    auto start = pos_;
    if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
      throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    bool has_exp = !at_end() && peek() == '^';
    if (name == "v") {
      Monomial m;
      m.v_exp = has_exp ? (++pos_, integer(true)) : 1;
      return m;
    }
    auto idx = ring_->vars.index_of(name);
    if (!idx) throw ParseError("unknown variable '" + name + "'", start);
    long long e = has_exp ? (++pos_, integer(false)) : 1;
    if (e > std::numeric_limits<Exponent>::max()) throw ParseError("exponent too large", start);
    return Monomial::variable(*idx, static_cast<Exponent>(e));
  }

  int integer(bool allow_negative) {
    skip_ws();
    auto start = pos_;
    bool negative = false;
    if (!at_end() && peek() == '-') {
      if (!allow_negative) throw ParseError("negative exponent", pos_);
      negative = true;
      ++pos_;
    }
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("malformed exponent", start);
    long long value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      if (value > std::numeric_limits<int>::max()) throw ParseError("exponent too large", start);
      ++pos_;
    }
    return static_cast<int>(negative ? -value : value);
  }

  void expect(char ch) {
    skip_ws();
    if (at_end() || peek() != ch) throw ParseError(std::string("expected '") + ch + "'", pos_);
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Grammar: poly := term ('+' term)* ; term := factor ('*' factor)* ;
/// factor := name ('^' nat)? | 'v' ('^' int)? | '1'. The literal "0" is the zero polynomial.
inline PolyF2 parse_poly(std::string_view text, RingPtr ring) { return detail::PolyParser(text, std::move(ring)).parse(); }

}  // namespace kbg
