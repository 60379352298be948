#pragma once

// Generators of the relation ideal for K(s)^*(BG), G one of the order-32
// groups G38..G41, with x1 and y1 adjoined as ring generators together with
// their implicit defining equations.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kbg/errors.hpp"
#include "kbg/polyring.hpp"

namespace kbg {

enum class GroupTag { G38, G39, G40, G41 };

inline constexpr GroupTag kAllGroups[] = {GroupTag::G38, GroupTag::G39, GroupTag::G40, GroupTag::G41};

inline std::string to_string(GroupTag g) {
  switch (g) {
    case GroupTag::G38: return "G38";
    case GroupTag::G39: return "G39";
    case GroupTag::G40: return "G40";
    case GroupTag::G41: return "G41";
  }
  return "?";
}

/// Accepts "G39" or "g39".
inline GroupTag parse_group(std::string_view text) {
  std::string up(text);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  for (auto g : kAllGroups)
    if (to_string(g) == up) return g;
  throw UsageError("unknown group '" + std::string(text) + "' (expected g38, g39, g40 or g41)");
}

/// Stable relation identifiers, in emission order.
inline const std::vector<std::string>& relation_names() {
  static const std::vector<std::string> names = {
      "nil_a", "nil_b",  "nil_c", "c_x", "c_y", "a_x",    "b_y",    "cross_bx", "cross_ay",
      "t_quad", "t_a", "t_b",   "ct",  "pow_x2", "pow_y2", "def_x1", "def_y1"};
  return names;
}

struct NamedRelation {
  std::string name;
  PolyF2 poly;
};

struct Presentation {
  GroupTag group = GroupTag::G39;
  int s = 1;
  bool restricted = false;  // c specialized to 0 and removed from the table
  RingPtr ring;
  std::vector<NamedRelation> relations;

  const VarTable& vars() const { return ring->vars; }

  std::vector<PolyF2> polys() const {
    std::vector<PolyF2> out;
    out.reserve(relations.size());
    for (const auto& r : relations) out.push_back(r.poly);
    return out;
  }

  const PolyF2& relation(std::string_view name) const {
    for (const auto& r : relations)
      if (r.name == name) return r.poly;
    throw UsageError("presentation has no relation '" + std::string(name) + "'");
  }

  bool has_relation(std::string_view name) const {
    return std::any_of(relations.begin(), relations.end(), [&](const NamedRelation& r) { return r.name == name; });
  }
};

inline int pow2(int k) {
  if (k < 0 || k > 14) throw UsageError("height out of supported range");
  return 1 << k;
}

/// Variables a, b, c, x1, x2, y1, y2, T with halved degrees 1,1,1,1,2,1,2,2; |v| = -(2^s - 1).
inline VarTable presentation_vars(int s) {
  return VarTable({"a", "b", "c", "x1", "x2", "y1", "y2", "T"}, {1, 1, 1, 1, 2, 1, 2, 2}, -(pow2(s) - 1));
}

/// Degrevlex with T > x1 > y1 > x2 > y2 > a > b > c.
inline MonomialOrder default_order(const VarTable& vars) {
  std::vector<std::size_t> prec;
  for (const char* n : {"T", "x1", "y1", "x2", "y2", "a", "b", "c"})
    if (auto i = vars.index_of(n)) prec.push_back(*i);
  return MonomialOrder::degrevlex(std::move(prec));
}

inline RingPtr presentation_ring(int s) {
  auto vars = presentation_vars(s);
  auto order = default_order(vars);
  return make_ring(std::move(vars), std::move(order));
}

namespace detail {

class RelationBuilder {
 public:
  RelationBuilder(int s, RingPtr ring) : s_(s), big_(pow2(s)), half_(pow2(s - 1)), ring_(std::move(ring)) {}

  PolyF2 var(const char* name, int power = 1) const {
    return PolyF2::variable(ring_, name, static_cast<Exponent>(power));
  }
  PolyF2 v(int power = 1) const {
    Monomial m;
    m.v_exp = power;
    return PolyF2::monomial(ring_, m);
  }
  PolyF2 zero() const { return PolyF2::zero(ring_); }

  /// u + w1 + v * sum_{i=1}^{s-1} u^{2^s - 2^i} w2^{2^{i-1}}
  PolyF2 shift(const char* u, const char* w1, const char* w2) const {
    PolyF2 sum = zero();
    for (int i = 1; i <= s_ - 1; ++i) sum += var(u, big_ - pow2(i)) * var(w2, pow2(i - 1));
    return var(u) + var(w1) + v() * sum;
  }
  PolyF2 X(const char* u) const { return shift(u, "x1", "x2"); }
  PolyF2 Y(const char* u) const { return shift(u, "y1", "y2"); }

  /// w1 + v (w2 + v w1 w2^{2^{s-1}})^{2^{s-1}}; the defining relation is this plus its tail.
  PolyF2 implicit(const char* w1, const char* w2) const {
    auto inner = var(w2) + v() * var(w1) * var(w2, half_);
    return var(w1) + v() * inner.pow(static_cast<unsigned>(half_));
  }

  int big() const { return big_; }
  int half() const { return half_; }

 private:
  int s_;
  int big_;
  int half_;
  RingPtr ring_;
};

}  // namespace detail

inline Presentation build(GroupTag group, int s) {
  if (s < 1) throw UsageError("height s must be >= 1");
  if (s > 8) throw UsageError("height s > 8 exceeds the exponent range of this build");
  auto ring = presentation_ring(s);
  detail::RelationBuilder rb(s, ring);
  const int S = rb.big();
  const int h = rb.half();
  auto a = rb.var("a");
  auto b = rb.var("b");
  auto c = rb.var("c");
  auto x1 = rb.var("x1");
  auto x2 = rb.var("x2");
  auto y1 = rb.var("y1");
  auto y2 = rb.var("y2");
  auto T = rb.var("T");
  auto v = rb.v();
  auto Xa = rb.X("a");
  auto Xc = rb.X("c");
  auto Yb = rb.Y("b");
  auto Yc = rb.Y("c");
  auto a_top = rb.var("a", S - 1);
  auto b_top = rb.var("b", S - 1);
  auto c_top = rb.var("c", S - 1);

  PolyF2 x2_tail = group == GroupTag::G38 ? c * c + a * c : a * a + b * b + a * c + v * a * b * c_top;

  PolyF2 y2_tail = rb.zero();
  switch (group) {
    case GroupTag::G38:
    case GroupTag::G41: y2_tail = a * a + b * c + v * a * b * c_top; break;
    case GroupTag::G39: y2_tail = b * b + b * c; break;
    case GroupTag::G40: y2_tail = b * b + c * c + b * c; break;
  }

  auto h_pow = static_cast<unsigned>(h);
  PolyF2 x1_tail = group == GroupTag::G38 ? a : b + c + v * (b * c).pow(h_pow);

  PolyF2 y1_tail = rb.zero();
  switch (group) {
    case GroupTag::G39: y1_tail = c; break;
    case GroupTag::G40: break;
    case GroupTag::G38:
    case GroupTag::G41: y1_tail = a + b + c + v * (a * b + b * c + a * c).pow(h_pow); break;
  }

  Presentation p;
  p.group = group;
  p.s = s;
  p.ring = ring;
  auto add = [&](const char* name, PolyF2 poly) { p.relations.push_back({name, std::move(poly)}); };
  add("nil_a", rb.var("a", S));
  add("nil_b", rb.var("b", S));
  add("nil_c", rb.var("c", S));
  add("c_x", c * Xc);
  add("c_y", c * Yc);
  add("a_x", a * Xa);
  add("b_y", b * Yb);
  add("cross_bx", Xc * Yb + v * b_top * T);
  add("cross_ay", Yc * Xa + v * a_top * T);
  add("t_quad", T * T + T * x1 * y1 + x2 * y1 * Yc + x1 * y2 * Xc);
  add("t_a", T * Xa + v * a_top * x2 * (c + y1));
  add("t_b", T * Yb + v * b_top * y2 * (c + x1));
  add("ct", c * T);
  add("pow_x2", rb.v(2) * rb.var("x2", S) + x2_tail);
  add("pow_y2", rb.v(2) * rb.var("y2", S) + y2_tail);
  add("def_x1", rb.implicit("x1", "x2") + x1_tail);
  add("def_y1", rb.implicit("y1", "y2") + y1_tail);
  return p;
}

/// Specializes c to 0, drops relations that vanish, and removes c from the table.
inline Presentation restrict_c0(const Presentation& p) {
  if (p.restricted) return p;
  auto vars = p.vars().without("c");
  auto order = default_order(vars);
  auto ring = make_ring(std::move(vars), std::move(order));
  Presentation out;
  out.group = p.group;
  out.s = p.s;
  out.restricted = true;
  out.ring = ring;
  std::map<std::string, PolyF2> to_zero{{"c", PolyF2::zero(p.ring)}};
  for (const auto& r : p.relations) {
    auto q = r.poly.substitute(to_zero);
    if (!q.is_zero()) out.relations.push_back({r.name, q.remap(ring)});
  }
  return out;
}

/// Sets v = 1 in every relation. Two terms merging would mean the relation's
/// v-grading carried information, which never happens for these presentations.
inline Presentation forget_v(const Presentation& p) {
  Presentation out = p;
  for (auto& r : out.relations) {
    bool collided = false;
    r.poly = r.poly.forget_v(&collided);
    if (collided) throw InternalError("forget_v: terms of relation '" + r.name + "' collided");
  }
  return out;
}

struct HomogeneityEntry {
  std::string name;
  WeightedDegree degree;
};

inline std::vector<HomogeneityEntry> homogeneity_audit(const Presentation& p) {
  std::vector<HomogeneityEntry> out;
  for (const auto& r : p.relations) out.push_back({r.name, r.poly.halved_degree()});
  return out;
}

inline bool all_homogeneous(const std::vector<HomogeneityEntry>& audit) {
  return std::all_of(audit.begin(), audit.end(), [](const HomogeneityEntry& e) { return e.degree.homogeneous(); });
}

inline std::string describe(const HomogeneityEntry& e, const VarTable& vars) {
  switch (e.degree.status) {
    case WeightedDegree::Status::zero: return e.name + ": zero";
    case WeightedDegree::Status::homogeneous: return e.name + ": degree " + std::to_string(e.degree.degree);
    case WeightedDegree::Status::inhomogeneous:
      return e.name + ": inhomogeneous (" + format_monomial(e.degree.first, vars) + " has " +
             std::to_string(e.degree.degree) + ", " + format_monomial(e.degree.second, vars) + " has " +
             std::to_string(e.degree.other_degree) + ")";
  }
  return e.name;
}

/// Interchange text: `group=`, `s=`, `vweight=` headers (plus `restriction=c0`
/// for restricted presentations), then one `name: polynomial` line per relation.
inline std::string dump(const Presentation& p) {
  std::ostringstream os;
  os << "group=" << to_string(p.group) << '\n';
  os << "s=" << p.s << '\n';
  os << "vweight=" << p.vars().v_weight() << '\n';
  if (p.restricted) os << "restriction=c0\n";
  for (const auto& r : p.relations) os << r.name << ": " << r.poly.str() << '\n';
  return os.str();
}

inline Presentation load_presentation(std::istream& in) {
  std::map<std::string, std::string> headers;
  std::vector<std::pair<std::string, std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    auto eq = line.find('=');
    if (colon != std::string::npos && (eq == std::string::npos || colon < eq)) {
      auto name = line.substr(0, colon);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
      lines.emplace_back(name, line.substr(colon + 1));
    } else if (eq != std::string::npos) {
      if (!lines.empty()) throw CacheError("presentation header after relation lines");
      headers[line.substr(0, eq)] = line.substr(eq + 1);
    } else {
      throw CacheError("malformed presentation line: " + line);
    }
  }
  for (const char* key : {"group", "s", "vweight"})
    if (!headers.count(key)) throw CacheError(std::string("presentation missing header '") + key + "'");
  Presentation p;
  int vweight = 0;
  try {
    p.group = parse_group(headers["group"]);
    p.s = std::stoi(headers["s"]);
    vweight = std::stoi(headers["vweight"]);
  } catch (const std::logic_error& e) {
    throw CacheError(std::string("bad presentation header: ") + e.what());
  }
  if (p.s < 1 || p.s > 8) throw CacheError("presentation header s out of range");
  if (vweight != -(pow2(p.s) - 1)) throw CacheError("vweight header inconsistent with s");
  p.ring = presentation_ring(p.s);
  if (headers.count("restriction")) {
    if (headers["restriction"] != "c0") throw CacheError("unknown restriction '" + headers["restriction"] + "'");
    p.restricted = true;
    auto vars = p.vars().without("c");
    auto order = default_order(vars);
    p.ring = make_ring(std::move(vars), std::move(order));
  }
  for (auto& [name, text] : lines) p.relations.push_back({name, parse_poly(text, p.ring)});
  if (p.relations.empty()) throw CacheError("presentation has no relations");
  return p;
}

}  // namespace kbg
