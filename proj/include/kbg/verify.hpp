#pragma once

// Runs every check for one (group, s) and collects the outcome into a report.
// A failing or crashing phase is recorded and the remaining phases still run.

#include <chrono>
#include <filesystem>
#include <functional>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "kbg/census.hpp"
#include "kbg/errors.hpp"
#include "kbg/gb_cache.hpp"
#include "kbg/groebner.hpp"
#include "kbg/honda_fgl.hpp"
#include "kbg/nilsolve.hpp"
#include "kbg/presentations.hpp"
#include "kbg/version.hpp"

namespace kbg {

struct MembershipCheck {
  std::string name;
  std::string poly;
  bool member = false;
};

struct EliminationCheck {
  bool x1_ok = false;
  bool y1_ok = false;
  bool x1_stabilized = false;
  bool y1_stabilized = false;
  int x1_iterations = 0;
  int y1_iterations = 0;
  bool agree_with_fixed_point = false;
  bool dimension_unchanged = false;  // six-generator presentation has the same dimension
  unsigned x2_nilpotency = 0;        // 0 when not found
  unsigned y2_nilpotency = 0;
  std::string x1_expr;
  std::string y1_expr;
};

struct HomogeneityCheck {
  std::string name;
  bool homogeneous = false;
  int degree = 0;
  std::string detail;
};

struct PhaseRecord {
  std::string name;
  std::string status;  // ok, finding, skipped, error, resource_error
  double millis = 0;
  std::string message;
};

struct VerificationReport {
  GroupTag group = GroupTag::G39;
  int s = 1;
  BigInt chi_expected;
  BigInt dim_computed;
  bool dim_match = false;
  BigInt restriction_expected;
  BigInt restriction_dim;
  bool restriction_match = false;
  std::vector<MembershipCheck> relation_checks;
  EliminationCheck elimination;
  std::vector<HomogeneityCheck> homogeneity;
  bool homogeneity_ok = false;
  bool census_ok = false;
  bool fgl_ok = false;
  std::vector<PhaseRecord> timings;
  std::string tool_version{kToolVersion};

  const PhaseRecord* phase(std::string_view name) const {
    for (const auto& p : timings)
      if (p.name == name) return &p;
    return nullptr;
  }

  bool skipped(std::string_view name) const {
    auto* p = phase(name);
    return p && p->status == "skipped";
  }

  bool has_resource_error() const {
    return std::any_of(timings.begin(), timings.end(), [](const PhaseRecord& p) { return p.status == "resource_error"; });
  }

  bool has_error() const {
    return std::any_of(timings.begin(), timings.end(),
                       [](const PhaseRecord& p) { return p.status == "error" || p.status == "resource_error"; });
  }

  /// Every executed check passed.
  bool passed() const {
    return std::all_of(timings.begin(), timings.end(),
                       [](const PhaseRecord& p) { return p.status == "ok" || p.status == "skipped"; });
  }
};

struct VerifyOptions {
  std::set<std::string> skip;  // any of: restriction, membership, nilsolve, homogeneity, census, fgl
  std::optional<unsigned> degree_cap;
  std::optional<unsigned> fgl_truncation;
  std::optional<std::filesystem::path> cache_dir;
  BuchbergerOptions buchberger;
};

inline const std::vector<std::string>& verify_phases() {
  static const std::vector<std::string> phases = {"dimension", "restriction", "membership", "nilsolve",
                                                  "homogeneity", "census",      "fgl"};
  return phases;
}

/// 2 s 2^s + 8
inline unsigned default_degree_cap(int s) { return static_cast<unsigned>(2 * s * pow2(s) + 8); }

/// The four derived relations: a^2 c = a c^2, b^2 c = b c^2, x1^{2^s} = (ac)^{2^{s-1}}, y1^{2^s} = (bc)^{2^{s-1}}.
inline std::vector<std::pair<std::string, PolyF2>> derived_relations(const Presentation& p) {
  const auto& ring = p.ring;
  auto var = [&](const char* n, int e = 1) { return PolyF2::variable(ring, n, static_cast<Exponent>(e)); };
  const int S = pow2(p.s);
  const int h = pow2(p.s - 1);
  return {
      {"a2c_eq_ac2", var("a", 2) * var("c") + var("a") * var("c", 2)},
      {"b2c_eq_bc2", var("b", 2) * var("c") + var("b") * var("c", 2)},
      {"x1_pow_eq_ac", var("x1", S) + var("a", h) * var("c", h)},
      {"y1_pow_eq_bc", var("y1", S) + var("b", h) * var("c", h)},
  };
}

/// Reduced basis under the default order, read from / written to the cache when configured.
inline ReducedGB presentation_gb(const Presentation& p, const VerifyOptions& options) {
  auto plain = forget_v(p);
  const auto& order = plain.ring->order;
  CacheKey key{to_string(p.group) + (p.restricted ? "-c0" : ""), p.s, order.spec(plain.vars())};
  std::optional<std::filesystem::path> path;
  if (options.cache_dir) {
    path = *options.cache_dir / key.file_name();
    if (std::filesystem::exists(*path)) return load_gb(*path, key, plain.vars());
  }
  auto gb = buchberger(plain.polys(), order, options.buchberger);
  if (path) save_gb(gb, key, *path);
  return gb;
}

/// Checks the height-s Honda law at truncation N: [2](x) = v x^{2^s}, symmetry, unitality, associativity.
inline bool fgl_witness_ok(int s, unsigned N) {
  auto law = fgl(s, N);
  Monomial expected = Monomial::variable(0, static_cast<Exponent>(pow2(s)));
  expected.v_exp = 1;
  bool two_ok = law.two_series == PolyF2::monomial(law.two_series.ring(), expected);
  return two_ok && is_symmetric(law.F) && is_unital(law.F) && associativity_check(s, N);
}

inline bool census_ok_for(GroupTag group, int s) {
  auto totals = family_totals(group, s);
  if (!totals.total_match || !reassembly_identity(s)) return false;
  auto bad = totals.mismatched_labels();
  if (group == GroupTag::G38) return bad == std::vector<std::string>{"w^i o^j x^k y^l", "w^i o^j x^k y^l T"};
  return bad.empty();
}

inline VerificationReport verify(GroupTag group, int s, const VerifyOptions& options = {}) {
  if (s < 1) throw UsageError("height s must be >= 1");
  VerificationReport report;
  report.group = group;
  report.s = s;
  report.chi_expected = chi(s);
  report.restriction_expected = chi_restriction(s);
  const unsigned cap = options.degree_cap.value_or(default_degree_cap(s));

  auto run = [&](const std::string& name, const std::function<bool(std::string&)>& body) {
    PhaseRecord rec{name, "ok", 0, ""};
    auto t0 = std::chrono::steady_clock::now();
    if (options.skip.count(name)) {
      rec.status = "skipped";
    } else {
      try {
        if (!body(rec.message)) rec.status = "finding";
      } catch (const ResourceError& e) {
        rec.status = "resource_error";
        rec.message = e.what();
      } catch (const IndeterminateError& e) {
        rec.status = "resource_error";
        rec.message = e.what();
      } catch (const std::exception& e) {
        rec.status = "error";
        rec.message = e.what();
      }
    }
    rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report.timings.push_back(std::move(rec));
  };

  const Presentation presentation = build(group, s);
  std::optional<ReducedGB> gb;

  run("dimension", [&](std::string& msg) {
    gb = presentation_gb(presentation, options);
    report.dim_computed = dimension(*gb, cap);
    report.dim_match = report.dim_computed == report.chi_expected;
    if (!report.dim_match)
      msg = "dimension " + report.dim_computed.str() + " differs from expected " + report.chi_expected.str();
    return report.dim_match;
  });

  run("restriction", [&](std::string& msg) {
    auto restricted = restrict_c0(presentation);
    auto rgb = presentation_gb(restricted, options);
    report.restriction_dim = dimension(rgb, cap);
    report.restriction_match = report.restriction_dim == report.restriction_expected;
    if (!report.restriction_match)
      msg = "restriction dimension " + report.restriction_dim.str() + " differs from expected " +
            report.restriction_expected.str();
    return report.restriction_match;
  });

  run("membership", [&](std::string& msg) {
    if (!gb) throw InternalError("no basis available (dimension phase failed)");
    bool all = true;
    for (auto& [name, poly] : derived_relations(presentation)) {
      bool in = member(poly, *gb);
      report.relation_checks.push_back({name, poly.str(), in});
      if (!in) {
        all = false;
        msg += (msg.empty() ? "" : "; ") + name + " not in ideal";
      }
    }
    return all;
  });

  run("nilsolve", [&](std::string& msg) {
    if (!gb) throw InternalError("no basis available (dimension phase failed)");
    auto& e = report.elimination;
    auto fx = solve_fixed_point(Dependent::x1, presentation, *gb);
    auto fy = solve_fixed_point(Dependent::y1, presentation, *gb);
    e.x1_stabilized = fx.stabilized && fx.satisfies_definition;
    e.y1_stabilized = fy.stabilized && fy.satisfies_definition;
    e.x1_iterations = fx.iterations;
    e.y1_iterations = fy.iterations;
    auto egb = elimination_basis(presentation, options.buchberger);
    auto ex = eliminate(Dependent::x1, presentation, egb);
    auto ey = eliminate(Dependent::y1, presentation, egb);
    e.x1_expr = ex.str();
    e.y1_expr = ey.str();
    e.x1_ok = member(ex + PolyF2::variable(presentation.ring, "x1"), *gb);
    e.y1_ok = member(ey + PolyF2::variable(presentation.ring, "y1"), *gb);
    e.agree_with_fixed_point = member(fx.solution + ex, *gb) && member(fy.solution + ey, *gb);
    const unsigned limit = static_cast<unsigned>(pow2(s) * pow2(s));
    e.x2_nilpotency = nilpotency_index("x2", *gb, limit).value_or(0);
    e.y2_nilpotency = nilpotency_index("y2", *gb, limit).value_or(0);
    auto reduced = substituted_relations(presentation, ex, ey);
    auto rgb = buchberger(reduced, reduced.front().order(), options.buchberger);
    e.dimension_unchanged = BigInt(dimension(rgb, cap)) == report.dim_computed;
    bool ok = e.x1_ok && e.y1_ok && e.x1_stabilized && e.y1_stabilized && e.agree_with_fixed_point &&
              e.x2_nilpotency > 0 && e.y2_nilpotency > 0 && e.dimension_unchanged;
    if (!ok) msg = "elimination / fixed-point cross-check failed";
    return ok;
  });

  run("homogeneity", [&](std::string& msg) {
    auto audit = homogeneity_audit(presentation);
    report.homogeneity_ok = all_homogeneous(audit) && audit.size() == relation_names().size();
    for (const auto& entry : audit)
      report.homogeneity.push_back(
          {entry.name, entry.degree.homogeneous(), entry.degree.degree, describe(entry, presentation.vars())});
    if (!report.homogeneity_ok) msg = "inhomogeneous relation present";
    return report.homogeneity_ok;
  });

  run("census", [&](std::string& msg) {
    report.census_ok = census_ok_for(group, s);
    if (!report.census_ok) msg = "census identities failed";
    return report.census_ok;
  });

  run("fgl", [&](std::string& msg) {
    unsigned N = options.fgl_truncation.value_or(static_cast<unsigned>(pow2(s + 1)));
    report.fgl_ok = fgl_witness_ok(s, N);
    if (!report.fgl_ok) msg = "formal group law witness failed";
    return report.fgl_ok;
  });

  return report;
}

/// Independent runs over the product of heights and groups, ordered by s then group.
/// With `parallel`, runs execute on separate threads; output order is unchanged.
inline std::vector<VerificationReport> verify_all(const std::vector<int>& s_list, const std::vector<GroupTag>& groups,
                                                  const VerifyOptions& options = {}, bool parallel = false) {
  std::vector<VerificationReport> out;
  if (!parallel) {
    for (int s : s_list)
      for (auto g : groups) out.push_back(verify(g, s, options));
    return out;
  }
  std::vector<std::future<VerificationReport>> jobs;
  for (int s : s_list)
    for (auto g : groups) jobs.push_back(std::async(std::launch::async, [=] { return verify(g, s, options); }));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

// JSON serialization; big integers travel as decimal strings.

inline void to_json(nlohmann::json& j, const MembershipCheck& m) {
  j = {{"name", m.name}, {"poly", m.poly}, {"member", m.member}};
}
inline void from_json(const nlohmann::json& j, MembershipCheck& m) {
  j.at("name").get_to(m.name);
  j.at("poly").get_to(m.poly);
  j.at("member").get_to(m.member);
}

inline void to_json(nlohmann::json& j, const EliminationCheck& e) {
  j = {{"x1_ok", e.x1_ok},
       {"y1_ok", e.y1_ok},
       {"x1_stabilized", e.x1_stabilized},
       {"y1_stabilized", e.y1_stabilized},
       {"x1_iterations", e.x1_iterations},
       {"y1_iterations", e.y1_iterations},
       {"agree_with_fixed_point", e.agree_with_fixed_point},
       {"dimension_unchanged", e.dimension_unchanged},
       {"x2_nilpotency", e.x2_nilpotency},
       {"y2_nilpotency", e.y2_nilpotency},
       {"x1_expr", e.x1_expr},
       {"y1_expr", e.y1_expr}};
}
inline void from_json(const nlohmann::json& j, EliminationCheck& e) {
  j.at("x1_ok").get_to(e.x1_ok);
  j.at("y1_ok").get_to(e.y1_ok);
  j.at("x1_stabilized").get_to(e.x1_stabilized);
  j.at("y1_stabilized").get_to(e.y1_stabilized);
  j.at("x1_iterations").get_to(e.x1_iterations);
  j.at("y1_iterations").get_to(e.y1_iterations);
  j.at("agree_with_fixed_point").get_to(e.agree_with_fixed_point);
  j.at("dimension_unchanged").get_to(e.dimension_unchanged);
  j.at("x2_nilpotency").get_to(e.x2_nilpotency);
  j.at("y2_nilpotency").get_to(e.y2_nilpotency);
  j.at("x1_expr").get_to(e.x1_expr);
  j.at("y1_expr").get_to(e.y1_expr);
}

inline void to_json(nlohmann::json& j, const HomogeneityCheck& h) {
  j = {{"name", h.name}, {"homogeneous", h.homogeneous}, {"degree", h.degree}, {"detail", h.detail}};
}
inline void from_json(const nlohmann::json& j, HomogeneityCheck& h) {
  j.at("name").get_to(h.name);
  j.at("homogeneous").get_to(h.homogeneous);
  j.at("degree").get_to(h.degree);
  j.at("detail").get_to(h.detail);
}

inline void to_json(nlohmann::json& j, const PhaseRecord& p) {
  j = {{"name", p.name}, {"status", p.status}, {"millis", p.millis}, {"message", p.message}};
}
inline void from_json(const nlohmann::json& j, PhaseRecord& p) {
  j.at("name").get_to(p.name);
  j.at("status").get_to(p.status);
  j.at("millis").get_to(p.millis);
  j.at("message").get_to(p.message);
}

inline void to_json(nlohmann::json& j, const VerificationReport& r) {
  j = {{"group", to_string(r.group)},
       {"s", r.s},
       {"chi_expected", r.chi_expected.str()},
       {"dim_computed", r.dim_computed.str()},
       {"dim_match", r.dim_match},
       {"restriction_expected", r.restriction_expected.str()},
       {"restriction_dim", r.restriction_dim.str()},
       {"restriction_match", r.restriction_match},
       {"relation_checks", r.relation_checks},
       {"elimination", r.elimination},
       {"homogeneity", r.homogeneity},
       {"homogeneity_ok", r.homogeneity_ok},
       {"census_ok", r.census_ok},
       {"fgl_ok", r.fgl_ok},
       {"timings", r.timings},
       {"tool_version", r.tool_version}};
}
inline void from_json(const nlohmann::json& j, VerificationReport& r) {
  r.group = parse_group(j.at("group").get<std::string>());
  j.at("s").get_to(r.s);
  r.chi_expected = BigInt(j.at("chi_expected").get<std::string>());
  r.dim_computed = BigInt(j.at("dim_computed").get<std::string>());
  j.at("dim_match").get_to(r.dim_match);
  r.restriction_expected = BigInt(j.at("restriction_expected").get<std::string>());
  r.restriction_dim = BigInt(j.at("restriction_dim").get<std::string>());
  j.at("restriction_match").get_to(r.restriction_match);
  j.at("relation_checks").get_to(r.relation_checks);
  j.at("elimination").get_to(r.elimination);
  j.at("homogeneity").get_to(r.homogeneity);
  j.at("homogeneity_ok").get_to(r.homogeneity_ok);
  j.at("census_ok").get_to(r.census_ok);
  j.at("fgl_ok").get_to(r.fgl_ok);
  j.at("timings").get_to(r.timings);
  j.at("tool_version").get_to(r.tool_version);
}

/// Human-readable table, one block per report.
inline void print_table(std::ostream& os, const std::vector<VerificationReport>& reports) {
  auto yn = [](bool b) { return b ? "yes" : "NO"; };
  for (const auto& r : reports) {
    os << "== " << to_string(r.group) << "  s=" << r.s << "  (" << (r.passed() ? "PASS" : "FAIL") << ")\n";
    os << "  dimension          " << std::setw(8) << r.dim_computed.str() << "  expected " << r.chi_expected.str()
       << "  match " << yn(r.dim_match) << '\n';
    os << "  restriction (c=0)  " << std::setw(8) << r.restriction_dim.str() << "  expected "
       << r.restriction_expected.str() << "  match " << yn(r.restriction_match) << '\n';
    for (const auto& m : r.relation_checks) os << "  member " << std::setw(14) << std::left << m.name << std::right << " " << yn(m.member) << '\n';
    const auto& e = r.elimination;
    os << "  eliminate x1/y1    " << yn(e.x1_ok) << "/" << yn(e.y1_ok) << "  fixed point " << yn(e.x1_stabilized) << "/"
       << yn(e.y1_stabilized) << "  agree " << yn(e.agree_with_fixed_point) << "  nil(x2,y2) = (" << e.x2_nilpotency
       << ", " << e.y2_nilpotency << ")\n";
    os << "  homogeneity " << yn(r.homogeneity_ok) << "  census " << yn(r.census_ok) << "  fgl " << yn(r.fgl_ok) << '\n';
    for (const auto& p : r.timings) {
      os << "  phase " << std::setw(12) << std::left << p.name << std::right << " " << std::setw(14) << p.status << " "
         << std::fixed << std::setprecision(1) << std::setw(9) << p.millis << " ms";
      if (!p.message.empty()) os << "  " << p.message;
      os << '\n';
    }
    os.unsetf(std::ios::fixed);
  }
}

}  // namespace kbg
