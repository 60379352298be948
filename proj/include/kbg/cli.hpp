#pragma once

// Command-line front end. Exit codes: 0 all executed checks pass, 1 finding,
// 2 usage or input error, 3 resource error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kbg/census.hpp"
#include "kbg/errors.hpp"
#include "kbg/gb_cache.hpp"
#include "kbg/groebner.hpp"
#include "kbg/honda_fgl.hpp"
#include "kbg/presentations.hpp"
#include "kbg/verify.hpp"
#include "kbg/version.hpp"

namespace kbg::cli {

enum ExitCode : int { kOk = 0, kFinding = 1, kUsage = 2, kResource = 3 };

struct CliConfig {
  std::string subcommand;
  std::string group = "all";
  std::vector<int> s_values{1};
  std::optional<std::string> order;
  std::optional<unsigned> truncation;
  int height = 1;
  int s_max = 16;
  std::optional<std::string> cache_dir;
  std::optional<std::string> output;  // --dump / --json
  std::optional<std::string> from;    // presentation interchange file
  std::vector<std::string> skip;
  std::optional<unsigned> degree_cap;
  std::string poly;
  bool restrict_c0 = false;
  bool verbose = false;
  int jobs = 0;  // 0: one thread per group when --group all
};

inline std::vector<GroupTag> selected_groups(const std::string& text) {
  if (text == "all" || text == "ALL") return {std::begin(kAllGroups), std::end(kAllGroups)};
  return {parse_group(text)};
}

inline void write_text(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path || *path == "-") {
    out << text;
    return;
  }
  std::filesystem::path p(*path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream file(p);
  if (!file) throw UsageError("cannot write " + *path);
  file << text;
}

inline Presentation presentation_for(const CliConfig& cfg, GroupTag group, int s) {
  Presentation p;
  if (cfg.from) {
    std::ifstream in(*cfg.from);
    if (!in) throw UsageError("cannot read presentation file " + *cfg.from);
    p = load_presentation(in);
  } else {
    p = build(group, s);
  }
  if (cfg.restrict_c0) p = restrict_c0(p);
  return p;
}

inline ReducedGB gb_for(const CliConfig& cfg, const Presentation& p) {
  auto plain = forget_v(p);
  auto order = cfg.order ? MonomialOrder::from_spec(*cfg.order, plain.vars()) : plain.ring->order;
  if (!cfg.order && !cfg.from) {
    VerifyOptions opts;
    if (cfg.cache_dir) opts.cache_dir = *cfg.cache_dir;
    return presentation_gb(p, opts);
  }
  return buchberger(plain.polys(), order);
}

inline int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  VerifyOptions opts;
  for (const auto& phase : cfg.skip) {
    if (std::find(verify_phases().begin(), verify_phases().end(), phase) == verify_phases().end() ||
        phase == "dimension")
      throw UsageError("cannot skip unknown phase '" + phase + "'");
    opts.skip.insert(phase);
  }
  if (cfg.cache_dir) opts.cache_dir = *cfg.cache_dir;
  opts.degree_cap = cfg.degree_cap;
  auto groups = selected_groups(cfg.group);
  bool parallel = cfg.jobs != 1 && groups.size() > 1;
  if (cfg.verbose) err << "verifying " << groups.size() << " group(s) at " << cfg.s_values.size() << " height(s)\n";
  auto reports = verify_all(cfg.s_values, groups, opts, parallel);
  print_table(out, reports);
  if (cfg.output) {
    nlohmann::json doc = {{"tool_version", std::string(kToolVersion)}, {"reports", reports}};
    write_text(cfg.output, doc.dump(2) + "\n", out);
  }
  bool resource = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.has_resource_error(); });
  bool pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
  if (resource) return kResource;
  return pass ? kOk : kFinding;
}

inline int cmd_dim(const CliConfig& cfg, std::ostream& out) {
  auto groups = selected_groups(cfg.group);
  bool all_match = true;
  for (int s : cfg.s_values) {
    for (auto g : groups) {
      auto p = presentation_for(cfg, g, s);
      auto gb = gb_for(cfg, p);
      auto d = dimension(gb, cfg.degree_cap.value_or(default_degree_cap(p.s)));
      BigInt expected = p.restricted ? chi_restriction(p.s) : chi(p.s);
      if (BigInt(d) != expected) all_match = false;
      if (cfg.from || (groups.size() == 1 && cfg.s_values.size() == 1))
        out << d << '\n';
      else
        out << to_string(p.group) << " s=" << p.s << " dim=" << d << " expected=" << expected << '\n';
      if (cfg.from) return BigInt(d) == expected ? kOk : kFinding;
    }
  }
  return all_match ? kOk : kFinding;
}

inline int cmd_gb(const CliConfig& cfg, std::ostream& out) {
  auto groups = selected_groups(cfg.group);
  if (groups.size() != 1 || cfg.s_values.size() != 1) throw UsageError("gb needs a single --group and --s");
  auto p = presentation_for(cfg, groups.front(), cfg.s_values.front());
  auto gb = gb_for(cfg, p);
  CacheKey key{to_string(p.group) + (p.restricted ? "-c0" : ""), p.s, gb.order().spec(gb.vars())};
  std::ostringstream text;
  save_gb(gb, key, text);
  write_text(cfg.output, text.str(), out);
  return kOk;
}

inline int cmd_nf(const CliConfig& cfg, std::ostream& out) {
  auto groups = selected_groups(cfg.group);
  if (groups.size() != 1 || cfg.s_values.size() != 1) throw UsageError("nf needs a single --group and --s");
  auto p = presentation_for(cfg, groups.front(), cfg.s_values.front());
  auto gb = gb_for(cfg, p);
  auto f = parse_poly(cfg.poly, p.ring);
  out << normal_form(f, gb).str() << '\n';
  return kOk;
}

inline int cmd_census(const CliConfig& cfg, std::ostream& out) {
  auto rows = census(cfg.s_max);
  bool all_ok = true;
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& row : rows) {
    bool ok = census_row_ok(row);
    all_ok = all_ok && ok;
    out << "s=" << row.s << "  chi=" << row.chi << "  chi_restriction=" << row.chi_restriction
        << "  reassembly=" << (row.reassembly_ok ? "ok" : "FAIL") << "  " << (ok ? "OK" : "FAIL") << '\n';
    nlohmann::json jrow = {{"s", row.s},
                           {"chi", row.chi.str()},
                           {"chi_restriction", row.chi_restriction.str()},
                           {"reassembly_ok", row.reassembly_ok},
                           {"ok", ok}};
    for (const auto& g : row.groups) {
      out << "  " << to_string(g.group) << "  ranges total " << g.total_from_ranges << " ("
          << (g.total_match ? "matches" : "DIFFERS") << ")";
      auto bad = g.mismatched_labels();
      if (!bad.empty()) {
        out << "  stated-vs-range mismatch:";
        for (const auto& f : g.families)
          if (f.mismatch) out << " [" << f.label << ": ranges " << f.from_ranges << ", stated " << *f.stated << "]";
      }
      out << '\n';
      nlohmann::json fams = nlohmann::json::array();
      for (const auto& f : g.families)
        fams.push_back({{"label", f.label},
                        {"from_ranges", f.from_ranges.str()},
                        {"stated", f.stated ? nlohmann::json(f.stated->str()) : nlohmann::json(nullptr)},
                        {"stated_text", f.stated_text ? nlohmann::json(*f.stated_text) : nlohmann::json(nullptr)},
                        {"counted_in_total", f.counted_in_total},
                        {"mismatch", f.mismatch}});
      jrow["groups"].push_back({{"group", to_string(g.group)},
                                {"total_from_ranges", g.total_from_ranges.str()},
                                {"total_stated", g.total_stated.str()},
                                {"total_match", g.total_match},
                                {"families", fams}});
    }
    doc.push_back(jrow);
  }
  if (cfg.output) write_text(cfg.output, doc.dump(2) + "\n", out);
  return all_ok ? kOk : kFinding;
}

inline int cmd_fgl(const CliConfig& cfg, std::ostream& out) {
  unsigned N = cfg.truncation.value_or(static_cast<unsigned>(pow2(cfg.height + 1)));
  auto law = fgl(cfg.height, N);
  out << "F(x,y) = " << law.F.str() << '\n';
  out << "[2](x) = " << law.two_series.str() << '\n';
  bool ok = is_symmetric(law.F) && is_unital(law.F);
  if (N >= 3) ok = ok && associativity_check(cfg.height, N);
  if (N >= static_cast<unsigned>(pow2(cfg.height))) {
    Monomial expected = Monomial::variable(0, static_cast<Exponent>(pow2(cfg.height)));
    expected.v_exp = 1;
    ok = ok && law.two_series == PolyF2::monomial(law.two_series.ring(), expected);
  }
  out << "checks: " << (ok ? "ok" : "FAILED") << '\n';
  return ok ? kOk : kFinding;
}

inline int cmd_presentation(const CliConfig& cfg, std::ostream& out) {
  auto groups = selected_groups(cfg.group);
  if (groups.size() != 1 || cfg.s_values.size() != 1) throw UsageError("presentation needs a single --group and --s");
  auto p = presentation_for(cfg, groups.front(), cfg.s_values.front());
  write_text(cfg.output, dump(p), out);
  return kOk;
}

/// Runs the tool on argv-style arguments (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CliConfig cfg;
  CLI::App app{"Verifies ring presentations of K(s)^*(BG) for the order-32 groups G38-G41"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  app.add_flag("-v,--verbose", cfg.verbose, "Progress messages on stderr");

  auto group_opt = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "g38, g39, g40, g41 or all")->capture_default_str();
  };
  auto s_opt = [&](CLI::App* sub) {
    sub->add_option("--s", cfg.s_values, "Height(s), comma separated")->delimiter(',')->check(CLI::PositiveNumber);
  };
  auto common = [&](CLI::App* sub) {
    group_opt(sub);
    s_opt(sub);
    sub->add_option("--cache", cfg.cache_dir, "Directory for cached Groebner bases");
    sub->add_option("--degree-cap", cfg.degree_cap, "Staircase degree cap (default 2 s 2^s + 8)");
    sub->add_option("--from", cfg.from, "Read the presentation from an interchange file");
  };

  auto* verify_cmd = app.add_subcommand("verify", "Run every check and print a report");
  common(verify_cmd);
  verify_cmd->add_option("--json", cfg.output, "Write the machine-readable report here");
  verify_cmd->add_option("--skip", cfg.skip, "Phases to skip")->delimiter(',');
  verify_cmd->add_option("--jobs", cfg.jobs, "1 to run groups sequentially");

  auto* dim_cmd = app.add_subcommand("dim", "Quotient dimension");
  common(dim_cmd);
  dim_cmd->add_flag("--restrict-c0", cfg.restrict_c0, "Specialize c = 0 first");

  auto* gb_cmd = app.add_subcommand("gb", "Reduced Groebner basis in cache format");
  common(gb_cmd);
  gb_cmd->add_option("--dump", cfg.output, "Output path (default stdout)");
  gb_cmd->add_option("--order", cfg.order, "Order spec, e.g. degrevlex:T,x1,y1,x2,y2,a,b,c or elim:x1,y1|T,x2,y2,a,b,c");
  gb_cmd->add_flag("--restrict-c0", cfg.restrict_c0, "Specialize c = 0 first");

  auto* nf_cmd = app.add_subcommand("nf", "Normal form of a polynomial");
  common(nf_cmd);
  nf_cmd->add_option("--poly", cfg.poly, "Polynomial text")->required();
  nf_cmd->add_flag("--restrict-c0", cfg.restrict_c0, "Specialize c = 0 first");

  auto* census_cmd = app.add_subcommand("census", "Rank bookkeeping identities");
  census_cmd->add_option("--s-max", cfg.s_max, "Largest height")->check(CLI::PositiveNumber);
  census_cmd->add_option("--json", cfg.output, "Write machine-readable output here");

  auto* fgl_cmd = app.add_subcommand("fgl", "Height-s Honda formal group law mod 2");
  fgl_cmd->add_option("--height", cfg.height, "Height s")->check(CLI::PositiveNumber);
  fgl_cmd->add_option("--truncate", cfg.truncation, "Truncation degree N (default 2^{s+1})");

  auto* pres_cmd = app.add_subcommand("presentation", "Emit the relation list");
  group_opt(pres_cmd);
  s_opt(pres_cmd);
  pres_cmd->add_option("--dump", cfg.output, "Output path (default stdout)");
  pres_cmd->add_flag("--restrict-c0", cfg.restrict_c0, "Specialize c = 0 first");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*verify_cmd) return cmd_verify(cfg, out, err);
    if (*dim_cmd) return cmd_dim(cfg, out);
    if (*gb_cmd) return cmd_gb(cfg, out);
    if (*nf_cmd) return cmd_nf(cfg, out);
    if (*census_cmd) return cmd_census(cfg, out);
    if (*fgl_cmd) return cmd_fgl(cfg, out);
    if (*pres_cmd) return cmd_presentation(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const CacheError& e) {
    err << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kResource;
  } catch (const IndeterminateError& e) {
    err << "indeterminate: " << e.what() << '\n';
    return kResource;
  } catch (const std::exception& e) {
    err << "finding: " << e.what() << '\n';
    return kFinding;
  }
  return kUsage;
}

}  // namespace kbg::cli
