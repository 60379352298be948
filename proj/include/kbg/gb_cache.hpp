#pragma once

// On-disk reduced Groebner bases. Format:
//   group=<tag>
//   s=<int>
//   order=<order spec>
//   tool_version=<semver>
// followed by one polynomial per line, ascending by leading monomial.

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "kbg/errors.hpp"
#include "kbg/groebner.hpp"
#include "kbg/version.hpp"

namespace kbg {

struct CacheKey {
  std::string group;  // "G39", or "G39-c0" for the c = 0 restriction
  int s = 1;
  std::string order;
  std::string tool_version{kToolVersion};

  bool operator==(const CacheKey&) const = default;

  std::string file_name() const {
    std::string name = group + "_s" + std::to_string(s) + "_" + order + "_v" + tool_version + ".gb";
    for (auto& ch : name)
      if (ch == ':' || ch == ',' || ch == '|' || ch == '/') ch = '_';
    return name;
  }
};

inline void save_gb(const ReducedGB& gb, const CacheKey& key, std::ostream& out) {
  out << "group=" << key.group << '\n'
      << "s=" << key.s << '\n'
      << "order=" << key.order << '\n'
      << "tool_version=" << key.tool_version << '\n';
  for (const auto& g : gb.basis) out << g.str() << '\n';
}

/// Reads a cached basis over `vars`; every header must match `expected`.
inline ReducedGB load_gb(std::istream& in, const CacheKey& expected, const VarTable& vars) {
  std::string line;
  auto header = [&](const std::string& name) {
    if (!std::getline(in, line)) throw CacheError("cache file truncated before header '" + name + "'");
    auto prefix = name + "=";
    if (line.rfind(prefix, 0) != 0) throw CacheError("cache header '" + name + "' missing");
    return line.substr(prefix.size());
  };
  CacheKey found;
  found.group = header("group");
  try {
    found.s = std::stoi(header("s"));
  } catch (const std::logic_error&) {
    throw CacheError("cache header 's' is not an integer");
  }
  found.order = header("order");
  found.tool_version = header("tool_version");
  if (found.group != expected.group) throw CacheError("cache group mismatch: " + found.group);
  if (found.s != expected.s) throw CacheError("cache s mismatch: " + std::to_string(found.s));
  if (found.order != expected.order) throw CacheError("cache order mismatch: " + found.order);
  if (found.tool_version != expected.tool_version) throw CacheError("cache tool version mismatch: " + found.tool_version);

  RingPtr ring;
  try {
    ring = make_ring(vars, MonomialOrder::from_spec(found.order, vars));
  } catch (const UsageError& e) {
    throw CacheError(std::string("cache order unusable: ") + e.what());
  }
  ReducedGB gb{ring, {}};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      gb.basis.push_back(parse_poly(line, ring));
    } catch (const ParseError& e) {
      throw CacheError(std::string("corrupt cache polynomial: ") + e.what());
    }
    if (gb.basis.back().is_zero()) throw CacheError("cache contains a zero polynomial");
  }
  if (gb.basis.empty()) throw CacheError("cache contains no basis polynomials");
  for (std::size_t i = 1; i < gb.basis.size(); ++i)
    if (ring->order.compare(gb.basis[i - 1].leading(), gb.basis[i].leading()) >= 0)
      throw CacheError("cache basis is not in canonical order");
  return gb;
}

inline void save_gb(const ReducedGB& gb, const CacheKey& key, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw CacheError("cannot write cache file " + path.string());
  save_gb(gb, key, out);
}

inline ReducedGB load_gb(const std::filesystem::path& path, const CacheKey& expected, const VarTable& vars) {
  std::ifstream in(path);
  if (!in) throw CacheError("cannot read cache file " + path.string());
  return load_gb(in, expected, vars);
}

}  // namespace kbg
