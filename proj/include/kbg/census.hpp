#pragma once

// Exact rank bookkeeping for the restriction to the index-two abelian subgroup:
// Euler characteristics, the basis families of the invariant part, and the
// reassembly of the final rank from free and trivial summands.

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kbg/errors.hpp"
#include "kbg/presentations.hpp"

namespace kbg {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(unsigned base, long exponent) {
  if (exponent < 0) throw UsageError("negative exponent in census arithmetic");
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

inline void require_height(int s) {
  if (s < 1) throw UsageError("height s must be >= 1");
}

/// (16^s + 2 * 8^s - 4^s) / 2
inline BigInt chi(int s) {
  require_height(s);
  return (big_pow(16, s) + 2 * big_pow(8, s) - big_pow(4, s)) / 2;
}

/// (16^s + 4^s) / 2
inline BigInt chi_restriction(int s) {
  require_height(s);
  return (big_pow(16, s) + big_pow(4, s)) / 2;
}

/// Rank of the trivial summand: 4^s.
inline BigInt trivial_rank(int s) {
  require_height(s);
  return big_pow(4, s);
}

using SExpr = std::function<BigInt(int)>;

/// Half-open index range [lower(s), upper(s)).
struct IndexRange {
  std::string index;
  SExpr lower;
  SExpr upper;
};

struct BasisFamily {
  std::string label;
  std::vector<IndexRange> index_ranges;
  std::optional<std::string> stated_text;
  std::optional<SExpr> stated_cardinality;
  /// False for a family listed as a sub-basis of families already counted.
  bool counted_in_total = true;

  BigInt range_cardinality(int s) const {
    BigInt n = 1;
    for (const auto& r : index_ranges) {
      BigInt width = r.upper(s) - r.lower(s);
      if (width < 0) width = 0;
      n *= width;
    }
    return n;
  }
};

namespace detail {

inline SExpr p2(long mul, long add) {
  return [mul, add](int s) { return big_pow(2, mul * s + add); };
}
inline SExpr constant(long k) {
  return [k](int) { return BigInt(k); };
}
inline IndexRange below(std::string index, SExpr upper) { return {std::move(index), constant(0), std::move(upper)}; }
inline IndexRange positive_below(std::string index, SExpr upper) {
  return {std::move(index), constant(1), std::move(upper)};
}

}  // namespace detail

/// Basis families of the invariant part for each group: index ranges plus a
/// stated cardinality. Totals are taken from the ranges.
inline std::vector<BasisFamily> basis_families(GroupTag group) {
  using detail::below;
  using detail::p2;
  using detail::positive_below;
  auto two_s_minus_one = [](int s) { return big_pow(2, s) - 1; };

  if (group == GroupTag::G38) {
    return {
        BasisFamily{"x^i y^j (trivial)", {below("i", p2(1, 0)), below("j", p2(1, 0))}, "4^s",
                    SExpr([](int s) { return big_pow(4, s); })},
        BasisFamily{"w^i x^j y^k",
                    {positive_below("i", p2(1, 0)), below("j", p2(1, 0)), below("k", p2(1, -1))},
                    "(2^s-1) 2^s 2^{s-1}",
                    SExpr([](int s) { return (big_pow(2, s) - 1) * big_pow(2, s) * big_pow(2, s - 1); })},
        BasisFamily{"w^i o^j x^k y^l",
                    {below("i", p2(1, 0)), positive_below("j", p2(1, 0)), below("k", p2(1, -1)), below("l", p2(1, -1))},
                    "2^s (2^s-1) 2^s 2^{s-1}",
                    SExpr([](int s) { return big_pow(2, s) * (big_pow(2, s) - 1) * big_pow(2, s) * big_pow(2, s - 1); })},
        BasisFamily{"w^i o^j x^k y^l T",
                    {below("i", p2(1, 0)), below("j", two_s_minus_one), below("k", p2(1, -1)), below("l", p2(1, -1))},
                    "2^s (2^s-1) 2^s 2^{s-1}",
                    SExpr([](int s) { return big_pow(2, s) * (big_pow(2, s) - 1) * big_pow(2, s) * big_pow(2, s - 1); })},
    };
  }

  // G41 interchanges the roles of a and b.
  const bool swap_ab = group == GroupTag::G41;
  const std::string first = swap_ab ? "b" : "a";
  const std::string second = swap_ab ? "a" : "b";
  return {
      BasisFamily{"x^i y^j", {below("i", p2(2, -1)), below("j", p2(2, -1))}, "2^{4s-2}", p2(4, -2)},
      BasisFamily{first + " x^i y^j", {below("i", p2(1, 0)), below("j", p2(1, -1))}, "2^{2s-1}", p2(2, -1)},
      BasisFamily{second + " x^i y^j", {below("i", p2(2, -1)), below("j", p2(1, -1))}, "2^{3s-2}", p2(3, -2)},
      BasisFamily{"T x^i y^j",
                  {below("i", p2(2, -1)),
                   below("j", SExpr([](int s) { return big_pow(2, s - 1) * (big_pow(2, s) - 1); }))},
                  "2^{3s-2} (2^s-1)",
                  SExpr([](int s) { return big_pow(2, 3 * s - 2) * (big_pow(2, s) - 1); })},
      BasisFamily{"x^i y^j (trivial sub-basis)", {below("i", p2(1, 0)), below("j", p2(1, 0))}, std::nullopt,
                  std::nullopt, false},
  };
}

struct FamilyCount {
  std::string label;
  BigInt from_ranges;
  std::optional<BigInt> stated;
  std::optional<std::string> stated_text;
  bool counted_in_total = true;
  bool mismatch = false;
};

struct FamilyTotals {
  GroupTag group = GroupTag::G39;
  int s = 1;
  std::vector<FamilyCount> families;
  BigInt total_from_ranges;
  BigInt total_stated;  // sum of stated cardinalities over counted families
  BigInt expected;      // chi_restriction(s)
  bool total_match = false;

  std::vector<std::string> mismatched_labels() const {
    std::vector<std::string> out;
    for (const auto& f : families)
      if (f.mismatch) out.push_back(f.label);
    return out;
  }
};

inline FamilyTotals family_totals(GroupTag group, int s) {
  require_height(s);
  FamilyTotals out;
  out.group = group;
  out.s = s;
  for (const auto& fam : basis_families(group)) {
    FamilyCount c;
    c.label = fam.label;
    c.from_ranges = fam.range_cardinality(s);
    c.counted_in_total = fam.counted_in_total;
    c.stated_text = fam.stated_text;
    if (fam.stated_cardinality) {
      c.stated = (*fam.stated_cardinality)(s);
      c.mismatch = *c.stated != c.from_ranges;
    }
    if (c.counted_in_total) {
      out.total_from_ranges += c.from_ranges;
      out.total_stated += c.stated.value_or(c.from_ranges);
    }
    out.families.push_back(std::move(c));
  }
  out.expected = chi_restriction(s);
  out.total_match = out.total_from_ranges == out.expected;
  return out;
}

/// Free invariants plus the trivial summand tensored with F2[c]/c^{2^s}:
/// (chi_restriction - 4^s) + 4^s * 2^s == chi.
inline bool reassembly_identity(int s) {
  require_height(s);
  BigInt free_rank = chi_restriction(s) - trivial_rank(s);
  return free_rank + trivial_rank(s) * big_pow(2, s) == chi(s);
}

struct CensusRow {
  int s = 1;
  BigInt chi;
  BigInt chi_restriction;
  bool reassembly_ok = false;
  std::vector<FamilyTotals> groups;
};

/// Every check for one height: family totals match the restriction rank for all
/// groups, the reassembly identity holds, and only the two G38 w-o families carry
/// stated cardinalities that disagree with their ranges.
inline bool census_row_ok(const CensusRow& row) {
  if (!row.reassembly_ok) return false;
  for (const auto& g : row.groups) {
    if (!g.total_match) return false;
    auto bad = g.mismatched_labels();
    if (g.group == GroupTag::G38) {
      if (bad != std::vector<std::string>{"w^i o^j x^k y^l", "w^i o^j x^k y^l T"}) return false;
    } else if (!bad.empty()) {
      return false;
    }
  }
  return true;
}

inline std::vector<CensusRow> census(int s_max) {
  if (s_max < 1) throw UsageError("--s-max must be >= 1");
  std::vector<CensusRow> rows;
  for (int s = 1; s <= s_max; ++s) {
    CensusRow row;
    row.s = s;
    row.chi = chi(s);
    row.chi_restriction = chi_restriction(s);
    row.reassembly_ok = reassembly_identity(s);
    for (auto g : kAllGroups) row.groups.push_back(family_totals(g, s));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace kbg
