// Descending, ascending and conjoint assignment rules.

#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "ordclass/core.hpp"
#include "ordclass/relations.hpp"

namespace ordclass {

enum class Rule { descending, ascending, conjoint };

inline const char* to_string(Rule r) noexcept {
  switch (r) {
    case Rule::descending: return "descending";
    case Rule::ascending: return "ascending";
    case Rule::conjoint: return "conjoint";
  }
  return "?";
}

/// Outcome of one rule application, kept for explanations.
struct RuleTrace {
  Rule rule;
  /// Stopping index of the scan: 0..M for descending (0 is the sentinel
  /// xSR_0), 1..M+1 for ascending (M+1 is the sentinel R_{M+1}Sx). For the
  /// conjoint rule this is the descending index.
  int first_index;
  /// Ascending stopping index; only meaningful for the conjoint rule.
  int second_index;
  AssignmentRange range;
  std::vector<RelationKind> relation_row;
};

/// Per-category relation kinds between x and R_1..R_M.
template <RelationOracle R>
std::vector<RelationKind> relation_row(const R& rel, const ReferenceSet& ref, std::size_t x) {
  std::vector<RelationKind> row;
  row.reserve(static_cast<std::size_t>(ref.size()));
  for (int k = 1; k <= ref.size(); ++k) row.push_back(classify_relation(rel, x, ref.subset(k)));
  return row;
}

/// Range produced by the descending rule when the scan stops at `k`.
inline AssignmentRange descending_range(int k, int m) {
  if (k == m) return AssignmentRange(m, m, m);
  if (k == 0) return AssignmentRange(1, 1, m);
  return AssignmentRange(k, k + 1, m);
}

/// Range produced by the ascending rule when the scan stops at `k`.
inline AssignmentRange ascending_range(int k, int m) {
  if (k == 1) return AssignmentRange(1, 1, m);
  if (k == m + 1) return AssignmentRange(m, m, m);
  return AssignmentRange(k - 1, k, m);
}

template <RelationOracle R>
int descending_index(const R& rel, const ReferenceSet& ref, std::size_t x) {
  for (int k = ref.size(); k >= 1; --k) {
    if (s_action_vs_set(rel, x, ref.subset(k))) return k;
  }
  return 0;
}

template <RelationOracle R>
int ascending_index(const R& rel, const ReferenceSet& ref, std::size_t x) {
  for (int k = 1; k <= ref.size(); ++k) {
    if (s_set_vs_action(rel, ref.subset(k), x)) return k;
  }
  return ref.size() + 1;
}

/// Scans R_M, ..., R_1 for the first subset x outranks.
template <RelationOracle R>
RuleTrace descend(const R& rel, const ReferenceSet& ref, std::size_t x) {
  const int k = descending_index(rel, ref, x);
  return {Rule::descending, k, k, descending_range(k, ref.size()), relation_row(rel, ref, x)};
}

/// Scans R_1, ..., R_M for the first subset that outranks x.
template <RelationOracle R>
RuleTrace ascend(const R& rel, const ReferenceSet& ref, std::size_t x) {
  const int k = ascending_index(rel, ref, x);
  return {Rule::ascending, k, k, ascending_range(k, ref.size()), relation_row(rel, ref, x)};
}

/// Range spanned by the descending lower limit and the ascending upper limit.
inline AssignmentRange conjoint_range(const AssignmentRange& descending,
                                      const AssignmentRange& ascending) {
  const int d = descending.low();
  const int a = ascending.high();
  return AssignmentRange(std::min(d, a), std::max(d, a), descending.categories());
}

template <RelationOracle R>
RuleTrace conjoint(const R& rel, const ReferenceSet& ref, std::size_t x) {
  const int m = ref.size();
  const int d = descending_index(rel, ref, x);
  const int a = ascending_index(rel, ref, x);
  return {Rule::conjoint, d, a, conjoint_range(descending_range(d, m), ascending_range(a, m)),
          relation_row(rel, ref, x)};
}

template <RelationOracle R>
RuleTrace apply_rule(Rule rule, const R& rel, const ReferenceSet& ref, std::size_t x) {
  switch (rule) {
    case Rule::descending: return descend(rel, ref, x);
    case Rule::ascending: return ascend(rel, ref, x);
    case Rule::conjoint: break;
  }
  return conjoint(rel, ref, x);
}

/// Componentwise order on ranges: r1 is not worse than r2.
inline bool range_not_worse(const AssignmentRange& r1, const AssignmentRange& r2) noexcept {
  return r1.low() >= r2.low() && r1.high() >= r2.high();
}

struct Comparability {
  std::vector<bool> per_category;  // index k-1 holds "x comparable with R_k"
  bool all = true;
};

template <RelationOracle R>
Comparability is_comparable(const R& rel, const ReferenceSet& ref, std::size_t x) {
  Comparability c;
  for (int k = 1; k <= ref.size(); ++k) {
    const bool ok = s_action_vs_set(rel, x, ref.subset(k)) || s_set_vs_action(rel, ref.subset(k), x);
    c.per_category.push_back(ok);
    c.all = c.all && ok;
  }
  return c;
}

}  // namespace ordclass
