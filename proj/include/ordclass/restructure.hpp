// Merging and splitting categories, and the stability audit that checks how
// assignments respond to either operation.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordclass/assignment.hpp"
#include "ordclass/core.hpp"
#include "ordclass/relations.hpp"

namespace ordclass {

enum class RestructureKind { merge, split };

struct Restructuring {
  RestructureKind kind;
  int at;  // merge: C_at with C_at+1; split: C_at
};

/// New indices covered by an old category: a single index, or two for the
/// category that was split.
struct IndexImage {
  int low;
  int high;
  friend bool operator==(const IndexImage&, const IndexImage&) = default;
};

struct RestructureOutcome {
  Problem problem;
  Restructuring op;
  std::vector<IndexImage> index_map;  // entry k-1 is the image of old C_k
  ValidationReport condition2;

  bool valid() const noexcept { return condition2.passed(); }
};

/// Replaces C_k and C_k+1 by one class characterized by R_k united with
/// R_k+1. The reference set validity is re-audited, not assumed.
template <RelationOracle R>
RestructureOutcome merge(const Problem& problem, int k, const R& rel, std::string merged_name = {}) {
  const int m = problem.category_count();
  if (k < 1 || k > m - 1) {
    throw std::out_of_range("merge index " + std::to_string(k) + " outside 1.." + std::to_string(m - 1));
  }
  if (m < 3) throw std::out_of_range("merging would leave fewer than 2 categories");
  if (merged_name.empty()) merged_name = problem.categories.name(k) + "+" + problem.categories.name(k + 1);

  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<IndexImage> index_map;
  for (int i = 1; i <= m; ++i) {
    if (i == k + 1) {
      index_map.push_back({k, k});
      continue;
    }
    if (i == k) {
      names.push_back(merged_name);
      auto joined = problem.reference.subset(k);
      const auto& next = problem.reference.subset(k + 1);
      joined.insert(joined.end(), next.begin(), next.end());
      subsets.push_back(std::move(joined));
      index_map.push_back({k, k});
      continue;
    }
    names.push_back(problem.categories.name(i));
    subsets.push_back(problem.reference.subset(i));
    const int j = i < k ? i : i - 1;
    index_map.push_back({j, j});
  }
  ReferenceSet ref(std::move(subsets), problem.actions.size());
  auto report = check_condition2(rel, ref);
  return {Problem{problem.criteria, CategorySet(std::move(names)), problem.actions, std::move(ref),
                  problem.assign},
          {RestructureKind::merge, k},
          std::move(index_map),
          std::move(report)};
}

/// Replaces C_k by two adjacent classes characterized by `lower` and
/// `upper`. The new subsets need not partition the old R_k. A reference set
/// failing its axioms is reported in the outcome, not thrown.
template <RelationOracle R>
RestructureOutcome split(const Problem& problem, int k, std::vector<std::size_t> lower,
                         std::vector<std::size_t> upper, const R& rel, std::string lower_name = {},
                         std::string upper_name = {}) {
  const int m = problem.category_count();
  if (k < 1 || k > m) {
    throw std::out_of_range("split index " + std::to_string(k) + " outside 1.." + std::to_string(m));
  }
  if (lower.empty() || upper.empty()) throw ValidationError("split subsets must be nonempty");
  for (std::size_t a : lower) {
    if (std::find(upper.begin(), upper.end(), a) != upper.end()) {
      throw ValidationError("split subsets must be disjoint (shared action '" + problem.actions.at(a).id + "')");
    }
  }
  if (lower_name.empty()) lower_name = problem.categories.name(k) + "-lower";
  if (upper_name.empty()) upper_name = problem.categories.name(k) + "-upper";

  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<IndexImage> index_map;
  for (int i = 1; i <= m; ++i) {
    if (i == k) {
      names.push_back(lower_name);
      names.push_back(upper_name);
      subsets.push_back(lower);
      subsets.push_back(upper);
      index_map.push_back({k, k + 1});
      continue;
    }
    names.push_back(problem.categories.name(i));
    subsets.push_back(problem.reference.subset(i));
    const int j = i < k ? i : i + 1;
    index_map.push_back({j, j});
  }
  ReferenceSet ref(std::move(subsets), problem.actions.size());
  auto report = check_condition2(rel, ref);
  return {Problem{problem.criteria, CategorySet(std::move(names)), problem.actions, std::move(ref),
                  problem.assign},
          {RestructureKind::split, k},
          std::move(index_map),
          std::move(report)};
}

struct StabilityVerdict {
  std::string action;
  AssignmentRange before;
  AssignmentRange after;
  /// Stability clause: "1.a".."1.d" after a merge, "2.a".."2.c" after a split.
  std::string matched_case;
  bool conforms;
  /// What the clause allows, for reports.
  std::string expectation;
};

namespace detail {

inline int merged_index(int i, int k) { return i <= k ? i : (i == k + 1 ? k : i - 1); }
inline int split_index(int i, int k) { return i < k ? i : i + 1; }

inline std::string set_text(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

inline std::string ranges_text(const std::vector<AssignmentRange>& v) {
  std::string s = "one of ";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s;
}

struct ClauseCheck {
  std::string clause;
  bool conforms;
  std::string expectation;
};

// Separate rules after merging C_k and C_k+1.
inline ClauseCheck separate_after_merge(const AssignmentRange& before, const AssignmentRange& after, int k) {
  const int m2 = before.categories() - 1;
  const auto merged = [k](int i) { return i == k || i == k + 1; };
  const bool lo = merged(before.low());
  const bool hi = merged(before.high());
  if (!before.contains(k) && !before.contains(k + 1)) {
    AssignmentRange want(merged_index(before.low(), k), merged_index(before.high(), k), m2);
    return {"1.a", after == want, "same range " + to_string(want)};
  }
  if (lo && hi) {
    return {"1.c", after.contains(k), "range containing new class " + std::to_string(k)};
  }
  AssignmentRange want = lo ? AssignmentRange(k, merged_index(before.high(), k), m2)
                            : AssignmentRange(merged_index(before.low(), k), k, m2);
  return {"1.b", after == want, "range " + to_string(want)};
}

// Separate rules after splitting C_k.
inline ClauseCheck separate_after_split(Rule rule, const AssignmentRange& before, const AssignmentRange& after,
                                        int k) {
  const int m2 = before.categories() + 1;
  if (!before.contains(k)) {
    AssignmentRange want(split_index(before.low(), k), split_index(before.high(), k), m2);
    return {"2.a", after == want, "same range " + to_string(want)};
  }
  // The scan can now stop at the class below the split, at either new
  // class, or (mirrored for the ascending rule) one step further.
  std::vector<AssignmentRange> allowed;
  for (int step = 0; step < 3; ++step) {
    allowed.push_back(rule == Rule::descending ? descending_range(k - 1 + step, m2)
                                               : ascending_range(k + step, m2));
  }
  const bool ok = std::find(allowed.begin(), allowed.end(), after) != allowed.end();
  return {"2.b", ok, ranges_text(allowed)};
}

// Conjoint rule after merging C_k and C_k+1.
inline ClauseCheck conjoint_after_merge(const AssignmentRange& before, const AssignmentRange& after, int k) {
  const int m2 = before.categories() - 1;
  const auto merged = [k](int i) { return i == k || i == k + 1; };
  const bool lo = merged(before.low());
  const bool hi = merged(before.high());
  if (!before.contains(k) && !before.contains(k + 1)) {
    AssignmentRange want(merged_index(before.low(), k), merged_index(before.high(), k), m2);
    return {"1.a", after == want, "same range " + to_string(want)};
  }
  if (lo && hi) {
    AssignmentRange want(k, k, m2);
    return {"1.b", after == want, "new class " + to_string(want)};
  }
  if (lo || hi) {
    AssignmentRange want = lo ? AssignmentRange(k, merged_index(before.high(), k), m2)
                              : AssignmentRange(merged_index(before.low(), k), k, m2);
    return {"1.c", after == want, "range " + to_string(want)};
  }
  AssignmentRange want(before.low(), before.high() - 1, m2);
  return {"1.d", after == want, "same range " + to_string(want)};
}

// Conjoint rule after splitting C_k: each limit moves independently.
inline ClauseCheck conjoint_after_split(const AssignmentRange& before, const AssignmentRange& after, int k) {
  const int m2 = before.categories() + 1;
  auto allowed_for = [&](int limit) {
    std::vector<int> v;
    if (limit == k) {
      for (int c = k - 1; c <= k + 2; ++c) {
        if (c >= 1 && c <= m2) v.push_back(c);
      }
    } else if (limit == k - 1 || limit == k + 1) {
      v = {split_index(limit, k), k, k + 1};
    } else {
      v = {split_index(limit, k)};
    }
    return v;
  };
  const auto lo_ok = allowed_for(before.low());
  const auto hi_ok = allowed_for(before.high());
  const bool ok = std::find(lo_ok.begin(), lo_ok.end(), after.low()) != lo_ok.end() &&
                  std::find(hi_ok.begin(), hi_ok.end(), after.high()) != hi_ok.end();
  const std::string expectation = "low in " + set_text(lo_ok) + ", high in " + set_text(hi_ok);
  std::string clause;
  if (before.low() == k || before.high() == k) {
    clause = "2.b";
  } else if (std::abs(before.low() - k) == 1 || std::abs(before.high() - k) == 1) {
    clause = "2.a";
  } else {
    clause = "2.c";
  }
  return {clause, ok, expectation};
}

}  // namespace detail

/// Matches one (before, after) pair to its stability clause and checks the
/// clause's conclusion.
inline StabilityVerdict classify_stability(const std::string& action, Rule rule, const Restructuring& op,
                                           const AssignmentRange& before, const AssignmentRange& after) {
  const int expected_m = before.categories() + (op.kind == RestructureKind::merge ? -1 : 1);
  if (after.categories() != expected_m) {
    throw std::logic_error("stability audit: after-range of '" + action +
                           "' does not live on the restructured category set");
  }
  detail::ClauseCheck c;
  if (op.kind == RestructureKind::merge) {
    c = rule == Rule::conjoint ? detail::conjoint_after_merge(before, after, op.at)
                               : detail::separate_after_merge(before, after, op.at);
  } else {
    c = rule == Rule::conjoint ? detail::conjoint_after_split(before, after, op.at)
                               : detail::separate_after_split(rule, before, after, op.at);
  }
  return {action, before, after, std::move(c.clause), c.conforms, std::move(c.expectation)};
}

/// Assigns every listed action before and after the restructuring and
/// classifies each pair.
template <RelationOracle R>
std::vector<StabilityVerdict> stability_audit(const Problem& before, const RestructureOutcome& after,
                                              std::span<const std::size_t> actions, Rule rule, const R& rel) {
  std::vector<StabilityVerdict> verdicts;
  verdicts.reserve(actions.size());
  for (std::size_t x : actions) {
    const auto b = apply_rule(rule, rel, before.reference, x).range;
    const auto a = apply_rule(rule, rel, after.problem.reference, x).range;
    verdicts.push_back(classify_stability(rel.id(x), rule, after.op, b, a));
  }
  return verdicts;
}

}  // namespace ordclass
