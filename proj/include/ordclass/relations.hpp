// Relational systems (D, S), their cached evaluation over an action store,
// and the validators for the relational-system and reference-set axioms.

#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordclass/core.hpp"

namespace ordclass {

/// A pair of crisp predicates over actions supplied by a preference model.
///
/// Contract (not statically enforceable, audited by check_condition1):
/// S reflexive, D transitive, D within S, xSy and yDz imply xSz,
/// xDy and ySz imply xSz.
struct RelationalSystem {
  std::function<bool(const Action&, const Action&)> outranks;   // S
  std::function<bool(const Action&, const Action&)> dominates;  // D
  std::string descriptor;
};

/// Anything that answers S and D queries over store indices.
template <class R>
concept RelationOracle = requires(const R& r, std::size_t a, std::size_t b) {
  { r.outranks(a, b) } -> std::convertible_to<bool>;
  { r.dominates(a, b) } -> std::convertible_to<bool>;
  { r.size() } -> std::convertible_to<std::size_t>;
  { r.id(a) } -> std::convertible_to<std::string>;
};

/// S and D evaluated once over every ordered pair of an action store.
///
/// Relations are static while rules run, so every later query is a lookup.
class RelationMatrix {
 public:
  RelationMatrix(const RelationalSystem& system, std::span<const Action> actions)
      : n_(actions.size()), s_(n_ * n_), d_(n_ * n_), descriptor_(system.descriptor) {
    ids_.reserve(n_);
    for (const auto& a : actions) ids_.push_back(a.id);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        s_[i * n_ + j] = system.outranks(actions[i], actions[j]);
        d_[i * n_ + j] = system.dominates(actions[i], actions[j]);
      }
    }
  }

  bool outranks(std::size_t a, std::size_t b) const { return s_[a * n_ + b] != 0; }
  bool dominates(std::size_t a, std::size_t b) const { return d_[a * n_ + b] != 0; }
  std::size_t size() const noexcept { return n_; }
  const std::string& id(std::size_t a) const { return ids_[a]; }
  const std::string& descriptor() const noexcept { return descriptor_; }

 private:
  std::size_t n_;
  std::vector<char> s_;
  std::vector<char> d_;
  std::vector<std::string> ids_;
  std::string descriptor_;
};

/// The relational system with both predicates read backwards:
/// S'(a,b) = S(b,a), D'(a,b) = D(b,a). This is what reversing every
/// criterion direction does to a difference-based model.
template <RelationOracle R>
class SwappedRelations {
 public:
  explicit SwappedRelations(const R& base) : base_(&base) {}
  bool outranks(std::size_t a, std::size_t b) const { return base_->outranks(b, a); }
  bool dominates(std::size_t a, std::size_t b) const { return base_->dominates(b, a); }
  std::size_t size() const { return base_->size(); }
  std::string id(std::size_t a) const { return base_->id(a); }

 private:
  const R* base_;
};

struct Violation {
  std::string axiom;  // reflexivity, transitivity, 1.i, 1.ii, 1.iii, 2.a, 2.b, 2.c
  std::vector<std::string> witnesses;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  /// Total number of violations found; only the first `limit` are recorded.
  std::size_t total = 0;

  bool passed() const noexcept { return total == 0; }

  void add(Violation v, std::size_t limit) {
    ++total;
    if (violations.size() < limit) violations.push_back(std::move(v));
  }
  void merge(const ValidationReport& other) {
    total += other.total;
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
};

inline constexpr std::size_t kDefaultConditionSample = 30;
inline constexpr std::size_t kDefaultFindingLimit = 64;

/// Exhaustive audit of the relational-system axioms over the first `cap`
/// members of `sample` (all ordered triples). A pass is evidence, not proof.
template <RelationOracle R>
ValidationReport check_condition1(const R& rel, std::span<const std::size_t> sample,
                                  std::size_t cap = kDefaultConditionSample,
                                  std::size_t limit = kDefaultFindingLimit) {
  ValidationReport report;
  const std::size_t n = std::min(cap, sample.size());
  auto ids = [&](auto... xs) { return std::vector<std::string>{rel.id(xs)...}; };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t x = sample[i];
    if (!rel.outranks(x, x)) report.add({"reflexivity", ids(x), "not xSx"}, limit);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t x = sample[i];
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t y = sample[j];
      const bool xdy = rel.dominates(x, y);
      const bool xsy = rel.outranks(x, y);
      if (xdy && !xsy) report.add({"1.i", ids(x, y), "xDy but not xSy"}, limit);
      if (!xdy && !xsy) continue;
      for (std::size_t l = 0; l < n; ++l) {
        const std::size_t z = sample[l];
        const bool ydz = rel.dominates(y, z);
        const bool ysz = rel.outranks(y, z);
        const bool xdz = rel.dominates(x, z);
        const bool xsz = rel.outranks(x, z);
        if (xdy && ydz && !xdz) report.add({"transitivity", ids(x, y, z), "xDy, yDz, not xDz"}, limit);
        if (xsy && ydz && !xsz) report.add({"1.ii", ids(x, y, z), "xSy, yDz, not xSz"}, limit);
        if (xdy && ysz && !xsz) report.add({"1.iii", ids(x, y, z), "xDy, ySz, not xSz"}, limit);
      }
    }
  }
  return report;
}

/// Audits every store action (up to `cap`).
template <RelationOracle R>
ValidationReport check_condition1(const R& rel, std::size_t cap = kDefaultConditionSample,
                                  std::size_t limit = kDefaultFindingLimit) {
  std::vector<std::size_t> all(rel.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return check_condition1(rel, std::span<const std::size_t>(all), cap, limit);
}

/// Audits the reference-set axioms: adjacent dominance links (2.a, 2.b) and
/// upward S-separation (2.c).
template <RelationOracle R>
ValidationReport check_condition2(const R& rel, const ReferenceSet& ref,
                                  std::size_t limit = kDefaultFindingLimit) {
  ValidationReport report;
  const int m = ref.size();
  for (int k = 1; k < m; ++k) {
    const auto& lower = ref.subset(k);
    const auto& upper = ref.subset(k + 1);
    for (std::size_t w : lower) {
      bool linked = false;
      for (std::size_t z : upper) linked = linked || rel.dominates(z, w);
      if (!linked) {
        report.add({"2.a", {rel.id(w)},
                    "no action of R_" + std::to_string(k + 1) + " dominates it (k=" +
                        std::to_string(k) + ")"},
                   limit);
      }
    }
    for (std::size_t w : upper) {
      bool linked = false;
      for (std::size_t z : lower) linked = linked || rel.dominates(w, z);
      if (!linked) {
        report.add({"2.b", {rel.id(w)},
                    "dominates no action of R_" + std::to_string(k) + " (k=" + std::to_string(k) + ")"},
                   limit);
      }
    }
  }
  for (int k = 1; k < m; ++k) {
    for (int h = k + 1; h <= m; ++h) {
      for (std::size_t w : ref.subset(h)) {
        for (std::size_t z : ref.subset(k)) {
          if (rel.outranks(z, w)) {
            report.add({"2.c", {rel.id(z), rel.id(w)},
                        "z in R_" + std::to_string(k) + " outranks w in R_" + std::to_string(h)},
                       limit);
          }
        }
      }
    }
  }
  return report;
}

/// xSR_k: x outranks some member of the subset.
template <RelationOracle R>
bool s_action_vs_set(const R& rel, std::size_t x, std::span<const std::size_t> subset) {
  for (std::size_t z : subset) {
    if (rel.outranks(x, z)) return true;
  }
  return false;
}

/// R_kSx: some member of the subset outranks x.
template <RelationOracle R>
bool s_set_vs_action(const R& rel, std::span<const std::size_t> subset, std::size_t x) {
  for (std::size_t w : subset) {
    if (rel.outranks(w, x)) return true;
  }
  return false;
}

template <RelationOracle R>
RelationKind classify_relation(const R& rel, std::size_t x, std::span<const std::size_t> subset) {
  return relation_kind(s_action_vs_set(rel, x, subset), s_set_vs_action(rel, subset, x));
}

}  // namespace ordclass
