// Random valid-instance generation, the transposition operator and the
// executable property suites for the assignment rules.
//
// Every property here is a theorem about valid instances, so any single
// failure is a hard failure. Failures are shrunk to small counterexamples.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ordclass/assignment.hpp"
#include "ordclass/core.hpp"
#include "ordclass/models.hpp"
#include "ordclass/relations.hpp"
#include "ordclass/restructure.hpp"

namespace ordclass {

struct GenConfig {
  std::uint64_t seed = 0;
  int categories_min = 2;
  int categories_max = 6;
  int criteria_min = 2;
  int criteria_max = 6;
  int card_min = 1;
  int card_max = 4;
  ModelFamily family = ModelFamily::electre;
  int assign_count = 8;
  int dominance_pairs = 8;
  int max_retries = 400;

  void validate() const {
    auto require = [](bool ok, const char* what) {
      if (!ok) throw ValidationError(what);
    };
    require(categories_min >= 2 && categories_min <= categories_max, "category range must be nonempty and >= 2");
    require(criteria_min >= 1 && criteria_min <= criteria_max, "criteria range must be nonempty");
    require(card_min >= 1 && card_min <= card_max, "reference cardinality range must be nonempty");
    require(assign_count >= 0 && dominance_pairs >= 0 && max_retries >= 1, "counts must be non-negative");
  }
};

/// Retry budget spent without producing a valid reference set.
class GenerationExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A split of C_k into two new subsets of declared actions.
struct SplitPlan {
  int at;
  std::vector<std::size_t> lower;
  std::vector<std::size_t> upper;
};

/// A generated problem plus what the property suites need to probe it.
struct Instance {
  Problem problem;
  ModelSpec model;
  std::uint64_t seed = 0;
  /// (x, y) pairs built so that x should dominate y.
  std::vector<std::pair<std::size_t, std::size_t>> dominance_pairs;
  std::optional<SplitPlan> split;
};

// ---------------------------------------------------------------------------
// Random helpers. mt19937_64 output is fully specified by the standard; the
// range mapping is done here so runs are identical across standard libraries.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  int between(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool coin() { return (engine_() & 1u) != 0; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(between(0, static_cast<int>(v.size()) - 1))]; }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// Transposition

/// Reverses one normalized value: reals and intervals are negated, ordinal
/// levels mirrored on their scale.
inline PerformanceValue reverse_value(const PerformanceValue& v, const Criterion& c) {
  if (const auto* d = std::get_if<double>(&v)) return -*d;
  if (const auto* o = std::get_if<OrdinalLevel>(&v)) return OrdinalLevel{c.levels() + 1 - o->index};
  const auto& i = std::get<Interval>(v);
  return Interval(-i.upper(), -i.lower());
}

/// Reverses the class order and every criterion direction.
inline Problem transpose(const Problem& p) {
  std::vector<Criterion> criteria;
  for (const auto& c : p.criteria) {
    criteria.emplace_back(c.name(), c.direction() == Direction::increasing ? Direction::decreasing
                                                                            : Direction::increasing,
                          c.scale());
  }
  std::vector<Action> actions;
  actions.reserve(p.actions.size());
  for (const auto& a : p.actions) {
    Action t{a.id, {}};
    for (std::size_t i = 0; i < a.size(); ++i) t.performance.push_back(reverse_value(a.performance[i], p.criteria[i]));
    actions.push_back(std::move(t));
  }
  auto names = p.categories.names();
  std::reverse(names.begin(), names.end());
  auto subsets = p.reference.subsets();
  std::reverse(subsets.begin(), subsets.end());
  return Problem{std::move(criteria), CategorySet(std::move(names)), std::move(actions),
                 ReferenceSet(std::move(subsets), p.actions.size()), p.assign};
}

inline Instance transpose(const Instance& in) {
  Instance out = in;
  out.problem = transpose(in.problem);
  out.model = transposed(in.model);
  if (out.split) {
    const int m = in.problem.category_count();
    out.split->at = m + 1 - in.split->at;
    std::swap(out.split->lower, out.split->upper);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Instance generation

namespace detail {

inline std::vector<double> random_weights(Rng& rng, std::size_t n) {
  // Multiples of 1/64 summing to exactly 1.
  std::vector<int> units(n, 1);
  int left = 64 - static_cast<int>(n);
  for (int u = 0; u < left; ++u) ++units[static_cast<std::size_t>(rng.between(0, static_cast<int>(n) - 1))];
  std::vector<double> w;
  for (int u : units) w.push_back(u / 64.0);
  return w;
}

inline ModelSpec random_model(Rng& rng, ModelFamily family, std::size_t n) {
  const std::vector<double> thresholds = {0.6, 0.65, 0.75, 0.8, 0.9};
  switch (family) {
    case ModelFamily::electre: {
      ElectreParams p;
      p.weights = random_weights(rng, n);
      for (std::size_t i = 0; i < n; ++i) {
        const double q = 0.5 * rng.between(0, 2);
        const double pr = q + 0.5 * rng.between(0, 4);
        p.indifference.push_back(q);
        p.preference.push_back(pr);
        p.veto.push_back(rng.coin() ? std::optional<double>(pr + rng.between(1, 6)) : std::nullopt);
      }
      p.lambda = rng.pick(thresholds);
      return p;
    }
    case ModelFamily::interaction: {
      InteractionParams p;
      p.weights = random_weights(rng, n);
      for (std::size_t i = 0; i < n; ++i) {
        const double q = 0.5 * rng.between(0, 2);
        const double pr = q + 0.5 * rng.between(0, 4);
        p.indifference.push_back(q);
        p.preference.push_back(pr);
        p.veto.push_back(rng.coin() ? std::optional<double>(pr + rng.between(1, 6)) : std::nullopt);
      }
      p.beta = rng.pick(thresholds);
      if (n >= 2) {
        std::vector<double> budget = p.weights;
        const int pairs = rng.between(0, static_cast<int>(n));
        for (int t = 0; t < pairs; ++t) {
          std::size_t i = static_cast<std::size_t>(rng.between(0, static_cast<int>(n) - 1));
          std::size_t j = static_cast<std::size_t>(rng.between(0, static_cast<int>(n) - 2));
          if (j >= i) ++j;
          const int kind = rng.between(0, 2);
          if (kind == 0) {
            p.strengthening.push_back({i, j, rng.between(1, 8) / 64.0});
          } else {
            // Weakening and antagonism consume the net-balance budget.
            const double k = std::min(budget[i], kind == 1 ? budget[j] : budget[i]) * rng.between(1, 4) / 8.0;
            if (k <= 0.0) continue;
            if (kind == 1) {
              p.weakening.push_back({i, j, k});
              budget[i] -= k;
              budget[j] -= k;
            } else {
              p.antagonistic.push_back({i, j, k});
              budget[i] -= k;
            }
          }
        }
        double strong = 0.0, weak = 0.0;
        for (const auto& s : p.strengthening) strong += s.coefficient;
        for (const auto& w : p.weakening) weak += w.coefficient;
        if (weak > strong) p.strengthening.push_back({0, 1, weak - strong});
      }
      return p;
    }
    case ModelFamily::majority:
      return MajorityParams{random_weights(rng, n), rng.pick(thresholds)};
    case ModelFamily::interval_value: {
      IntervalValueParams p;
      for (std::size_t i = 0; i < n; ++i) {
        const double lo = rng.between(1, 8) / 16.0;
        p.weights.emplace_back(lo, lo + rng.between(0, 4) / 16.0);
      }
      p.alpha = rng.pick(thresholds);
      return p;
    }
    case ModelFamily::value_veto: {
      ValueVetoParams p;
      for (std::size_t i = 0; i < n; ++i) p.weights.push_back(rng.between(1, 8) / 8.0);
      if (rng.coin()) {
        for (std::size_t i = 0; i < n; ++i) {
          // Breakpoints 8 apart and dyadic values keep interpolation exact.
          std::vector<std::pair<double, double>> pts;
          double v = 0.0;
          for (int t = -8; t <= 64; t += 8) {
            pts.emplace_back(t, v);
            v += rng.between(0, 4) * 2.0;
          }
          p.marginals.emplace_back(std::move(pts));
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        p.veto.push_back(rng.coin() ? std::optional<double>(rng.between(4, 12)) : std::nullopt);
      }
      return p;
    }
    case ModelFamily::promethee: {
      PrometheeParams p;
      p.weights = random_weights(rng, n);
      for (std::size_t i = 0; i < n; ++i) {
        const double q = 0.5 * rng.between(0, 2);
        p.indifference.push_back(q);
        p.preference.push_back(q + 0.5 * rng.between(0, 4));
      }
      return p;
    }
  }
  throw ValidationError("unknown model family");
}

inline PerformanceValue make_value(ModelFamily family, Rng& rng, double centre) {
  if (family != ModelFamily::interval_value) return centre;
  return Interval(centre - 0.5 * rng.between(0, 2), centre + 0.5 * rng.between(0, 2));
}

inline PerformanceValue shifted(const PerformanceValue& v, double by) {
  if (const auto* i = std::get_if<Interval>(&v)) return Interval(i->lower() + by, i->upper() + by);
  return as_real(v) + by;
}

}  // namespace detail

/// Draws a valid instance: a strictly Pareto-increasing backbone of class
/// levels, reference subsets perturbed around it, rejection-sampled until the
/// reference-set axioms hold under the drawn model. Perturbation amplitude
/// shrinks as retries accumulate.
inline Instance generate_instance(const GenConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const int m = rng.between(config.categories_min, config.categories_max);
  const auto n = static_cast<std::size_t>(rng.between(config.criteria_min, config.criteria_max));
  const ModelFamily family = config.family;
  constexpr int gap = 8;

  std::vector<Criterion> criteria;
  for (std::size_t i = 0; i < n; ++i) criteria.emplace_back("g" + std::to_string(i + 1));
  std::vector<std::string> names;
  for (int k = 1; k <= m; ++k) names.push_back("C" + std::to_string(k));

  std::vector<std::vector<double>> backbone(static_cast<std::size_t>(m), std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) backbone[static_cast<std::size_t>(k)][i] = gap * (k + 1) + rng.between(0, 2);
  }

  const int base_amplitude = rng.between(0, 4);
  for (int attempt = 0; attempt < config.max_retries; ++attempt) {
    Rng local(mix_seed(config.seed, static_cast<std::uint64_t>(attempt)));
    const ModelSpec model = detail::random_model(local, family, n);
    const int amplitude = std::max(0, base_amplitude - attempt / 20);

    std::vector<Action> actions;
    std::vector<std::vector<std::size_t>> subsets(static_cast<std::size_t>(m));
    auto add = [&](const std::string& id, std::vector<PerformanceValue> perf) {
      actions.push_back({id, std::move(perf)});
      return actions.size() - 1;
    };
    for (int k = 0; k < m; ++k) {
      const int card = local.between(config.card_min, config.card_max);
      for (int j = 0; j < card; ++j) {
        std::vector<PerformanceValue> perf;
        for (std::size_t i = 0; i < n; ++i) {
          const double centre = backbone[static_cast<std::size_t>(k)][i] + local.between(-amplitude, amplitude);
          perf.push_back(detail::make_value(family, local, centre));
        }
        subsets[static_cast<std::size_t>(k)].push_back(
            add("r" + std::to_string(k + 1) + "_" + std::to_string(j + 1), std::move(perf)));
      }
    }

    // Actions to classify: uniform points, points near a class level, and
    // points mixing levels of different classes criterion by criterion.
    std::vector<std::size_t> assign;
    const double lo = gap - gap;
    const double hi = gap * (m + 2);
    for (int t = 0; t < config.assign_count; ++t) {
      std::vector<PerformanceValue> perf;
      const int style = t % 3;
      const int level = local.between(0, m - 1);
      for (std::size_t i = 0; i < n; ++i) {
        double centre = 0.0;
        if (style == 0) {
          centre = local.between(static_cast<int>(lo), static_cast<int>(hi));
        } else if (style == 1) {
          centre = backbone[static_cast<std::size_t>(level)][i] + local.between(-amplitude - 2, amplitude + 2);
        } else {
          centre = backbone[static_cast<std::size_t>(local.between(0, m - 1))][i];
        }
        perf.push_back(detail::make_value(family, local, centre));
      }
      assign.push_back(add("x" + std::to_string(t + 1), std::move(perf)));
    }

    // Split candidates around the backbone of one class.
    const int split_at = local.between(1, m);
    std::vector<std::pair<std::size_t, std::size_t>> split_candidates;
    for (int delta : {1, 2, 3}) {
      std::vector<PerformanceValue> below, above;
      for (std::size_t i = 0; i < n; ++i) {
        const double b = backbone[static_cast<std::size_t>(split_at - 1)][i];
        below.push_back(detail::make_value(family, local, b - delta));
        above.push_back(detail::make_value(family, local, b + delta));
      }
      const auto a = add("s" + std::to_string(delta) + "_lo", std::move(below));
      const auto b = add("s" + std::to_string(delta) + "_hi", std::move(above));
      split_candidates.emplace_back(a, b);
    }

    const std::size_t before_mutants = actions.size();
    ReferenceSet ref(subsets, before_mutants);
    const auto system = make_system(model);
    {
      RelationMatrix rel(system, actions);
      if (!check_condition2(rel, ref, 1).passed()) continue;
    }

    // Dominance probes: raise one coordinate of an existing action.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (int t = 0; t < config.dominance_pairs; ++t) {
      const std::size_t y = static_cast<std::size_t>(local.between(0, static_cast<int>(before_mutants) - 1));
      const std::size_t i = static_cast<std::size_t>(local.between(0, static_cast<int>(n) - 1));
      double step = local.between(1, gap);
      Action probe;
      for (int grow = 0; grow < 12; ++grow, step *= 2) {
        probe = {"d" + std::to_string(t + 1), actions[y].performance};
        probe.performance[i] = detail::shifted(probe.performance[i], step);
        if (system.dominates(probe, actions[y])) break;
      }
      pairs.emplace_back(add(probe.id, std::move(probe.performance)), y);
    }

    Problem problem{criteria, CategorySet(names), actions, ReferenceSet(subsets, actions.size()), assign};
    Instance instance{std::move(problem), model, config.seed, std::move(pairs), std::nullopt};

    RelationMatrix rel(system, instance.problem.actions);
    for (const auto& [a, b] : split_candidates) {
      auto outcome = split(instance.problem, split_at, {a}, {b}, rel);
      if (outcome.valid()) {
        instance.split = SplitPlan{split_at, {a}, {b}};
        break;
      }
    }
    return instance;
  }
  throw GenerationExhausted("no valid reference set after " + std::to_string(config.max_retries) +
                            " attempts (seed " + std::to_string(config.seed) + ")");
}

// ---------------------------------------------------------------------------
// Properties

enum class Property {
  closure,              // S-relation closure between actions and subsets
  separate_conformity,  // reference actions under the separate rules
  conjoint_conformity,  // reference actions land in their own class
  monotonicity,         // xDy gives a range not worse, all three rules
  dominance_probes,     // enough constructed dominance pairs really hold
  comparability,        // descending not below ascending under comparability
  remark_descending,    // descending class c rules out xSR_h for h > c+1
  duality,              // rules mirror each other under transposition
  transposed_relations, // S'(a,b) = S(b,a), D'(a,b) = D(b,a)
  homogeneity,          // equal relation profiles give equal ranges
  merge_validity,       // merging keeps the reference set valid
  merge_stability,      // stability clauses after every merge
  split_stability,      // stability clauses after the planned split
};

inline constexpr Property kAllProperties[] = {
    Property::closure,         Property::separate_conformity,  Property::conjoint_conformity,
    Property::monotonicity,    Property::dominance_probes,     Property::comparability,
    Property::remark_descending, Property::duality,            Property::transposed_relations,
    Property::homogeneity,     Property::merge_validity,       Property::merge_stability,
    Property::split_stability};

inline const char* to_string(Property p) noexcept {
  switch (p) {
    case Property::closure: return "closure";
    case Property::separate_conformity: return "separate_conformity";
    case Property::conjoint_conformity: return "conjoint_conformity";
    case Property::monotonicity: return "monotonicity";
    case Property::dominance_probes: return "dominance_probes";
    case Property::comparability: return "comparability";
    case Property::remark_descending: return "remark_descending";
    case Property::duality: return "duality";
    case Property::transposed_relations: return "transposed_relations";
    case Property::homogeneity: return "homogeneity";
    case Property::merge_validity: return "merge_validity";
    case Property::merge_stability: return "merge_stability";
    case Property::split_stability: return "split_stability";
  }
  return "?";
}

inline std::optional<Property> parse_property(const std::string& name) {
  for (auto p : kAllProperties) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

struct Failure {
  std::string action;
  std::string expected;
  std::string actual;
  friend bool operator==(const Failure&, const Failure&) = default;
};

/// Result of checking one property on one instance.
struct CheckResult {
  std::size_t checks = 0;
  std::vector<Failure> failures;
  // Restructuring counters (only the stability properties fill these).
  std::size_t merges = 0;
  std::size_t splits = 0;

  void expect(bool ok, std::string action, std::string expected, std::string actual) {
    ++checks;
    if (!ok) failures.push_back({std::move(action), std::move(expected), std::move(actual)});
  }
};

namespace detail {

inline std::string rows_text(const std::vector<RelationKind>& row) {
  std::string s;
  for (auto k : row) s += std::string(s.empty() ? "" : " ") + to_string(k);
  return s;
}

inline std::vector<std::size_t> all_actions(const Problem& p) {
  std::vector<std::size_t> v(p.actions.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

inline constexpr Rule kRules[] = {Rule::descending, Rule::ascending, Rule::conjoint};

}  // namespace detail

/// Checks one property on one instance against its relation matrix.
inline CheckResult check_property(Property property, const Instance& in, const RelationMatrix& rel) {
  CheckResult r;
  const Problem& p = in.problem;
  const ReferenceSet& ref = p.reference;
  const int m = p.category_count();
  const auto every = detail::all_actions(p);

  switch (property) {
    case Property::closure:
      for (std::size_t x : every) {
        for (int k = 1; k <= m; ++k) {
          const bool up = s_action_vs_set(rel, x, ref.subset(k));
          const bool down = s_set_vs_action(rel, ref.subset(k), x);
          for (int h = 1; h <= m; ++h) {
            if (up && h < k) {
              r.expect(s_action_vs_set(rel, x, ref.subset(h)), rel.id(x),
                       "xSR_" + std::to_string(h) + " from xSR_" + std::to_string(k), "not xSR_" + std::to_string(h));
            }
            if (down && h > k) {
              r.expect(s_set_vs_action(rel, ref.subset(h), x), rel.id(x),
                       "R_" + std::to_string(h) + "Sx from R_" + std::to_string(k) + "Sx",
                       "not R_" + std::to_string(h) + "Sx");
            }
          }
        }
      }
      break;

    case Property::separate_conformity:
      for (int k = 1; k <= m; ++k) {
        for (std::size_t w : ref.subset(k)) {
          const auto d = descend(rel, ref, w).range;
          const auto a = ascend(rel, ref, w).range;
          const auto dw = descending_range(k, m);
          const auto aw = ascending_range(k, m);
          r.expect(d == dw, rel.id(w), "descending " + to_string(dw), to_string(d));
          r.expect(a == aw, rel.id(w), "ascending " + to_string(aw), to_string(a));
        }
      }
      break;

    case Property::conjoint_conformity:
      for (int k = 1; k <= m; ++k) {
        for (std::size_t w : ref.subset(k)) {
          const auto c = conjoint(rel, ref, w).range;
          const AssignmentRange want(k, k, m);
          r.expect(c == want, rel.id(w), "conjoint " + to_string(want), to_string(c));
        }
      }
      break;

    case Property::monotonicity:
      for (std::size_t x : every) {
        for (std::size_t y : every) {
          if (x == y || !rel.dominates(x, y)) continue;
          for (Rule rule : detail::kRules) {
            const auto rx = apply_rule(rule, rel, ref, x).range;
            const auto ry = apply_rule(rule, rel, ref, y).range;
            r.expect(range_not_worse(rx, ry), rel.id(x),
                     std::string(to_string(rule)) + " range not worse than " + to_string(ry) + " of " + rel.id(y),
                     to_string(rx));
          }
        }
      }
      break;

    case Property::dominance_probes: {
      std::size_t holding = 0;
      for (const auto& [x, y] : in.dominance_pairs) holding += rel.dominates(x, y) ? 1 : 0;
      const std::size_t want = std::min<std::size_t>(5, in.dominance_pairs.size());
      r.expect(holding >= want, "(instance)", ">= " + std::to_string(want) + " dominance probes holding",
               std::to_string(holding));
      break;
    }

    case Property::comparability:
      for (std::size_t x : every) {
        if (!is_comparable(rel, ref, x).all) continue;
        const auto d = descend(rel, ref, x).range;
        const auto a = ascend(rel, ref, x).range;
        r.expect(range_not_worse(d, a), rel.id(x), "descending not below ascending " + to_string(a),
                 "descending " + to_string(d));
      }
      break;

    case Property::remark_descending:
      for (std::size_t x : every) {
        const auto d = descend(rel, ref, x);
        for (int c = d.range.low(); c <= d.range.high(); ++c) {
          for (int h = c + 2; h <= m; ++h) {
            r.expect(!s_action_vs_set(rel, x, ref.subset(h)), rel.id(x),
                     "not xSR_" + std::to_string(h) + " while C_" + std::to_string(c) + " is possible",
                     detail::rows_text(d.relation_row));
          }
        }
      }
      break;

    case Property::duality: {
      const Instance t = transpose(in);
      const RelationMatrix trel(make_system(t.model), t.problem.actions);
      for (std::size_t x : every) {
        const auto d = descend(rel, ref, x).range;
        const auto a = ascend(rel, ref, x).range;
        const auto c = conjoint(rel, ref, x).range;
        const auto td = descend(trel, t.problem.reference, x).range;
        const auto ta = ascend(trel, t.problem.reference, x).range;
        const auto tc = conjoint(trel, t.problem.reference, x).range;
        r.expect(a == td.mirrored(), rel.id(x), "ascending = mirrored transposed descending " + to_string(td.mirrored()),
                 to_string(a));
        r.expect(d == ta.mirrored(), rel.id(x), "descending = mirrored transposed ascending " + to_string(ta.mirrored()),
                 to_string(d));
        r.expect(c == tc.mirrored(), rel.id(x), "conjoint = mirrored transposed conjoint " + to_string(tc.mirrored()),
                 to_string(c));
      }
      break;
    }

    case Property::transposed_relations: {
      const Instance t = transpose(in);
      const RelationMatrix trel(make_system(t.model), t.problem.actions);
      for (std::size_t a : every) {
        for (std::size_t b : every) {
          r.expect(trel.outranks(a, b) == rel.outranks(b, a), rel.id(a), "S'(a,b) = S(b,a) with b=" + rel.id(b),
                   trel.outranks(a, b) ? "S'(a,b) only" : "S(b,a) only");
          r.expect(trel.dominates(a, b) == rel.dominates(b, a), rel.id(a), "D'(a,b) = D(b,a) with b=" + rel.id(b),
                   trel.dominates(a, b) ? "D'(a,b) only" : "D(b,a) only");
        }
      }
      break;
    }

    case Property::homogeneity: {
      std::map<std::vector<RelationKind>, std::size_t> first;
      for (std::size_t x : every) {
        const auto row = relation_row(rel, ref, x);
        auto [it, fresh] = first.emplace(row, x);
        if (fresh) continue;
        const std::size_t y = it->second;
        for (Rule rule : detail::kRules) {
          const auto rx = apply_rule(rule, rel, ref, x).range;
          const auto ry = apply_rule(rule, rel, ref, y).range;
          r.expect(rx == ry, rel.id(x), std::string(to_string(rule)) + " " + to_string(ry) + " as " + rel.id(y),
                   to_string(rx));
        }
      }
      break;
    }

    case Property::merge_validity:
    case Property::merge_stability:
      if (m < 3) break;
      for (int k = 1; k < m; ++k) {
        const auto outcome = merge(p, k, rel);
        ++r.merges;
        if (property == Property::merge_validity) {
          r.expect(outcome.valid(), "(merge at " + std::to_string(k) + ")", "reference set stays valid",
                   outcome.condition2.violations.empty() ? "invalid" : outcome.condition2.violations.front().axiom);
          continue;
        }
        for (Rule rule : detail::kRules) {
          for (const auto& v : stability_audit(p, outcome, every, rule, rel)) {
            r.expect(v.conforms, v.action,
                     std::string(to_string(rule)) + " merge@" + std::to_string(k) + " clause " + v.matched_case + ": " +
                         v.expectation,
                     to_string(v.before) + " -> " + to_string(v.after));
          }
        }
      }
      break;

    case Property::split_stability: {
      if (!in.split) break;
      const auto outcome = split(p, in.split->at, in.split->lower, in.split->upper, rel);
      if (!outcome.valid()) break;  // invalid candidates are never audited
      ++r.splits;
      for (Rule rule : detail::kRules) {
        for (const auto& v : stability_audit(p, outcome, every, rule, rel)) {
          r.expect(v.conforms, v.action,
                   std::string(to_string(rule)) + " split@" + std::to_string(in.split->at) + " clause " +
                       v.matched_case + ": " + v.expectation,
                   to_string(v.before) + " -> " + to_string(v.after));
        }
      }
      break;
    }
  }
  return r;
}

inline CheckResult check_property(Property property, const Instance& in) {
  const RelationMatrix rel(make_system(in.model), in.problem.actions);
  return check_property(property, in, rel);
}

// ---------------------------------------------------------------------------
// Shrinking

namespace detail {

inline bool reference_valid(const Instance& in) {
  const RelationMatrix rel(make_system(in.model), in.problem.actions);
  return check_condition2(rel, in.problem.reference, 1).passed();
}

inline std::optional<Instance> drop_criterion(const Instance& in, std::size_t i) {
  if (in.problem.criteria.size() <= 1) return std::nullopt;
  auto model = without_criterion(in.model, i);
  if (!model) return std::nullopt;
  Instance out = in;
  out.model = *model;
  out.problem.criteria.erase(out.problem.criteria.begin() + static_cast<std::ptrdiff_t>(i));
  for (auto& a : out.problem.actions) a.performance.erase(a.performance.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

inline std::optional<Instance> drop_category(const Instance& in, int k) {
  if (in.problem.category_count() <= 2) return std::nullopt;
  Instance out = in;
  auto names = in.problem.categories.names();
  auto subsets = in.problem.reference.subsets();
  names.erase(names.begin() + (k - 1));
  subsets.erase(subsets.begin() + (k - 1));
  out.problem.categories = CategorySet(std::move(names));
  out.problem.reference = ReferenceSet(std::move(subsets), in.problem.actions.size());
  if (out.split) {
    if (out.split->at == k) {
      out.split.reset();
    } else if (out.split->at > k) {
      --out.split->at;
    }
  }
  return out;
}

inline std::optional<Instance> drop_reference_member(const Instance& in, int k, std::size_t j) {
  auto subsets = in.problem.reference.subsets();
  auto& s = subsets[static_cast<std::size_t>(k - 1)];
  if (s.size() <= 1) return std::nullopt;
  s.erase(s.begin() + static_cast<std::ptrdiff_t>(j));
  Instance out = in;
  out.problem.reference = ReferenceSet(std::move(subsets), in.problem.actions.size());
  return out;
}

/// Removes a store action that is not a reference member, remapping indices.
inline std::optional<Instance> drop_action(const Instance& in, std::size_t victim) {
  if (in.problem.reference.category_of(victim) != 0) return std::nullopt;
  if (in.split) {
    for (auto v : in.split->lower) if (v == victim) return std::nullopt;
    for (auto v : in.split->upper) if (v == victim) return std::nullopt;
  }
  auto remap = [victim](std::size_t i) { return i > victim ? i - 1 : i; };
  Instance out = in;
  out.problem.actions.erase(out.problem.actions.begin() + static_cast<std::ptrdiff_t>(victim));
  auto subsets = in.problem.reference.subsets();
  for (auto& s : subsets) for (auto& a : s) a = remap(a);
  out.problem.reference = ReferenceSet(std::move(subsets), out.problem.actions.size());
  out.problem.assign.clear();
  for (auto a : in.problem.assign) if (a != victim) out.problem.assign.push_back(remap(a));
  out.dominance_pairs.clear();
  for (auto [x, y] : in.dominance_pairs) {
    if (x != victim && y != victim) out.dominance_pairs.emplace_back(remap(x), remap(y));
  }
  if (out.split) {
    for (auto& a : out.split->lower) a = remap(a);
    for (auto& a : out.split->upper) a = remap(a);
  }
  return out;
}

}  // namespace detail

/// Greedily shrinks a failing instance while `property` keeps failing:
/// criteria first, then categories, then reference cardinalities, then
/// unrelated store actions. Instances that started with a valid reference set
/// stay valid throughout.
inline Instance shrink(const Instance& failing, Property property, int budget = 400) {
  Instance current = failing;
  const bool keep_valid = detail::reference_valid(failing);
  auto still_fails = [&](const Instance& candidate) {
    if (property == Property::dominance_probes) return false;  // not an instance-shape property
    try {
      if (keep_valid && !detail::reference_valid(candidate)) return false;
      return !check_property(property, candidate).failures.empty();
    } catch (const ValidationError&) {
      return false;
    }
  };
  bool progress = true;
  while (progress && budget > 0) {
    progress = false;
    std::vector<std::function<std::optional<Instance>()>> moves;
    for (std::size_t i = 0; i < current.problem.criteria.size(); ++i) {
      moves.push_back([&current, i] { return detail::drop_criterion(current, i); });
    }
    if (property != Property::split_stability) {
      for (int k = current.problem.category_count(); k >= 1; --k) {
        moves.push_back([&current, k] { return detail::drop_category(current, k); });
      }
    }
    for (int k = 1; k <= current.problem.category_count(); ++k) {
      for (std::size_t j = 0; j < current.problem.reference.subset(k).size(); ++j) {
        moves.push_back([&current, k, j] { return detail::drop_reference_member(current, k, j); });
      }
    }
    for (std::size_t a = current.problem.actions.size(); a-- > 0;) {
      moves.push_back([&current, a] { return detail::drop_action(current, a); });
    }
    for (auto& move : moves) {
      if (--budget <= 0) break;
      std::optional<Instance> candidate;
      try {
        candidate = move();
      } catch (const ValidationError&) {
        continue;
      }
      if (candidate && still_fails(*candidate)) {
        current = std::move(*candidate);
        progress = true;
        break;
      }
    }
  }
  return current;
}

// ---------------------------------------------------------------------------
// Suite

struct Counterexample {
  std::string property;
  std::string family;
  std::uint64_t seed = 0;
  Failure failure;
  Instance instance;  // shrunk
};

struct PropertyTally {
  std::size_t checks = 0;
  std::size_t failures = 0;
};

struct PropertyReport {
  std::map<std::string, PropertyTally> tallies;
  std::vector<Counterexample> counterexamples;
  std::size_t instances = 0;
  std::size_t merges = 0;
  std::size_t splits = 0;

  std::size_t violations() const {
    std::size_t v = 0;
    for (const auto& [_, t] : tallies) v += t.failures;
    return v;
  }
  bool passed() const { return violations() == 0; }

  void absorb(const PropertyReport& other) {
    for (const auto& [name, t] : other.tallies) {
      tallies[name].checks += t.checks;
      tallies[name].failures += t.failures;
    }
    counterexamples.insert(counterexamples.end(), other.counterexamples.begin(), other.counterexamples.end());
    instances += other.instances;
    merges += other.merges;
    splits += other.splits;
    canonicalize();
  }

  void canonicalize() {
    std::stable_sort(counterexamples.begin(), counterexamples.end(), [](const auto& a, const auto& b) {
      return std::tie(a.property, a.family, a.seed, a.failure.action) <
             std::tie(b.property, b.family, b.seed, b.failure.action);
    });
  }
};

struct SuiteOptions {
  std::vector<Property> properties{std::begin(kAllProperties), std::end(kAllProperties)};
  std::size_t max_counterexamples = 8;
  bool shrink_counterexamples = true;
};

/// Checks the selected properties on one instance and folds the outcome into
/// `report`.
inline void check_instance(const Instance& in, const SuiteOptions& options, PropertyReport& report) {
  const RelationMatrix rel(make_system(in.model), in.problem.actions);
  ++report.instances;
  for (Property property : options.properties) {
    const auto result = check_property(property, in, rel);
    auto& tally = report.tallies[to_string(property)];
    tally.checks += result.checks;
    tally.failures += result.failures.size();
    report.merges += property == Property::merge_stability ? result.merges : 0;
    report.splits += result.splits;
    if (!result.failures.empty() && report.counterexamples.size() < options.max_counterexamples) {
      Instance small = options.shrink_counterexamples ? shrink(in, property) : in;
      auto shrunk = check_property(property, small).failures;
      report.counterexamples.push_back({to_string(property), to_string(family_of(in.model)), in.seed,
                                        shrunk.empty() ? result.failures.front() : shrunk.front(),
                                        std::move(small)});
    }
  }
  report.canonicalize();
}

/// Generates `instances` instances from `config` (instance i is seeded from
/// the config seed and i) and checks every selected property on each.
inline PropertyReport run_property_suite(const GenConfig& config, std::size_t instances,
                                         const SuiteOptions& options = {}) {
  PropertyReport report;
  for (std::size_t i = 0; i < instances; ++i) {
    GenConfig c = config;
    c.seed = mix_seed(config.seed, i);
    check_instance(generate_instance(c), options, report);
  }
  return report;
}

/// A copy of the instance whose reference set breaks upward separation: a
/// duplicate of a top-class reference action is placed in the bottom class.
inline Instance corrupt_instance(const Instance& in) {
  Instance out = in;
  const int m = in.problem.category_count();
  const std::size_t top = in.problem.reference.subset(m).front();
  Action dup = in.problem.actions[top];
  dup.id += "_dup";
  out.problem.actions.push_back(std::move(dup));
  auto subsets = in.problem.reference.subsets();
  subsets.front().push_back(out.problem.actions.size() - 1);
  out.problem.reference = ReferenceSet(std::move(subsets), out.problem.actions.size());
  out.split.reset();
  return out;
}

}  // namespace ordclass
