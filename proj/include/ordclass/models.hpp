// Preference models that supply a relational system (D, S).
//
// Every model reads performances as "larger is better" (Problem normalizes
// decreasing criteria) and depends on actions only through per-criterion
// differences or a monotone value, which is what makes all of them
// symmetric under the transposition operation.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "ordclass/core.hpp"
#include "ordclass/relations.hpp"

namespace ordclass {

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

inline void check_weights(const std::vector<double>& w) {
  double sum = 0.0;
  for (double x : w) {
    require(x >= 0.0, "criterion weights must be non-negative");
    sum += x;
  }
  require(!w.empty(), "at least one criterion weight is required");
  require(std::abs(sum - 1.0) < 1e-9, "criterion weights must sum to 1");
}

inline void check_size(std::size_t got, std::size_t want, const char* what) {
  require(got == want, std::string(what) + " must have one entry per criterion");
}

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Pareto dominance

/// g_i(x) >= g_i(y) on every criterion. Real and ordinal values only; both
/// actions must carry the same value kind criterion by criterion.
inline bool pareto_dominates(const Action& x, const Action& y) {
  detail::require(x.size() == y.size(), "actions differ in criterion count");
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto kx = kind_of(x.performance[i]);
    detail::require(kx == kind_of(y.performance[i]), "mixed value kinds on one criterion");
    detail::require(kx != ValueKind::interval, "Pareto dominance needs crisp values");
    if (as_real(x.performance[i]) < as_real(y.performance[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// ELECTRE credibility

struct ElectreParams {
  std::vector<double> weights;
  std::vector<double> indifference;              // q_i
  std::vector<double> preference;                // p_i
  std::vector<std::optional<double>> veto;       // v_i, empty or one per criterion
  double lambda = 0.75;

  std::size_t criteria() const noexcept { return weights.size(); }

  void validate() const {
    detail::check_weights(weights);
    detail::check_size(indifference.size(), criteria(), "indifference thresholds");
    detail::check_size(preference.size(), criteria(), "preference thresholds");
    if (!veto.empty()) detail::check_size(veto.size(), criteria(), "veto thresholds");
    for (std::size_t i = 0; i < criteria(); ++i) {
      detail::require(indifference[i] >= 0.0, "indifference thresholds must be >= 0");
      detail::require(preference[i] >= indifference[i], "preference threshold below indifference");
      if (!veto.empty() && veto[i]) {
        detail::require(*veto[i] > preference[i], "veto threshold must exceed preference threshold");
      }
    }
    detail::require(lambda > 0.5 && lambda <= 1.0, "credibility threshold must lie in (0.5, 1]");
  }

  std::optional<double> veto_of(std::size_t i) const {
    return veto.empty() ? std::nullopt : veto[i];
  }
};

/// Partial concordance of "x at least as good as y" on one criterion, as a
/// function of advantage = g(x) - g(y): 1 above -q, 0 below -p, linear between.
inline double partial_concordance(double advantage, double q, double p) {
  if (advantage >= -q) return 1.0;
  if (advantage <= -p) return 0.0;
  return (p + advantage) / (p - q);
}

/// Partial discordance as a function of shortfall = g(y) - g(x): 0 up to p,
/// 1 from v on, linear between. No veto means no discordance.
inline double partial_discordance(double shortfall, double p, std::optional<double> v) {
  if (!v) return 0.0;
  if (shortfall <= p) return 0.0;
  if (shortfall >= *v) return 1.0;
  return (shortfall - p) / (*v - p);
}

/// Classical ELECTRE III credibility: global concordance attenuated by every
/// partial discordance exceeding it.
inline double electre3_sigma(const Action& x, const Action& y, const ElectreParams& params) {
  const std::size_t n = params.criteria();
  detail::require(x.size() == n && y.size() == n, "action size differs from parameter size");
  double concordance = 0.0;
  std::vector<double> discordance(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double gx = as_real(x.performance[i]);
    const double gy = as_real(y.performance[i]);
    concordance += params.weights[i] *
                   partial_concordance(gx - gy, params.indifference[i], params.preference[i]);
    discordance[i] = partial_discordance(gy - gx, params.preference[i], params.veto_of(i));
  }
  concordance = detail::clamp01(concordance);
  double sigma = concordance;
  for (double d : discordance) {
    if (d > concordance) sigma *= (1.0 - d) / (1.0 - concordance);
  }
  return sigma;
}

/// xSy iff sigma(x,y) >= lambda; D is Pareto dominance.
inline RelationalSystem crisp_outranking_system(ElectreParams params) {
  params.validate();
  const double lambda = params.lambda;
  auto shared = std::make_shared<const ElectreParams>(std::move(params));
  return {
      [shared, lambda](const Action& x, const Action& y) { return electre3_sigma(x, y, *shared) >= lambda; },
      pareto_dominates,
      "electre(lambda=" + std::to_string(lambda) + ")",
  };
}

/// ELECTRE TRI-C style selection value min(max sigma(x,r), max sigma(r,x))
/// over the members r of one reference subset.
inline double trinc_selection_rho(const Action& x, std::span<const Action* const> subset,
                                  const ElectreParams& params) {
  double forward = 0.0;
  double backward = 0.0;
  for (const Action* r : subset) {
    forward = std::max(forward, electre3_sigma(x, *r, params));
    backward = std::max(backward, electre3_sigma(*r, x, params));
  }
  return std::min(forward, backward);
}

// ---------------------------------------------------------------------------
// Majority rule

struct MajorityParams {
  std::vector<double> weights;
  double lambda = 0.75;

  std::size_t criteria() const noexcept { return weights.size(); }
  void validate() const {
    detail::check_weights(weights);
    detail::require(lambda > 0.5 && lambda <= 1.0, "majority threshold must lie in (0.5, 1]");
  }
};

/// Weight of the criteria on which x is at least as good as y.
inline double majority_concordance(const Action& x, const Action& y, const std::vector<double>& weights) {
  detail::require(x.size() == weights.size() && y.size() == weights.size(),
                  "action size differs from weight count");
  double c = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (as_real(x.performance[i]) >= as_real(y.performance[i])) c += weights[i];
  }
  return c;
}

inline RelationalSystem majority_system(MajorityParams params) {
  params.validate();
  const double lambda = params.lambda;
  auto weights = std::make_shared<const std::vector<double>>(std::move(params.weights));
  return {
      [weights, lambda](const Action& x, const Action& y) {
        return majority_concordance(x, y, *weights) >= lambda;
      },
      pareto_dominates,
      "majority(lambda=" + std::to_string(lambda) + ")",
  };
}

// ---------------------------------------------------------------------------
// ELECTRE with interacting criteria

struct CriterionPair {
  std::size_t first = 0;
  std::size_t second = 0;
  double coefficient = 0.0;

  friend bool operator==(const CriterionPair&, const CriterionPair&) = default;
};

struct InteractionParams {
  std::vector<double> weights;
  std::vector<double> indifference;
  std::vector<double> preference;
  std::vector<std::optional<double>> veto;
  std::vector<CriterionPair> strengthening;  // unordered pairs {i, j}
  std::vector<CriterionPair> weakening;      // unordered pairs {i, j}
  std::vector<CriterionPair> antagonistic;   // ordered (i, h): h opposes i
  double beta = 0.75;

  std::size_t criteria() const noexcept { return weights.size(); }

  std::optional<double> veto_of(std::size_t i) const {
    return veto.empty() ? std::nullopt : veto[i];
  }

  void validate() const {
    ElectreParams{weights, indifference, preference, veto, beta}.validate();
    auto check_pairs = [&](const std::vector<CriterionPair>& pairs) {
      for (const auto& p : pairs) {
        detail::require(p.first < criteria() && p.second < criteria() && p.first != p.second,
                        "interaction pair must name two distinct criteria");
        detail::require(p.coefficient > 0.0, "interaction coefficients must be positive");
      }
    };
    check_pairs(strengthening);
    check_pairs(weakening);
    check_pairs(antagonistic);
    // Net balance keeps the concordance non-decreasing in every criterion.
    for (std::size_t i = 0; i < criteria(); ++i) {
      double net = weights[i];
      for (const auto& p : weakening) {
        if (p.first == i || p.second == i) net -= p.coefficient;
      }
      for (const auto& p : antagonistic) {
        if (p.first == i) net -= p.coefficient;
      }
      detail::require(net >= -1e-12, "net-balance violated for criterion " + std::to_string(i));
    }
    double strong = 0.0;
    double weak = 0.0;
    for (const auto& p : strengthening) strong += p.coefficient;
    for (const auto& p : weakening) weak += p.coefficient;
    detail::require(strong >= weak, "weakening mass exceeds strengthening mass (c(x,x) < 1)");
  }
};

inline double interaction_concordance(const Action& x, const Action& y, const InteractionParams& params) {
  const std::size_t n = params.criteria();
  detail::require(x.size() == n && y.size() == n, "action size differs from parameter size");
  std::vector<double> c(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = partial_concordance(as_real(x.performance[i]) - as_real(y.performance[i]),
                               params.indifference[i], params.preference[i]);
    total += params.weights[i] * c[i];
  }
  for (const auto& p : params.strengthening) total += p.coefficient * std::min(c[p.first], c[p.second]);
  for (const auto& p : params.weakening) total -= p.coefficient * std::min(c[p.first], c[p.second]);
  for (const auto& p : params.antagonistic) {
    total -= p.coefficient * std::min(c[p.first], 1.0 - c[p.second]);
  }
  return detail::clamp01(total);
}

/// Largest partial discordance over the veto criteria.
inline double interaction_discordance(const Action& x, const Action& y, const InteractionParams& params) {
  double d = 0.0;
  for (std::size_t i = 0; i < params.criteria(); ++i) {
    d = std::max(d, partial_discordance(as_real(y.performance[i]) - as_real(x.performance[i]),
                                        params.preference[i], params.veto_of(i)));
  }
  return d;
}

inline double interaction_sigma(const Action& x, const Action& y, const InteractionParams& params) {
  return interaction_concordance(x, y, params) * (1.0 - interaction_discordance(x, y, params));
}

inline RelationalSystem interaction_system(InteractionParams params) {
  params.validate();
  const double beta = params.beta;
  auto shared = std::make_shared<const InteractionParams>(std::move(params));
  return {
      [shared, beta](const Action& x, const Action& y) { return interaction_sigma(x, y, *shared) >= beta; },
      pareto_dominates,
      "interaction(beta=" + std::to_string(beta) + ")",
  };
}

// ---------------------------------------------------------------------------
// Interval value function

/// Possibility degree that interval e is at least interval d, clamped to
/// [0,1]. Two degenerate intervals compare crisply.
inline double possibility(const Interval& e, const Interval& d) {
  const double span = e.width() + d.width();
  if (span == 0.0) return e.lower() >= d.lower() ? 1.0 : 0.0;
  return detail::clamp01((e.upper() - d.lower()) / span);
}

inline Interval operator+(const Interval& a, const Interval& b) {
  return Interval(a.lower() + b.lower(), a.upper() + b.upper());
}

inline Interval operator*(const Interval& a, const Interval& b) {
  const double p[] = {a.lower() * b.lower(), a.lower() * b.upper(), a.upper() * b.lower(),
                      a.upper() * b.upper()};
  return Interval(*std::min_element(std::begin(p), std::end(p)),
                  *std::max_element(std::begin(p), std::end(p)));
}

struct IntervalValueParams {
  std::vector<Interval> weights;
  double alpha = 0.75;

  std::size_t criteria() const noexcept { return weights.size(); }
  void validate() const {
    detail::require(!weights.empty(), "at least one interval weight is required");
    for (const auto& w : weights) detail::require(w.lower() >= 0.0, "interval weights must be non-negative");
    detail::require(alpha > 0.5 && alpha <= 1.0, "dominance threshold alpha must lie in (0.5, 1]");
  }
};

/// Interval weighted sum of the (interval) performances.
inline Interval interval_value(const Action& x, const std::vector<Interval>& weights) {
  detail::require(x.size() == weights.size(), "action size differs from weight count");
  Interval u = Interval::point(0.0);
  for (std::size_t i = 0; i < weights.size(); ++i) u = u + weights[i] * as_interval(x.performance[i]);
  return u;
}

/// xSy iff Poss(U(x) >= U(y)) >= 0.5; xDy iff the same possibility >= alpha.
inline RelationalSystem interval_value_system(IntervalValueParams params) {
  params.validate();
  const double alpha = params.alpha;
  auto weights = std::make_shared<const std::vector<Interval>>(std::move(params.weights));
  return {
      [weights](const Action& x, const Action& y) {
        return possibility(interval_value(x, *weights), interval_value(y, *weights)) >= 0.5;
      },
      [weights, alpha](const Action& x, const Action& y) {
        return possibility(interval_value(x, *weights), interval_value(y, *weights)) >= alpha;
      },
      "interval_value(alpha=" + std::to_string(alpha) + ")",
  };
}

// ---------------------------------------------------------------------------
// Value function with veto

/// Non-decreasing piecewise-linear marginal value, constant outside its
/// breakpoints. An empty marginal is the identity.
class Marginal {
 public:
  Marginal() = default;
  explicit Marginal(std::vector<std::pair<double, double>> points) : points_(std::move(points)) {
    if (points_.empty()) return;
    for (std::size_t i = 1; i < points_.size(); ++i) {
      detail::require(points_[i].first > points_[i - 1].first, "marginal breakpoints must increase");
      detail::require(points_[i].second >= points_[i - 1].second, "marginal value must be non-decreasing");
    }
  }

  double operator()(double t) const {
    if (points_.empty()) return t;
    if (t <= points_.front().first) return points_.front().second;
    if (t >= points_.back().first) return points_.back().second;
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](double v, const auto& p) { return v < p.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    return lo.second + (hi.second - lo.second) * (t - lo.first) / (hi.first - lo.first);
  }

  /// The marginal u'(t) = -u(-t) used after reversing the criterion.
  Marginal reflected() const {
    std::vector<std::pair<double, double>> r;
    for (auto it = points_.rbegin(); it != points_.rend(); ++it) r.emplace_back(-it->first, -it->second);
    return Marginal(std::move(r));
  }

  bool identity() const noexcept { return points_.empty(); }
  const std::vector<std::pair<double, double>>& points() const noexcept { return points_; }
  friend bool operator==(const Marginal&, const Marginal&) = default;

 private:
  std::vector<std::pair<double, double>> points_;
};

struct ValueVetoParams {
  std::vector<double> weights;
  std::vector<Marginal> marginals;            // empty or one per criterion
  std::vector<std::optional<double>> veto;    // empty or one per criterion

  std::size_t criteria() const noexcept { return weights.size(); }
  void validate() const {
    detail::require(!weights.empty(), "at least one weight is required");
    for (double w : weights) detail::require(w >= 0.0, "value function weights must be non-negative");
    if (!marginals.empty()) detail::check_size(marginals.size(), criteria(), "marginals");
    if (!veto.empty()) detail::check_size(veto.size(), criteria(), "veto thresholds");
    for (const auto& v : veto) {
      if (v) detail::require(*v > 0.0, "veto thresholds must be positive");
    }
  }
};

inline double additive_value(const Action& x, const ValueVetoParams& params) {
  detail::require(x.size() == params.criteria(), "action size differs from weight count");
  double u = 0.0;
  for (std::size_t i = 0; i < params.criteria(); ++i) {
    const double g = as_real(x.performance[i]);
    u += params.weights[i] * (params.marginals.empty() ? g : params.marginals[i](g));
  }
  return u;
}

/// xSy iff U(x) >= U(y) and no criterion vetoes (g_i(y) - g_i(x) >= v_i).
inline RelationalSystem value_veto_system(ValueVetoParams params) {
  params.validate();
  auto shared = std::make_shared<const ValueVetoParams>(std::move(params));
  return {
      [shared](const Action& x, const Action& y) {
        const auto& p = *shared;
        for (std::size_t i = 0; i < p.veto.size(); ++i) {
          if (p.veto[i] && as_real(y.performance[i]) - as_real(x.performance[i]) >= *p.veto[i]) {
            return false;
          }
        }
        return additive_value(x, p) >= additive_value(y, p);
      },
      pareto_dominates,
      "value_veto",
  };
}

// ---------------------------------------------------------------------------
// PROMETHEE

struct PrometheeParams {
  std::vector<double> weights;
  std::vector<double> indifference;  // q_i >= 0
  std::vector<double> preference;    // p_i >= q_i

  std::size_t criteria() const noexcept { return weights.size(); }
  void validate() const {
    detail::check_weights(weights);
    detail::check_size(indifference.size(), criteria(), "indifference thresholds");
    detail::check_size(preference.size(), criteria(), "preference thresholds");
    for (std::size_t i = 0; i < criteria(); ++i) {
      detail::require(indifference[i] >= 0.0, "indifference thresholds must be >= 0");
      detail::require(preference[i] >= indifference[i], "preference threshold below indifference");
    }
  }
};

/// Linear preference function with indifference area: 0 up to q, 1 from p.
inline double preference_degree(double advantage, double q, double p) {
  if (advantage <= q) return 0.0;
  if (advantage >= p) return 1.0;
  return (advantage - q) / (p - q);
}

/// Aggregated preference index of x over y.
inline double promethee_pi(const Action& x, const Action& y, const PrometheeParams& params) {
  detail::require(x.size() == params.criteria() && y.size() == params.criteria(),
                  "action size differs from parameter size");
  double pi = 0.0;
  for (std::size_t i = 0; i < params.criteria(); ++i) {
    pi += params.weights[i] * preference_degree(as_real(x.performance[i]) - as_real(y.performance[i]),
                                                params.indifference[i], params.preference[i]);
  }
  return pi;
}

/// xSy iff Pi(x,y) - Pi(y,x) >= 0.
inline RelationalSystem promethee_system(PrometheeParams params) {
  params.validate();
  auto shared = std::make_shared<const PrometheeParams>(std::move(params));
  return {
      [shared](const Action& x, const Action& y) {
        return promethee_pi(x, y, *shared) >= promethee_pi(y, x, *shared);
      },
      pareto_dominates,
      "promethee",
  };
}

// ---------------------------------------------------------------------------
// Model selection

using ModelSpec = std::variant<ElectreParams, InteractionParams, MajorityParams, IntervalValueParams,
                               ValueVetoParams, PrometheeParams>;

enum class ModelFamily { electre, interaction, majority, interval_value, value_veto, promethee };

inline constexpr ModelFamily kAllFamilies[] = {ModelFamily::electre,        ModelFamily::interaction,
                                               ModelFamily::majority,       ModelFamily::interval_value,
                                               ModelFamily::value_veto,     ModelFamily::promethee};

inline ModelFamily family_of(const ModelSpec& m) noexcept { return static_cast<ModelFamily>(m.index()); }

inline const char* to_string(ModelFamily f) noexcept {
  switch (f) {
    case ModelFamily::electre: return "electre";
    case ModelFamily::interaction: return "interaction";
    case ModelFamily::majority: return "majority";
    case ModelFamily::interval_value: return "interval_value";
    case ModelFamily::value_veto: return "value_veto";
    case ModelFamily::promethee: return "promethee";
  }
  return "?";
}

inline std::optional<ModelFamily> parse_family(const std::string& name) {
  for (auto f : kAllFamilies) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

inline RelationalSystem make_system(const ModelSpec& model) {
  return std::visit(
      [](const auto& p) -> RelationalSystem {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ElectreParams>) return crisp_outranking_system(p);
        else if constexpr (std::is_same_v<P, InteractionParams>) return interaction_system(p);
        else if constexpr (std::is_same_v<P, MajorityParams>) return majority_system(p);
        else if constexpr (std::is_same_v<P, IntervalValueParams>) return interval_value_system(p);
        else if constexpr (std::is_same_v<P, ValueVetoParams>) return value_veto_system(p);
        else return promethee_system(p);
      },
      model);
}

inline std::size_t criteria_count(const ModelSpec& model) {
  return std::visit([](const auto& p) { return p.criteria(); }, model);
}

inline void validate(const ModelSpec& model) {
  std::visit([](const auto& p) { p.validate(); }, model);
}

/// Parameters for the problem with every criterion direction reversed.
/// Thresholds act on differences and are left alone; only non-linear
/// marginals change, by reflection through the origin.
inline ModelSpec transposed(const ModelSpec& model) {
  ModelSpec out = model;
  if (auto* vv = std::get_if<ValueVetoParams>(&out)) {
    for (auto& m : vv->marginals) m = m.reflected();
  }
  return out;
}

namespace detail {

template <class T>
void erase_at(std::vector<T>& v, std::size_t i) {
  if (i < v.size()) v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
}

inline void renormalize(std::vector<double>& w) {
  double sum = 0.0;
  for (double x : w) sum += x;
  if (sum <= 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(w.size()));
    return;
  }
  for (double& x : w) x /= sum;
}

inline void drop_pairs(std::vector<CriterionPair>& pairs, std::size_t i) {
  std::erase_if(pairs, [i](const CriterionPair& p) { return p.first == i || p.second == i; });
  for (auto& p : pairs) {
    if (p.first > i) --p.first;
    if (p.second > i) --p.second;
  }
}

}  // namespace detail

/// Parameters restricted to all criteria but `i`; weights are renormalized
/// where the model requires them to sum to 1. Used by counterexample
/// shrinking. Returns nullopt when the restriction is not a valid model.
inline std::optional<ModelSpec> without_criterion(const ModelSpec& model, std::size_t i) {
  ModelSpec out = model;
  std::visit(
      [i](auto& p) {
        using P = std::decay_t<decltype(p)>;
        detail::erase_at(p.weights, i);
        if constexpr (std::is_same_v<P, ElectreParams> || std::is_same_v<P, InteractionParams> ||
                      std::is_same_v<P, PrometheeParams>) {
          detail::erase_at(p.indifference, i);
          detail::erase_at(p.preference, i);
        }
        if constexpr (std::is_same_v<P, ElectreParams> || std::is_same_v<P, InteractionParams> ||
                      std::is_same_v<P, ValueVetoParams>) {
          detail::erase_at(p.veto, i);
        }
        if constexpr (std::is_same_v<P, ValueVetoParams>) detail::erase_at(p.marginals, i);
        if constexpr (std::is_same_v<P, InteractionParams>) {
          detail::drop_pairs(p.strengthening, i);
          detail::drop_pairs(p.weakening, i);
          detail::drop_pairs(p.antagonistic, i);
        }
        if constexpr (!std::is_same_v<P, IntervalValueParams> && !std::is_same_v<P, ValueVetoParams>) {
          detail::renormalize(p.weights);
        }
      },
      out);
  try {
    validate(out);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
  return out;
}

}  // namespace ordclass
