#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "ordclass/harness.hpp"
#include "ordclass/models.hpp"
#include "ordclass/relations.hpp"

using namespace ordclass;

namespace {

ElectreParams toy_params() {
  const auto f = fixtures::toy();
  return std::get<ElectreParams>(f.model);
}

Action act(std::string id, std::vector<double> v) {
  Action a{std::move(id), {}};
  for (double x : v) a.performance.push_back(x);
  return a;
}

// Random crisp (or interval) actions on a small integer grid.
std::vector<Action> random_actions(std::mt19937_64& rng, std::size_t count, std::size_t n, bool intervals) {
  std::vector<Action> out;
  for (std::size_t a = 0; a < count; ++a) {
    Action x{"a" + std::to_string(a), {}};
    for (std::size_t i = 0; i < n; ++i) {
      const double v = static_cast<double>(rng() % 13);
      if (intervals) {
        x.performance.push_back(Interval(v, v + static_cast<double>(rng() % 3)));
      } else {
        x.performance.push_back(v);
      }
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

TEST(Electre, ToyCredibilities) {
  const auto p = toy_params();
  const auto r1 = act("r1", {4, 4, 4, 4});
  const auto r2 = act("r2", {7, 7, 7, 7});
  const auto r3 = act("r3", {10, 10, 10, 10});
  const auto x = act("x", {1, 4, 4, 7});
  EXPECT_NEAR(electre3_sigma(x, r3, p), 0.0, 1e-9);
  EXPECT_NEAR(electre3_sigma(x, r2, p), 0.25, 1e-9);
  EXPECT_NEAR(electre3_sigma(x, r1, p), 0.75, 1e-9);
  EXPECT_NEAR(electre3_sigma(r3, x, p), 1.0, 1e-9);
  EXPECT_NEAR(electre3_sigma(r2, x, p), 1.0, 1e-9);
  EXPECT_NEAR(electre3_sigma(r1, x, p), 0.0, 1e-9);
}

TEST(Electre, PartialIndices) {
  EXPECT_DOUBLE_EQ(partial_concordance(0.0, 0.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(partial_concordance(-0.5, 0.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(partial_concordance(-1.0, 0.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(partial_discordance(1.0, 1.0, 3.0), 0.0);
  EXPECT_DOUBLE_EQ(partial_discordance(2.0, 1.0, 3.0), 0.5);
  EXPECT_DOUBLE_EQ(partial_discordance(3.0, 1.0, 3.0), 1.0);
  EXPECT_DOUBLE_EQ(partial_discordance(10.0, 1.0, std::nullopt), 0.0);
}

TEST(Electre, ParameterChecks) {
  auto p = toy_params();
  p.lambda = 0.5;
  EXPECT_THROW(p.validate(), ValidationError);
  p = toy_params();
  p.weights[0] = 0.5;
  EXPECT_THROW(p.validate(), ValidationError);
  p = toy_params();
  p.veto[3] = 0.5;
  EXPECT_THROW(p.validate(), ValidationError);
}

TEST(Electre, SelectionRhoOnToy) {
  const auto p = toy_params();
  const auto r1 = act("r1", {4, 4, 4, 4});
  const auto r2 = act("r2", {7, 7, 7, 7});
  const auto x = act("x", {1, 4, 4, 7});
  const Action* s1[] = {&r1};
  const Action* s2[] = {&r2};
  EXPECT_NEAR(trinc_selection_rho(x, s1, p), 0.0, 1e-9);
  EXPECT_NEAR(trinc_selection_rho(x, s2, p), 0.25, 1e-9);
  EXPECT_NEAR(trinc_selection_rho(r2, s2, p), 1.0, 1e-9);
}

TEST(Electre, CredibilityFallsAsTheOtherSideImproves) {
  std::mt19937_64 rng(5);
  ElectreParams p{{0.25, 0.25, 0.25, 0.25}, {0, 0.5, 1, 0}, {1, 1.5, 3, 2}, {3, std::nullopt, 5, 4}, 0.7};
  for (int t = 0; t < 2000; ++t) {
    const auto xs = random_actions(rng, 2, 4, false);
    auto y2 = xs[1];
    const auto i = static_cast<std::size_t>(rng() % 4);
    y2.performance[i] = as_real(y2.performance[i]) + 0.5 + static_cast<double>(rng() % 4);
    EXPECT_LE(electre3_sigma(xs[0], y2, p), electre3_sigma(xs[0], xs[1], p) + 1e-12);
  }
}

TEST(Interaction, ConcordanceRisesAndDiscordanceFalls) {
  std::mt19937_64 rng(9);
  InteractionParams p;
  p.weights = {0.3, 0.3, 0.2, 0.2};
  p.indifference = {0, 0.5, 0, 1};
  p.preference = {1, 2, 2, 2};
  p.veto = {4, std::nullopt, 5, std::nullopt};
  p.strengthening = {{0, 1, 0.1}};
  p.weakening = {{2, 3, 0.05}};
  p.antagonistic = {{1, 3, 0.1}};
  p.beta = 0.7;
  ASSERT_NO_THROW(p.validate());
  for (int t = 0; t < 2000; ++t) {
    const auto xs = random_actions(rng, 2, 4, false);
    auto x2 = xs[0];
    const auto i = static_cast<std::size_t>(rng() % 4);
    x2.performance[i] = as_real(x2.performance[i]) + 0.5 + static_cast<double>(rng() % 4);
    EXPECT_GE(interaction_concordance(x2, xs[1], p), interaction_concordance(xs[0], xs[1], p) - 1e-12);
    EXPECT_LE(interaction_discordance(x2, xs[1], p), interaction_discordance(xs[0], xs[1], p) + 1e-12);
  }
}

TEST(Interaction, RejectsUnbalancedCoefficients) {
  InteractionParams p;
  p.weights = {0.5, 0.5};
  p.indifference = {0, 0};
  p.preference = {1, 1};
  p.weakening = {{0, 1, 0.6}};
  p.strengthening = {{0, 1, 1.0}};
  p.beta = 0.75;
  EXPECT_THROW(p.validate(), ValidationError);  // net balance
  p.weakening = {{0, 1, 0.2}};
  p.strengthening = {};
  EXPECT_THROW(p.validate(), ValidationError);  // c(x,x) would fall below 1
}

TEST(Possibility, KnownValues) {
  EXPECT_DOUBLE_EQ(possibility(Interval(2, 4), Interval(1, 3)), 0.75);
  EXPECT_DOUBLE_EQ(possibility(Interval(5, 6), Interval(1, 3)), 1.0);
  EXPECT_DOUBLE_EQ(possibility(Interval(1, 2), Interval(3, 4)), 0.0);
  EXPECT_DOUBLE_EQ(possibility(Interval::point(2), Interval::point(2)), 1.0);
  EXPECT_DOUBLE_EQ(possibility(Interval::point(1), Interval::point(2)), 0.0);
}

TEST(Possibility, Complementarity) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    const double a = static_cast<double>(rng() % 10), b = static_cast<double>(rng() % 10);
    const Interval e(a, a + 1 + static_cast<double>(rng() % 4));
    const Interval d(b, b + 1 + static_cast<double>(rng() % 4));
    EXPECT_NEAR(possibility(e, d) + possibility(d, e), 1.0, 1e-12);
  }
}

TEST(Majority, ThresholdOnConcordance) {
  const MajorityParams p{{0.25, 0.25, 0.25, 0.25}, 0.75};
  const auto s = majority_system(p);
  EXPECT_TRUE(s.outranks(act("a", {1, 1, 1, 0}), act("b", {1, 1, 1, 1})));
  EXPECT_FALSE(s.outranks(act("a", {1, 1, 0, 0}), act("b", {1, 1, 1, 1})));
}

TEST(IntervalValue, DominanceNeedsAlpha) {
  const IntervalValueParams p{{Interval(0.5, 0.5), Interval(0.5, 0.5)}, 0.8};
  const auto s = interval_value_system(p);
  Action x{"x", {Interval(2, 4), Interval(2, 4)}};
  Action y{"y", {Interval(1, 3), Interval(1, 3)}};
  EXPECT_TRUE(s.outranks(x, y));      // possibility 0.75
  EXPECT_FALSE(s.dominates(x, y));    // below alpha
  EXPECT_TRUE(s.outranks(x, x));
}

TEST(Marginal, ReflectionNegatesValues) {
  Marginal m({{0, 0}, {4, 2}, {8, 10}});
  const auto r = m.reflected();
  for (double t : {-3.0, 0.0, 1.0, 4.0, 6.0, 9.0}) EXPECT_DOUBLE_EQ(r(-t), -m(t));
  EXPECT_THROW(Marginal({{0, 1}, {1, 0}}), ValidationError);
}

TEST(Promethee, ReflexiveAndDominanceCompatible) {
  const PrometheeParams p{{0.5, 0.5}, {0, 0}, {1, 2}};
  const auto s = promethee_system(p);
  EXPECT_TRUE(s.outranks(act("a", {1, 1}), act("a", {1, 1})));
  EXPECT_TRUE(s.outranks(act("a", {2, 1}), act("b", {1, 1})));
  EXPECT_FALSE(s.outranks(act("b", {1, 1}), act("a", {3, 1})));
}

TEST(Pareto, RejectsIntervalsAndMixedKinds) {
  EXPECT_THROW(pareto_dominates(Action{"a", {Interval(1, 2)}}, Action{"b", {Interval(1, 2)}}), ValidationError);
  EXPECT_THROW(pareto_dominates(Action{"a", {1.0}}, Action{"b", {OrdinalLevel{1}}}), ValidationError);
}

// Every shipped model yields a relational system on 30 random actions,
// every ordered triple checked.
class ModelFamilies : public ::testing::TestWithParam<ModelFamily> {};

TEST_P(ModelFamilies, RelationalSystemAxiomsOnRandomSamples) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GenConfig c;
    c.seed = seed;
    c.family = GetParam();
    c.criteria_min = c.criteria_max = 4;
    const auto model = generate_instance(c).model;
    std::mt19937_64 rng(seed);
    const auto actions = random_actions(rng, 30, 4, GetParam() == ModelFamily::interval_value);
    const RelationMatrix rel(make_system(model), actions);
    const auto report = check_condition1(rel);
    EXPECT_TRUE(report.passed()) << to_string(GetParam()) << " seed " << seed << ": "
                                 << (report.violations.empty() ? "" : report.violations.front().axiom);
  }
}

TEST_P(ModelFamilies, ReversingCriteriaSwapsBothRelations) {
  GenConfig c;
  c.seed = 17;
  c.family = GetParam();
  const auto in = generate_instance(c);
  const auto t = transpose(in);
  const auto s = make_system(in.model);
  const auto ts = make_system(t.model);
  const auto& a = in.problem.actions;
  const auto& ta = t.problem.actions;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      EXPECT_EQ(ts.outranks(ta[i], ta[j]), s.outranks(a[j], a[i]));
      EXPECT_EQ(ts.dominates(ta[i], ta[j]), s.dominates(a[j], a[i]));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(All, ModelFamilies, ::testing::ValuesIn(kAllFamilies),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(WithoutCriterion, KeepsTheModelValid) {
  GenConfig c;
  c.family = ModelFamily::interaction;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    c.seed = seed;
    const auto model = generate_instance(c).model;
    const auto smaller = without_criterion(model, 0);
    if (!smaller) continue;
    EXPECT_EQ(criteria_count(*smaller) + 1, criteria_count(model));
    EXPECT_NO_THROW(validate(*smaller));
  }
}
