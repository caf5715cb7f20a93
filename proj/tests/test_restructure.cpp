#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"
#include "ordclass/restructure.hpp"

using namespace ordclass;

namespace {

AssignmentRange r(int lo, int hi, int m) { return AssignmentRange(lo, hi, m); }

StabilityVerdict verdict(Rule rule, RestructureKind kind, int at, AssignmentRange before, AssignmentRange after) {
  return classify_stability("x", rule, {kind, at}, before, after);
}

}  // namespace

TEST(Merge, ToyFirstTwoClasses) {
  const auto f = fixtures::toy();
  const RelationMatrix rel(make_system(f.model), f.problem.actions);
  const auto out = merge(f.problem, 1, rel);
  ASSERT_TRUE(out.valid());
  EXPECT_EQ(out.problem.category_count(), 2);
  const auto& p = f.problem;
  EXPECT_EQ(out.problem.reference.subset(1), (std::vector<std::size_t>{p.index_of("r1"), p.index_of("r2")}));
  EXPECT_EQ(out.problem.reference.subset(2), (std::vector<std::size_t>{p.index_of("r3")}));
  EXPECT_EQ(out.index_map, (std::vector<IndexImage>{{1, 1}, {1, 1}, {2, 2}}));

  const auto x = p.index_of("x");
  const auto before = conjoint(rel, p.reference, x).range;
  const auto after = conjoint(rel, out.problem.reference, x).range;
  EXPECT_EQ(after, r(1, 1, 2));
  const auto v = classify_stability("x", Rule::conjoint, out.op, before, after);
  EXPECT_EQ(v.matched_case, "1.b");
  EXPECT_TRUE(v.conforms);
}

TEST(Merge, TopPairUnitesTheirSubsets) {
  const auto f = fixtures::toy();
  const RelationMatrix rel(make_system(f.model), f.problem.actions);
  const auto out = merge(f.problem, 2, rel);
  EXPECT_EQ(out.problem.reference.subset(2).size(), 2u);
  EXPECT_EQ(out.problem.categories.name(2), "C2+C3");
}

TEST(Merge, IndexOutOfRange) {
  const auto f = fixtures::toy();
  const RelationMatrix rel(make_system(f.model), f.problem.actions);
  EXPECT_THROW(merge(f.problem, 3, rel), std::out_of_range);
  EXPECT_THROW(merge(f.problem, 0, rel), std::out_of_range);
}

TEST(Split, ToyMiddleClassIntoAChain) {
  const auto f = fixtures::toy_with_chain();
  const RelationMatrix rel(make_system(f.model), f.problem.actions);
  const auto& p = f.problem;
  const auto out = split(p, 2, {p.index_of("a6")}, {p.index_of("a8")}, rel);
  EXPECT_TRUE(out.valid());
  EXPECT_EQ(out.problem.category_count(), 4);
  EXPECT_EQ(out.index_map, (std::vector<IndexImage>{{1, 1}, {2, 3}, {4, 4}}));
  for (Rule rule : {Rule::descending, Rule::ascending, Rule::conjoint}) {
    for (const auto& v : stability_audit(p, out, std::vector<std::size_t>{p.index_of("x")}, rule, rel)) {
      EXPECT_TRUE(v.conforms) << to_string(rule) << " " << v.matched_case;
    }
  }
}

TEST(Split, SameSubsetTwiceIsRejected) {
  const auto f = fixtures::toy_with_chain();
  const RelationMatrix rel(make_system(f.model), f.problem.actions);
  const auto a = f.problem.index_of("a6");
  EXPECT_THROW(split(f.problem, 2, {a}, {a}, rel), ValidationError);
  EXPECT_THROW(split(f.problem, 2, {}, {a}, rel), ValidationError);
  EXPECT_THROW(split(f.problem, 4, {a}, {f.problem.index_of("a8")}, rel), std::out_of_range);
}

// Splitting the bottom project class by the shape of its members: the
// single-criterion specialists against the balanced low profiles.
TEST(Split, ProjectsBottomClassFailsTheLinks) {
  const auto f = fixtures::projects();
  const RelationMatrix rel(make_system(f.model), f.problem.actions);
  const auto& p = f.problem;
  std::vector<std::size_t> specialists, balanced;
  for (int i = 15; i <= 18; ++i) specialists.push_back(p.index_of("r" + std::to_string(i)));
  for (int i = 11; i <= 14; ++i) balanced.push_back(p.index_of("r" + std::to_string(i)));
  const auto out = split(p, 1, specialists, balanced, rel);
  EXPECT_FALSE(out.valid());
  std::map<std::string, int> by_axiom;
  for (const auto& v : out.condition2.violations) ++by_axiom[v.axiom];
  // Four unlinked specialists, four balanced profiles dominating nothing
  // below, and the separation failure the file already carries.
  EXPECT_EQ(by_axiom, (std::map<std::string, int>{{"2.a", 4}, {"2.b", 4}, {"2.c", 1}}));
  EXPECT_EQ(out.condition2.violations.front().witnesses, (std::vector<std::string>{"r15"}));
}

TEST(Stability, MergeClauses) {
  // Range away from the merged classes.
  auto v = verdict(Rule::conjoint, RestructureKind::merge, 3, r(1, 2, 5), r(1, 2, 4));
  EXPECT_EQ(v.matched_case, "1.a");
  EXPECT_TRUE(v.conforms);
  // Both limits merged.
  v = verdict(Rule::conjoint, RestructureKind::merge, 2, r(2, 3, 5), r(2, 2, 4));
  EXPECT_EQ(v.matched_case, "1.b");
  EXPECT_TRUE(v.conforms);
  // Upper limit merged with the class above it.
  v = verdict(Rule::conjoint, RestructureKind::merge, 3, r(1, 3, 5), r(1, 3, 4));
  EXPECT_EQ(v.matched_case, "1.c");
  EXPECT_TRUE(v.conforms);
  // Merged classes strictly inside.
  v = verdict(Rule::conjoint, RestructureKind::merge, 2, r(1, 4, 5), r(1, 3, 4));
  EXPECT_EQ(v.matched_case, "1.d");
  EXPECT_TRUE(v.conforms);
  v = verdict(Rule::conjoint, RestructureKind::merge, 2, r(1, 4, 5), r(1, 4, 4));
  EXPECT_FALSE(v.conforms);
  // Separate rules: both classes of the range merged, new class contained.
  v = verdict(Rule::descending, RestructureKind::merge, 2, r(2, 3, 5), r(2, 3, 4));
  EXPECT_EQ(v.matched_case, "1.c");
  EXPECT_TRUE(v.conforms);
  v = verdict(Rule::descending, RestructureKind::merge, 2, r(2, 3, 5), r(3, 3, 4));
  EXPECT_FALSE(v.conforms);
}

TEST(Stability, SplitClauses) {
  // Separate rules, split class outside the range.
  auto v = verdict(Rule::descending, RestructureKind::split, 4, r(1, 2, 5), r(1, 2, 6));
  EXPECT_EQ(v.matched_case, "2.a");
  EXPECT_TRUE(v.conforms);
  // Separate rules, split class inside: new pair, or one new class with its
  // old neighbour.
  v = verdict(Rule::descending, RestructureKind::split, 2, r(2, 3, 5), r(2, 3, 6));
  EXPECT_EQ(v.matched_case, "2.b");
  EXPECT_TRUE(v.conforms);
  v = verdict(Rule::descending, RestructureKind::split, 2, r(2, 3, 5), r(3, 4, 6));
  EXPECT_TRUE(v.conforms);
  v = verdict(Rule::descending, RestructureKind::split, 2, r(2, 3, 5), r(5, 6, 6));
  EXPECT_FALSE(v.conforms);
  // Conjoint, split class strictly inside a wide range and not adjacent to
  // either limit: limits keep their classes.
  v = verdict(Rule::conjoint, RestructureKind::split, 3, r(1, 5, 5), r(1, 6, 6));
  EXPECT_EQ(v.matched_case, "2.c");
  EXPECT_TRUE(v.conforms);
  v = verdict(Rule::conjoint, RestructureKind::split, 3, r(1, 5, 5), r(2, 6, 6));
  EXPECT_FALSE(v.conforms);
  // Conjoint, split class is a limit.
  v = verdict(Rule::conjoint, RestructureKind::split, 2, r(2, 2, 4), r(3, 3, 5));
  EXPECT_EQ(v.matched_case, "2.b");
  EXPECT_TRUE(v.conforms);
  // Conjoint, split class adjacent to a limit.
  v = verdict(Rule::conjoint, RestructureKind::split, 3, r(1, 2, 4), r(1, 3, 5));
  EXPECT_EQ(v.matched_case, "2.a");
  EXPECT_TRUE(v.conforms);
}

TEST(Stability, WrongCategoryCountIsALogicError) {
  EXPECT_THROW(verdict(Rule::conjoint, RestructureKind::merge, 1, r(1, 2, 3), r(1, 2, 3)), std::logic_error);
}
