// One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ordclass/harness.hpp"

using namespace ordclass;

namespace {

int failed = 0;

void report(int n, bool ok, const std::string& what) {
  std::printf("criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++failed;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9; }

std::string row_text(const std::vector<RelationKind>& row) {
  std::string s;
  for (auto k : row) s += std::string(s.empty() ? "" : " ") + to_string(k);
  return s;
}

bool has_clause(const ValidationReport& r, const char* clause) {
  for (const auto& v : r.violations) {
    if (v.axiom == clause) return true;
  }
  return false;
}

void credibilities() {
  const auto f = fixtures::toy();
  const auto& p = std::get<ElectreParams>(f.model);
  const auto& a = f.problem.actions;
  const auto& x = a[f.problem.index_of("x")];
  const auto& r1 = a[f.problem.index_of("r1")];
  const auto& r2 = a[f.problem.index_of("r2")];
  const auto& r3 = a[f.problem.index_of("r3")];
  const bool ok = near(electre3_sigma(x, r3, p), 0.0) && near(electre3_sigma(x, r2, p), 0.25) &&
                  near(electre3_sigma(x, r1, p), 0.75) && near(electre3_sigma(r3, x, p), 1.0) &&
                  near(electre3_sigma(r2, x, p), 1.0) && near(electre3_sigma(r1, x, p), 0.0);
  report(1, ok, "toy credibility values");
}

void toy_rules() {
  const auto f = fixtures::toy();
  const RelationMatrix rel(make_system(f.model), f.problem.actions);
  const auto x = f.problem.index_of("x");
  const auto& ref = f.problem.reference;
  const AssignmentRange want(1, 2, 3);
  const bool ok = row_text(relation_row(rel, ref, x)) == "P Pinv Pinv" && descend(rel, ref, x).range == want &&
                  ascend(rel, ref, x).range == want && conjoint(rel, ref, x).range == want;
  report(2, ok, "toy relation row and C1-C2 under every rule");
}

void projects_tables() {
  const auto f = fixtures::projects();
  const auto& ref = f.problem.reference;
  const std::vector<std::string> rows = {"P P I I", "P P I Pinv", "P I Pinv Pinv", "I Pinv Pinv Pinv",
                                         "P P P Inc"};
  auto r = [](int lo, int hi) { return AssignmentRange(lo, hi, 4); };
  const std::vector<std::vector<AssignmentRange>> ranges = {
      {r(4, 4), r(2, 3), r(3, 4)}, {r(3, 4), r(2, 3), r(3, 3)}, {r(2, 3), r(1, 2), r(2, 2)},
      {r(1, 2), r(1, 1), r(1, 1)}, {r(3, 4), r(4, 4), r(3, 4)},
  };
  auto table4 = [&](const ModelSpec& model) {
    const RelationMatrix rel(make_system(model), f.problem.actions);
    std::vector<std::string> out;
    for (auto x : f.problem.assign) out.push_back(row_text(relation_row(rel, ref, x)));
    return out;
  };
  const RelationMatrix rel(make_system(f.model), f.problem.actions);
  int cells4 = 0, cells5 = 0;
  const auto got = table4(f.model);
  for (std::size_t i = 0; i < f.problem.assign.size(); ++i) {
    const auto x = f.problem.assign[i];
    const auto row = relation_row(rel, ref, x);
    const auto want = rows[i];
    std::size_t c = 0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      std::string cell = to_string(row[k]);
      const auto end = want.find(' ', c);
      cells4 += want.substr(c, end - c) == cell;
      c = end == std::string::npos ? want.size() : end + 1;
    }
    cells5 += descend(rel, ref, x).range == ranges[i][0];
    cells5 += ascend(rel, ref, x).range == ranges[i][1];
    cells5 += conjoint(rel, ref, x).range == ranges[i][2];
  }
  bool study = true;
  for (int percent = 51; percent <= 75; ++percent) {
    study = study && table4(MajorityParams{{0.25, 0.25, 0.25, 0.25}, percent / 100.0}) == rows;
  }
  study = study && table4(MajorityParams{{0.25, 0.25, 0.25, 0.25}, 0.8}) != rows;
  report(3, cells4 == 20 && cells5 == 15 && study && got == rows,
         "projects relation table " + std::to_string(cells4) + "/20, ranges " + std::to_string(cells5) +
             "/15, threshold study " + (study ? "ok" : "broken"));
}

void selection_contrast() {
  const auto f = fixtures::toy();
  const auto& p = std::get<ElectreParams>(f.model);
  const auto& a = f.problem.actions;
  const auto x = f.problem.index_of("x");
  auto members = [&](int k) {
    std::vector<const Action*> v;
    for (auto i : f.problem.reference.subset(k)) v.push_back(&a[i]);
    return v;
  };
  const auto s1 = members(1);
  const auto s2 = members(2);
  const RelationMatrix rel(make_system(f.model), a);
  const bool ok = near(trinc_selection_rho(a[x], s1, p), 0.0) && near(trinc_selection_rho(a[x], s2, p), 0.25) &&
                  conjoint(rel, f.problem.reference, x).range == AssignmentRange(1, 2, 3);
  report(4, ok, "selection score picks C2 while the conjoint rule gives C1-C2");
}

void validators() {
  std::string notes;
  bool ok = true;
  const auto toy = fixtures::toy();
  const RelationMatrix toy_rel(make_system(toy.model), toy.problem.actions);
  if (!check_condition2(toy_rel, toy.problem.reference).passed()) {
    ok = false;
    notes += " toy reference set rejected;";
  }
  const auto projects = fixtures::projects();
  const RelationMatrix p_rel(make_system(projects.model), projects.problem.actions);
  const auto p_report = check_condition2(p_rel, projects.problem.reference);
  if (!p_report.passed()) {
    ok = false;
    notes += " projects reference set rejected (" + p_report.violations.front().axiom + " " +
             p_report.violations.front().witnesses[0] + ", " + p_report.violations.front().witnesses[1] + ");";
  }
  // Duplicate the top reference action into the bottom class.
  auto mutated = toy.problem;
  Action dup = mutated.actions[mutated.index_of("r3")];
  dup.id = "r3_dup";
  mutated.actions.push_back(dup);
  auto subsets = mutated.reference.subsets();
  subsets.front().push_back(mutated.actions.size() - 1);
  mutated.reference = ReferenceSet(std::move(subsets), mutated.actions.size());
  const RelationMatrix m_rel(make_system(toy.model), mutated.actions);
  if (!has_clause(check_condition2(m_rel, mutated.reference), "2.c")) {
    ok = false;
    notes += " mutation not caught;";
  }
  int families_ok = 0;
  for (auto family : kAllFamilies) {
    GenConfig c;
    c.seed = 30;
    c.family = family;
    c.criteria_min = c.criteria_max = 4;
    const auto model = generate_instance(c).model;
    std::mt19937_64 rng(30);
    std::vector<Action> actions;
    for (int i = 0; i < 30; ++i) {
      Action x{"a" + std::to_string(i), {}};
      for (int g = 0; g < 4; ++g) {
        const double v = static_cast<double>(rng() % 13);
        if (family == ModelFamily::interval_value) {
          x.performance.push_back(Interval(v, v + static_cast<double>(rng() % 3)));
        } else {
          x.performance.push_back(v);
        }
      }
      actions.push_back(std::move(x));
    }
    const RelationMatrix rel(make_system(model), actions);
    families_ok += check_condition1(rel).passed();
  }
  if (families_ok != 6) {
    ok = false;
    notes += " relational axioms fail for " + std::to_string(6 - families_ok) + " families;";
  }
  report(5, ok, "reference-set and relational-system validators" + notes);
}

struct Suites {
  PropertyReport theorems;
  PropertyReport stability;
  std::size_t thin_instances = 0;
};

Suites run_suites() {
  const std::vector<Property> theorem_props = {
      Property::closure,      Property::separate_conformity, Property::conjoint_conformity,
      Property::monotonicity, Property::dominance_probes,    Property::comparability,
      Property::duality,      Property::transposed_relations, Property::homogeneity,
      Property::remark_descending};
  const std::vector<Property> stability_props = {Property::merge_validity, Property::merge_stability,
                                                 Property::split_stability};
  Suites s;
  for (auto family : kAllFamilies) {
    GenConfig config;
    config.seed = 42;
    config.family = family;
    for (std::size_t i = 0; i < 1000; ++i) {
      GenConfig c = config;
      c.seed = mix_seed(config.seed, i);
      const auto in = generate_instance(c);
      const auto system = make_system(in.model);
      std::size_t real_pairs = 0;
      for (auto [x, y] : in.dominance_pairs) {
        real_pairs += system.dominates(in.problem.actions[x], in.problem.actions[y]);
      }
      s.thin_instances += real_pairs < 5;
      check_instance(in, SuiteOptions{theorem_props, 4, true}, s.theorems);
      check_instance(in, SuiteOptions{stability_props, 4, true}, s.stability);
    }
  }
  return s;
}

std::string first_counterexample(const PropertyReport& r) {
  if (r.counterexamples.empty()) return "";
  const auto& c = r.counterexamples.front();
  return "; first: " + c.property + " " + c.family + " seed " + std::to_string(c.seed) + " " + c.failure.action;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  credibilities();
  toy_rules();
  projects_tables();
  selection_contrast();
  validators();

  const auto suites = run_suites();
  report(6, suites.theorems.passed() && suites.theorems.instances == 6000 && suites.thin_instances == 0,
         std::to_string(suites.theorems.instances) + " instances, " + std::to_string(suites.theorems.violations()) +
             " violations, " + std::to_string(suites.thin_instances) + " instances under 5 dominance pairs" +
             first_counterexample(suites.theorems));
  report(7, suites.stability.passed() && suites.stability.merges >= 500 && suites.stability.splits >= 500,
         std::to_string(suites.stability.merges) + " merges, " + std::to_string(suites.stability.splits) +
             " splits, " + std::to_string(suites.stability.violations()) + " violations" +
             first_counterexample(suites.stability));

  std::size_t caught = 0;
  for (auto family : kAllFamilies) {
    GenConfig c;
    c.seed = 42;
    c.family = family;
    PropertyReport r;
    check_instance(corrupt_instance(generate_instance(c)),
                   SuiteOptions{{Property::separate_conformity, Property::conjoint_conformity}, 0, false}, r);
    caught += !r.passed();
  }
  report(8, caught == 6, "corrupted instance flagged in " + std::to_string(caught) + "/6 families");

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 8 criteria failed (%.1f s)\n", failed, secs);
  return failed == 0 ? 0 : 1;
}
