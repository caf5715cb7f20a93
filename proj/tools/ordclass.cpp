// ordclass: validate, assign, restructure and fuzz ordinal classification
// problems from the command line.
//
// Exit codes: 0 ok, 1 validation or property failure, 2 usage or parse
// error, 3 instance generation exhausted.

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ordclass/assignment.hpp"
#include "ordclass/harness.hpp"
#include "ordclass/io.hpp"
#include "ordclass/relations.hpp"
#include "ordclass/restructure.hpp"

namespace {

using namespace ordclass;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kExhausted = 3;

// Column text with display width counted in code points, so labels such as
// "P⁻¹" or "A–B" align.
std::size_t display_width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80 ? 1 : 0;
  return n;
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], display_width(r[i]));
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - display_width(r[i]) + 2, ' ');
    }
    out << line << '\n';
  }
}

std::string range_text(const AssignmentRange& r, const CategorySet& c) {
  if (r.single()) return c.name(r.low());
  return c.name(r.low()) + "–" + c.name(r.high());
}

const char* relation_symbol(RelationKind k) {
  switch (k) {
    case RelationKind::I: return "I";
    case RelationKind::P: return "P";
    case RelationKind::Pinv: return "P⁻¹";
    case RelationKind::Inc: return "Inc";
  }
  return "?";
}

std::vector<Rule> rules_for(const std::string& name) {
  if (name == "all") return {Rule::descending, Rule::ascending, Rule::conjoint};
  if (name == "descending") return {Rule::descending};
  if (name == "ascending") return {Rule::ascending};
  return {Rule::conjoint};
}

std::vector<std::size_t> targets(const Problem& p) {
  if (!p.assign.empty()) return p.assign;
  std::vector<std::size_t> all(p.actions.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

void print_validation(std::ostream& out, const char* title, const ValidationReport& r) {
  out << title << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.total << " violation"
      << (r.total == 1 ? "" : "s") << ")\n";
  for (const auto& v : r.violations) {
    out << "  " << v.axiom << "  ";
    for (std::size_t i = 0; i < v.witnesses.size(); ++i) out << (i ? ", " : "") << v.witnesses[i];
    out << "  " << v.detail << '\n';
  }
}

struct Audit {
  ValidationReport condition1;
  ValidationReport condition2;
  bool passed() const { return condition1.passed() && condition2.passed(); }
};

Audit audit(const ProblemFile& file, const RelationMatrix& rel, std::size_t sample) {
  return {check_condition1(rel, sample), check_condition2(rel, file.problem.reference)};
}

int emit_audit(const Audit& a, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << Json{{"passed", a.passed()}, {"condition1", report_json(a.condition1)},
                {"condition2", report_json(a.condition2)}}
               .dump(2)
        << '\n';
  } else {
    print_validation(out, "relational system (sampled)", a.condition1);
    print_validation(out, "reference set", a.condition2);
  }
  return a.passed() ? kOk : kFailed;
}

int overlap_failure(const ReferenceOverlap& e, const std::string& format) {
  ValidationReport r;
  r.add(e.violation(), kDefaultFindingLimit);
  if (format == "json") {
    std::cout << Json{{"passed", false}, {"condition2", report_json(r)}}.dump(2) << '\n';
  } else {
    print_validation(std::cout, "reference set", r);
  }
  return kFailed;
}

// --- validate --------------------------------------------------------------

int cmd_validate(const std::string& path, std::size_t sample, const std::string& format) {
  try {
    const auto file = load_problem(path);
    const RelationMatrix rel(make_system(file.model), file.problem.actions);
    return emit_audit(audit(file, rel, sample), format, std::cout);
  } catch (const ReferenceOverlap& e) {
    return overlap_failure(e, format);
  }
}

// --- assign ----------------------------------------------------------------

int cmd_assign(const std::string& path, const std::string& rule, const std::string& format, bool force) {
  ProblemFile file = [&] {
    try {
      return load_problem(path);
    } catch (const ReferenceOverlap& e) {
      overlap_failure(e, format);
      throw;
    }
  }();
  const Problem& p = file.problem;
  const RelationMatrix rel(make_system(file.model), p.actions);
  const auto a = audit(file, rel, kDefaultConditionSample);
  if (!a.passed()) {
    if (!force) {
      emit_audit(a, format, std::cout);
      return kFailed;
    }
    std::cerr << "warning: assigning with an invalid problem (" << a.condition1.total + a.condition2.total
              << " violations); conformity and stability guarantees do not apply\n";
  }
  const auto rules = rules_for(rule);
  const auto actions = targets(p);
  if (format == "json") {
    Json rows = Json::array();
    for (std::size_t x : actions) {
      Json row;
      row["id"] = p.actions[x].id;
      Json rel_row = Json::array();
      for (auto k : relation_row(rel, p.reference, x)) rel_row.push_back(to_string(k));
      row["relations"] = rel_row;
      for (Rule r : rules) row[to_string(r)] = range_json(apply_rule(r, rel, p.reference, x).range, p.categories);
      rows.push_back(row);
    }
    std::cout << Json{{"categories", p.categories.names()}, {"rule", rule}, {"actions", rows}}.dump(2) << '\n';
    return kOk;
  }
  std::vector<std::vector<std::string>> relations{{"action"}};
  for (const auto& name : p.categories.names()) relations[0].push_back("R(" + name + ")");
  std::vector<std::vector<std::string>> ranges{{"action"}};
  for (Rule r : rules) ranges[0].push_back(to_string(r));
  for (std::size_t x : actions) {
    std::vector<std::string> row{p.actions[x].id};
    for (auto k : relation_row(rel, p.reference, x)) row.push_back(relation_symbol(k));
    relations.push_back(row);
    std::vector<std::string> out{p.actions[x].id};
    for (Rule r : rules) out.push_back(range_text(apply_rule(r, rel, p.reference, x).range, p.categories));
    ranges.push_back(out);
  }
  std::cout << "relations\n";
  print_table(std::cout, relations);
  std::cout << "\nassignments\n";
  print_table(std::cout, ranges);
  return kOk;
}

// --- restructure -----------------------------------------------------------

struct RestructureArgs {
  std::string path;
  std::string out;
  std::string rule = "conjoint";
  std::string format = "table";
  bool reassign = false;
  int at = 0;
  std::string name;
  std::vector<std::string> lower;
  std::vector<std::string> upper;
  std::string lower_name;
  std::string upper_name;
};

std::string default_output(const std::string& path, const char* suffix) {
  std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix + ".json")).string();
}

int cmd_restructure(const RestructureArgs& args, RestructureKind kind) {
  ProblemFile file = load_problem(args.path);
  const Problem& p = file.problem;
  const RelationMatrix rel(make_system(file.model), p.actions);
  const auto before = audit(file, rel, kDefaultConditionSample);
  if (!before.passed()) {
    std::cout << "input problem is not valid\n";
    emit_audit(before, args.format, std::cout);
    return kFailed;
  }

  std::optional<RestructureOutcome> outcome;
  if (kind == RestructureKind::merge) {
    outcome = merge(p, args.at, rel, args.name);
  } else {
    std::vector<std::size_t> lower, upper;
    for (const auto& id : args.lower) lower.push_back(p.index_of(id));
    for (const auto& id : args.upper) upper.push_back(p.index_of(id));
    outcome = split(p, args.at, lower, upper, rel, args.lower_name, args.upper_name);
  }

  const char* suffix = kind == RestructureKind::merge ? ".merged" : ".split";
  std::string target = args.out.empty() ? default_output(args.path, suffix) : args.out;
  if (!outcome->valid()) {
    target = default_output(target, ".rejected");
    save_problem(target, {outcome->problem, file.model});
    std::cout << "restructured reference set is not valid; written to " << target << " for inspection\n";
    print_validation(std::cout, "reference set", outcome->condition2);
    return kFailed;
  }
  save_problem(target, {outcome->problem, file.model});

  bool conforming = true;
  Json audit_rows = Json::array();
  std::vector<std::vector<std::string>> table{{"action", "rule", "before", "after", "clause", "verdict"}};
  if (args.reassign) {
    const auto actions = targets(p);
    for (Rule r : rules_for(args.rule)) {
      for (const auto& v : stability_audit(p, *outcome, actions, r, rel)) {
        conforming = conforming && v.conforms;
        table.push_back({v.action, to_string(r), range_text(v.before, p.categories),
                         range_text(v.after, outcome->problem.categories), v.matched_case,
                         v.conforms ? "conforms" : "VIOLATES (" + v.expectation + ")"});
        audit_rows.push_back({{"action", v.action},
                              {"rule", to_string(r)},
                              {"before", range_json(v.before, p.categories)},
                              {"after", range_json(v.after, outcome->problem.categories)},
                              {"clause", v.matched_case},
                              {"conforms", v.conforms},
                              {"expectation", v.expectation}});
      }
    }
  }
  if (args.format == "json") {
    Json j{{"written", target}, {"categories", outcome->problem.categories.names()}};
    if (args.reassign) j["audit"] = audit_rows;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "wrote " << target << " (" << outcome->problem.category_count() << " categories)\n";
    if (args.reassign) print_table(std::cout, table);
  }
  return conforming ? kOk : kFailed;
}

// --- fuzz ------------------------------------------------------------------

struct FuzzArgs {
  std::uint64_t seed = 42;
  std::size_t instances = 100;
  std::string model = "all";
  std::vector<std::string> properties;
  std::string format = "table";
  std::size_t counterexamples = 8;
  bool self_test = false;
  int categories_max = 6;
  int criteria_max = 6;
  int retries = 400;
};

int cmd_fuzz(const FuzzArgs& args) {
  SuiteOptions options;
  options.max_counterexamples = args.counterexamples;
  if (!args.properties.empty()) {
    options.properties.clear();
    for (const auto& name : args.properties) {
      const auto p = parse_property(name);
      if (!p) {
        std::cerr << "unknown property '" << name << "'\n";
        return kUsage;
      }
      options.properties.push_back(*p);
    }
  }
  std::vector<ModelFamily> families;
  if (args.model == "all") {
    families.assign(std::begin(kAllFamilies), std::end(kAllFamilies));
  } else if (auto f = parse_family(args.model)) {
    families.push_back(*f);
  } else {
    std::cerr << "unknown model family '" << args.model << "'\n";
    return kUsage;
  }

  GenConfig config;
  config.seed = args.seed;
  config.categories_max = args.categories_max;
  config.criteria_max = args.criteria_max;
  config.max_retries = args.retries;
  config.categories_min = std::min(config.categories_min, config.categories_max);
  config.criteria_min = std::min(config.criteria_min, config.criteria_max);

  bool passed = true;
  Json families_json = Json::object();
  std::vector<std::vector<std::string>> table{{"family", "property", "checks", "failures"}};
  std::vector<std::vector<std::string>> stats{{"family", "instances", "merges", "splits"}};
  std::vector<Counterexample> examples;
  for (ModelFamily f : families) {
    config.family = f;
    PropertyReport report;
    if (args.self_test) {
      // The suite must reject a reference set broken on purpose.
      const auto bad = corrupt_instance(generate_instance(config));
      check_instance(bad, options, report);
      const bool caught = report.tallies["conjoint_conformity"].failures + report.tallies["separate_conformity"].failures > 0;
      passed = passed && caught;
    } else {
      report = run_property_suite(config, args.instances, options);
      passed = passed && report.passed();
    }
    families_json[to_string(f)] = report_json(report);
    for (const auto& [name, t] : report.tallies) {
      table.push_back({to_string(f), name, std::to_string(t.checks), std::to_string(t.failures)});
    }
    stats.push_back({to_string(f), std::to_string(report.instances), std::to_string(report.merges),
                     std::to_string(report.splits)});
    examples.insert(examples.end(), report.counterexamples.begin(), report.counterexamples.end());
  }

  if (args.format == "json") {
    std::cout << Json{{"seed", args.seed},
                      {"instances", args.instances},
                      {"self_test", args.self_test},
                      {"passed", passed},
                      {"families", families_json}}
                     .dump(2)
              << '\n';
  } else {
    print_table(std::cout, stats);
    std::cout << '\n';
    print_table(std::cout, table);
    for (const auto& c : examples) {
      std::cout << "\ncounterexample  " << c.family << "/" << c.property << "  seed " << c.seed << "\n  action "
                << c.failure.action << "\n  expected " << c.failure.expected << "\n  actual   " << c.failure.actual
                << "\n  shrunk to " << c.instance.problem.category_count() << " categories, "
                << c.instance.problem.criteria.size() << " criteria, " << c.instance.problem.actions.size()
                << " actions\n";
    }
    std::cout << '\n'
              << (args.self_test ? (passed ? "self-test: corrupted instance rejected\n"
                                           : "self-test: corrupted instance NOT rejected\n")
                                 : (passed ? "all properties hold\n" : "property violations found\n"));
  }
  return passed ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordinal classification with reference-action subsets"};
  app.require_subcommand(1);

  std::string path;
  std::string format = "table";
  std::size_t sample = kDefaultConditionSample;
  auto* validate_cmd = app.add_subcommand("validate", "Audit the relational system and the reference set");
  validate_cmd->add_option("file", path, "Problem file")->required();
  validate_cmd->add_option("--sample", sample, "Actions used for the relational-system audit")
      ->capture_default_str();
  validate_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json"}))->capture_default_str();

  std::string rule = "all";
  bool force = false;
  auto* assign_cmd = app.add_subcommand("assign", "Assign the listed actions");
  assign_cmd->add_option("file", path, "Problem file")->required();
  assign_cmd->add_option("--rule", rule)
      ->check(CLI::IsMember({"descending", "ascending", "conjoint", "all"}))
      ->capture_default_str();
  assign_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json"}))->capture_default_str();
  assign_cmd->add_flag("--force", force, "Assign even when the problem fails validation");

  RestructureArgs rargs;
  auto* restructure_cmd = app.add_subcommand("restructure", "Merge or split categories");
  restructure_cmd->add_option("file", rargs.path, "Problem file")->required();
  restructure_cmd->add_option("-o,--out", rargs.out, "Output problem file");
  restructure_cmd->add_flag("--reassign", rargs.reassign, "Print before/after ranges and stability clauses");
  restructure_cmd->add_option("--rule", rargs.rule)
      ->check(CLI::IsMember({"descending", "ascending", "conjoint", "all"}))
      ->capture_default_str();
  restructure_cmd->add_option("--format", rargs.format)->check(CLI::IsMember({"table", "json"}));
  restructure_cmd->require_subcommand(1);
  auto* merge_cmd = restructure_cmd->add_subcommand("merge", "Merge C_k with C_k+1");
  merge_cmd->fallthrough();
  merge_cmd->add_option("--at", rargs.at, "k")->required();
  merge_cmd->add_option("--name", rargs.name, "Label of the merged class");
  auto* split_cmd = restructure_cmd->add_subcommand("split", "Split C_k in two");
  split_cmd->fallthrough();
  split_cmd->add_option("--at", rargs.at, "k")->required();
  split_cmd->add_option("--lower", rargs.lower, "Reference ids of the lower new class")->required()->delimiter(',');
  split_cmd->add_option("--upper", rargs.upper, "Reference ids of the upper new class")->required()->delimiter(',');
  split_cmd->add_option("--lower-name", rargs.lower_name);
  split_cmd->add_option("--upper-name", rargs.upper_name);

  FuzzArgs fargs;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Check the rule properties on random valid instances");
  fuzz_cmd->add_option("--seed", fargs.seed)->capture_default_str();
  fuzz_cmd->add_option("--instances", fargs.instances)->capture_default_str();
  fuzz_cmd->add_option("--model", fargs.model, "Model family or 'all'")->capture_default_str();
  fuzz_cmd->add_option("--properties", fargs.properties, "Comma-separated subset")->delimiter(',');
  fuzz_cmd->add_option("--format", fargs.format)->check(CLI::IsMember({"table", "json"}))->capture_default_str();
  fuzz_cmd->add_option("--counterexamples", fargs.counterexamples, "Counterexamples kept per family")
      ->capture_default_str();
  fuzz_cmd->add_option("--max-categories", fargs.categories_max)->check(CLI::Range(2, 12))->capture_default_str();
  fuzz_cmd->add_option("--max-criteria", fargs.criteria_max)->check(CLI::Range(1, 12))->capture_default_str();
  fuzz_cmd->add_option("--retries", fargs.retries, "Generation attempts per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fuzz_cmd->add_flag("--self-test", fargs.self_test, "Run the suite on a deliberately corrupted instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(path, sample, format);
    if (*assign_cmd) return cmd_assign(path, rule, format, force);
    if (*restructure_cmd) return cmd_restructure(rargs, *merge_cmd ? RestructureKind::merge : RestructureKind::split);
    if (*fuzz_cmd) return cmd_fuzz(fargs);
  } catch (const ReferenceOverlap& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GenerationExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExhausted;
  }
  return kUsage;
}
