// Problem files (JSON) and report serialization.
//
// File layout:
//   categories     ascending list of labels
//   criteria       [{name, direction?, scale?}]
//   model          {family, ...parameters}; parameters act on normalized
//                  ("larger is better") values
//   actions        [{id, performance}]; ordinal values as scale labels,
//                  intervals as [lo, hi], reals as numbers
//   reference_set  {category label: [action ids]}
//   assign         [action ids]

#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ordclass/core.hpp"
#include "ordclass/harness.hpp"
#include "ordclass/models.hpp"
#include "ordclass/relations.hpp"

namespace ordclass {

using Json = nlohmann::ordered_json;

struct ProblemFile {
  Problem problem;
  ModelSpec model;
};

/// Malformed or structurally inconsistent input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An action listed under two categories of the reference set. Reported as
/// an upward-separation failure: the action outranks itself across classes.
class ReferenceOverlap : public ValidationError {
 public:
  ReferenceOverlap(std::string id, std::string lower, std::string upper)
      : ValidationError("action '" + id + "' is listed under both '" + lower + "' and '" + upper + "'"),
        id_(std::move(id)),
        lower_(std::move(lower)),
        upper_(std::move(upper)) {}

  Violation violation() const {
    return {"2.c", {id_, id_}, "z in " + lower_ + " outranks w in " + upper_ + " (same action, S reflexive)"};
  }

 private:
  std::string id_;
  std::string lower_;
  std::string upper_;
};

namespace io_detail {

[[noreturn]] inline void fail(const std::string& what) { throw ParseError(what); }

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<double> v;
  for (const auto& x : j) {
    if (!x.is_number()) fail(std::string(what) + " must hold numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

inline std::vector<std::optional<double>> optional_numbers(const Json& parent, const char* key) {
  std::vector<std::optional<double>> v;
  if (!parent.contains(key)) return v;
  const auto& j = parent.at(key);
  if (!j.is_array()) fail(std::string(key) + " must be an array");
  for (const auto& x : j) {
    if (x.is_null()) {
      v.push_back(std::nullopt);
    } else if (x.is_number()) {
      v.push_back(x.get<double>());
    } else {
      fail(std::string(key) + " entries must be numbers or null");
    }
  }
  return v;
}

inline Json optional_numbers_json(const std::vector<std::optional<double>>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x ? Json(*x) : Json(nullptr));
  return out;
}

inline Interval interval(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail("interval values must be [lo, hi]");
  }
  return Interval(j[0].get<double>(), j[1].get<double>());
}

inline std::size_t criterion_index(const std::vector<Criterion>& criteria, const Json& j) {
  if (j.is_number_unsigned()) {
    const auto i = j.get<std::size_t>();
    if (i >= criteria.size()) fail("criterion index out of range");
    return i;
  }
  if (!j.is_string()) fail("criterion reference must be a name or an index");
  const auto name = j.get<std::string>();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (criteria[i].name() == name) return i;
  }
  fail("unknown criterion '" + name + "'");
}

inline std::vector<CriterionPair> pairs(const Json& parent, const char* key, const std::vector<Criterion>& criteria) {
  std::vector<CriterionPair> out;
  if (!parent.contains(key)) return out;
  for (const auto& p : parent.at(key)) {
    const auto& names = member(p, "criteria");
    if (!names.is_array() || names.size() != 2) fail(std::string(key) + " pairs need two criteria");
    out.push_back({criterion_index(criteria, names[0]), criterion_index(criteria, names[1]),
                   member(p, "coefficient").get<double>()});
  }
  return out;
}

inline Json pairs_json(const std::vector<CriterionPair>& v, const std::vector<Criterion>& criteria) {
  Json out = Json::array();
  for (const auto& p : v) {
    out.push_back({{"criteria", {criteria.at(p.first).name(), criteria.at(p.second).name()}},
                   {"coefficient", p.coefficient}});
  }
  return out;
}

}  // namespace io_detail

inline ModelSpec model_from_json(const Json& j, const std::vector<Criterion>& criteria) {
  using namespace io_detail;
  const auto tag = member(j, "family").get<std::string>();
  const auto family = parse_family(tag);
  if (!family) fail("unknown model family '" + tag + "'");
  ModelSpec model;
  switch (*family) {
    case ModelFamily::electre:
      model = ElectreParams{numbers(member(j, "weights"), "weights"),
                            numbers(member(j, "indifference"), "indifference"),
                            numbers(member(j, "preference"), "preference"), optional_numbers(j, "veto"),
                            member(j, "lambda").get<double>()};
      break;
    case ModelFamily::interaction:
      model = InteractionParams{numbers(member(j, "weights"), "weights"),
                                numbers(member(j, "indifference"), "indifference"),
                                numbers(member(j, "preference"), "preference"),
                                optional_numbers(j, "veto"),
                                pairs(j, "strengthening", criteria),
                                pairs(j, "weakening", criteria),
                                pairs(j, "antagonistic", criteria),
                                member(j, "beta").get<double>()};
      break;
    case ModelFamily::majority:
      model = MajorityParams{numbers(member(j, "weights"), "weights"), member(j, "lambda").get<double>()};
      break;
    case ModelFamily::interval_value: {
      IntervalValueParams p;
      for (const auto& w : member(j, "weights")) p.weights.push_back(interval(w));
      p.alpha = member(j, "alpha").get<double>();
      model = p;
      break;
    }
    case ModelFamily::value_veto: {
      ValueVetoParams p;
      p.weights = numbers(member(j, "weights"), "weights");
      if (j.contains("marginals")) {
        for (const auto& m : j.at("marginals")) {
          std::vector<std::pair<double, double>> pts;
          for (const auto& pt : m) {
            const auto xy = numbers(pt, "marginal breakpoint");
            if (xy.size() != 2) fail("marginal breakpoints must be [t, u]");
            pts.emplace_back(xy[0], xy[1]);
          }
          p.marginals.emplace_back(std::move(pts));
        }
      }
      p.veto = optional_numbers(j, "veto");
      model = p;
      break;
    }
    case ModelFamily::promethee:
      model = PrometheeParams{numbers(member(j, "weights"), "weights"),
                              numbers(member(j, "indifference"), "indifference"),
                              numbers(member(j, "preference"), "preference")};
      break;
  }
  validate(model);
  if (criteria_count(model) != criteria.size()) {
    fail("model has " + std::to_string(criteria_count(model)) + " criteria, problem has " +
         std::to_string(criteria.size()));
  }
  return model;
}

inline Json model_to_json(const ModelSpec& model, const std::vector<Criterion>& criteria) {
  using namespace io_detail;
  Json j;
  j["family"] = to_string(family_of(model));
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, IntervalValueParams>) {
          Json w = Json::array();
          for (const auto& i : p.weights) w.push_back({i.lower(), i.upper()});
          j["weights"] = w;
          j["alpha"] = p.alpha;
        } else {
          j["weights"] = p.weights;
        }
        if constexpr (std::is_same_v<P, ElectreParams> || std::is_same_v<P, InteractionParams> ||
                      std::is_same_v<P, PrometheeParams>) {
          j["indifference"] = p.indifference;
          j["preference"] = p.preference;
        }
        if constexpr (std::is_same_v<P, ElectreParams> || std::is_same_v<P, InteractionParams> ||
                      std::is_same_v<P, ValueVetoParams>) {
          if (!p.veto.empty()) j["veto"] = optional_numbers_json(p.veto);
        }
        if constexpr (std::is_same_v<P, ElectreParams> || std::is_same_v<P, MajorityParams>) j["lambda"] = p.lambda;
        if constexpr (std::is_same_v<P, InteractionParams>) {
          j["strengthening"] = pairs_json(p.strengthening, criteria);
          j["weakening"] = pairs_json(p.weakening, criteria);
          j["antagonistic"] = pairs_json(p.antagonistic, criteria);
          j["beta"] = p.beta;
        }
        if constexpr (std::is_same_v<P, ValueVetoParams>) {
          if (!p.marginals.empty()) {
            Json ms = Json::array();
            for (const auto& m : p.marginals) {
              Json pts = Json::array();
              for (const auto& [t, u] : m.points()) pts.push_back({t, u});
              ms.push_back(pts);
            }
            j["marginals"] = ms;
          }
        }
      },
      model);
  return j;
}

inline PerformanceValue value_from_json(const Json& j, const Criterion& c, const std::string& id) {
  using namespace io_detail;
  if (c.is_ordinal()) {
    if (!j.is_string()) fail("action '" + id + "': criterion '" + c.name() + "' expects a scale label");
    const int level = c.level_of(j.get<std::string>());
    if (level == 0) fail("action '" + id + "': '" + j.get<std::string>() + "' is not on the scale of '" + c.name() + "'");
    return orient(OrdinalLevel{level}, c);
  }
  if (j.is_number()) return orient(j.get<double>(), c);
  if (j.is_array()) return orient(interval(j), c);
  fail("action '" + id + "': unreadable value on '" + c.name() + "'");
}

inline Json value_to_json(const PerformanceValue& normalized, const Criterion& c) {
  const auto raw = orient(normalized, c);
  if (const auto* o = std::get_if<OrdinalLevel>(&raw)) return c.scale().at(static_cast<std::size_t>(o->index - 1));
  if (const auto* i = std::get_if<Interval>(&raw)) return Json::array({i->lower(), i->upper()});
  return std::get<double>(raw);
}

/// Builds and checks a problem from parsed JSON. Structural faults raise
/// ParseError; an action listed in two reference subsets raises
/// ReferenceOverlap.
inline ProblemFile problem_from_json(const Json& j) {
  using namespace io_detail;
  try {
    std::vector<std::string> names;
    for (const auto& c : member(j, "categories")) names.push_back(c.get<std::string>());
    CategorySet categories(names);

    std::vector<Criterion> criteria;
    for (const auto& c : member(j, "criteria")) {
      const auto dir = c.value("direction", std::string("increasing"));
      if (dir != "increasing" && dir != "decreasing") fail("direction must be 'increasing' or 'decreasing'");
      criteria.emplace_back(member(c, "name").get<std::string>(),
                            dir == "increasing" ? Direction::increasing : Direction::decreasing,
                            c.value("scale", std::vector<std::string>{}));
    }
    if (criteria.empty()) fail("at least one criterion is required");

    ModelSpec model = model_from_json(member(j, "model"), criteria);

    std::vector<Action> actions;
    std::map<std::string, std::size_t> index;
    for (const auto& a : member(j, "actions")) {
      Action action{member(a, "id").get<std::string>(), {}};
      const auto& perf = member(a, "performance");
      if (!perf.is_array() || perf.size() != criteria.size()) {
        fail("action '" + action.id + "' needs " + std::to_string(criteria.size()) + " performances");
      }
      for (std::size_t i = 0; i < criteria.size(); ++i) {
        action.performance.push_back(value_from_json(perf[i], criteria[i], action.id));
      }
      if (!index.emplace(action.id, actions.size()).second) fail("duplicate action id '" + action.id + "'");
      actions.push_back(std::move(action));
    }
    auto resolve = [&](const Json& id) {
      const auto s = id.get<std::string>();
      auto it = index.find(s);
      if (it == index.end()) fail("unknown action id '" + s + "'");
      return it->second;
    };

    const auto& refs = member(j, "reference_set");
    if (!refs.is_object()) fail("reference_set must map category labels to id lists");
    for (const auto& [label, _] : refs.items()) {
      if (categories.index_of(label) == 0) fail("reference_set names unknown category '" + label + "'");
    }
    std::vector<std::vector<std::size_t>> subsets;
    std::map<std::size_t, std::string> owner;
    for (const auto& label : names) {
      if (!refs.contains(label)) fail("category '" + label + "' has no reference actions");
      std::vector<std::size_t> s;
      for (const auto& id : refs.at(label)) {
        const auto a = resolve(id);
        auto [it, fresh] = owner.emplace(a, label);
        if (!fresh) throw ReferenceOverlap(actions[a].id, it->second, label);
        s.push_back(a);
      }
      subsets.push_back(std::move(s));
    }

    std::vector<std::size_t> assign;
    if (j.contains("assign")) {
      for (const auto& id : j.at("assign")) assign.push_back(resolve(id));
    }

    Problem problem{std::move(criteria), std::move(categories), std::move(actions),
                    ReferenceSet(std::move(subsets), index.size()), std::move(assign)};
    problem.validate();
    return {std::move(problem), std::move(model)};
  } catch (const ReferenceOverlap&) {
    throw;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

inline Json problem_to_json(const ProblemFile& file) {
  const Problem& p = file.problem;
  Json j;
  j["categories"] = p.categories.names();
  Json criteria = Json::array();
  for (const auto& c : p.criteria) {
    Json cj{{"name", c.name()}, {"direction", c.direction() == Direction::increasing ? "increasing" : "decreasing"}};
    if (c.is_ordinal()) cj["scale"] = c.scale();
    criteria.push_back(cj);
  }
  j["criteria"] = criteria;
  j["model"] = model_to_json(file.model, p.criteria);
  Json actions = Json::array();
  for (const auto& a : p.actions) {
    Json perf = Json::array();
    for (std::size_t i = 0; i < a.size(); ++i) perf.push_back(value_to_json(a.performance[i], p.criteria[i]));
    actions.push_back({{"id", a.id}, {"performance", perf}});
  }
  j["actions"] = actions;
  Json refs = Json::object();
  for (int k = 1; k <= p.category_count(); ++k) {
    Json ids = Json::array();
    for (auto a : p.reference.subset(k)) ids.push_back(p.actions[a].id);
    refs[p.categories.name(k)] = ids;
  }
  j["reference_set"] = refs;
  Json assign = Json::array();
  for (auto a : p.assign) assign.push_back(p.actions[a].id);
  j["assign"] = assign;
  return j;
}

inline ProblemFile parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("not valid JSON: ") + e.what());
  }
  return problem_from_json(j);
}

inline ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

inline void save_problem(const std::string& path, const ProblemFile& file) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << problem_to_json(file).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Reports

inline Json range_json(const AssignmentRange& r, const CategorySet& categories) {
  return {{"low", r.low()},
          {"high", r.high()},
          {"labels", {categories.name(r.low()), categories.name(r.high())}}};
}

inline Json report_json(const ValidationReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back({{"axiom", x.axiom}, {"witnesses", x.witnesses}, {"detail", x.detail}});
  return {{"passed", r.passed()}, {"total", r.total}, {"violations", v}};
}

inline Json report_json(const PropertyReport& r) {
  Json tallies = Json::object();
  for (const auto& [name, t] : r.tallies) tallies[name] = {{"checks", t.checks}, {"failures", t.failures}};
  Json ces = Json::array();
  for (const auto& c : r.counterexamples) {
    ces.push_back({{"property", c.property},
                   {"family", c.family},
                   {"seed", c.seed},
                   {"action", c.failure.action},
                   {"expected", c.failure.expected},
                   {"actual", c.failure.actual},
                   {"problem", problem_to_json({c.instance.problem, c.instance.model})}});
  }
  return {{"passed", r.passed()},
          {"instances", r.instances},
          {"merges", r.merges},
          {"splits", r.splits},
          {"violations", r.violations()},
          {"properties", tallies},
          {"counterexamples", ces}};
}

}  // namespace ordclass
