// Domain types shared by every ordclass module.
//
// All types enforce their invariants at construction and are immutable
// afterwards, so they can be shared freely between readers.

#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

namespace ordclass {

/// Raised whenever a domain invariant is broken at construction time.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed interval of real numbers, lower <= upper.
class Interval {
 public:
  constexpr Interval() = default;
  Interval(double lower, double upper) : lower_(lower), upper_(upper) {
    if (!(lower <= upper)) {
      throw ValidationError("interval lower bound exceeds upper bound");
    }
  }
  static Interval point(double v) { return Interval(v, v); }

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  double width() const noexcept { return upper_ - lower_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lower_ = 0.0;
  double upper_ = 0.0;
};

/// Position on an ordinal scale; levels run 1..L in ascending label order.
struct OrdinalLevel {
  int index = 1;
  friend bool operator==(const OrdinalLevel&, const OrdinalLevel&) = default;
};

using PerformanceValue = std::variant<double, OrdinalLevel, Interval>;

enum class ValueKind { real, ordinal, interval };

inline ValueKind kind_of(const PerformanceValue& v) noexcept {
  return static_cast<ValueKind>(v.index());
}

/// Numeric reading of a crisp value. Ordinal levels read as their index.
inline double as_real(const PerformanceValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* o = std::get_if<OrdinalLevel>(&v)) return o->index;
  throw ValidationError("interval performance where a crisp value is required");
}

/// Interval reading of any value; crisp values become degenerate intervals.
inline Interval as_interval(const PerformanceValue& v) {
  if (const auto* i = std::get_if<Interval>(&v)) return *i;
  return Interval::point(as_real(v));
}

enum class Direction { increasing, decreasing };

class Criterion {
 public:
  explicit Criterion(std::string name, Direction direction = Direction::increasing,
                     std::vector<std::string> scale = {})
      : name_(std::move(name)), direction_(direction), scale_(std::move(scale)) {
    if (!scale_.empty()) {
      if (scale_.size() < 2) {
        throw ValidationError("ordinal scale of criterion '" + name_ + "' needs at least 2 labels");
      }
      std::set<std::string> seen(scale_.begin(), scale_.end());
      if (seen.size() != scale_.size()) {
        throw ValidationError("ordinal scale of criterion '" + name_ + "' has duplicate labels");
      }
    }
  }

  const std::string& name() const noexcept { return name_; }
  Direction direction() const noexcept { return direction_; }
  bool is_ordinal() const noexcept { return !scale_.empty(); }
  const std::vector<std::string>& scale() const noexcept { return scale_; }
  int levels() const noexcept { return static_cast<int>(scale_.size()); }

  /// Index 1..L of a label, or 0 when the label is not on the scale.
  int level_of(const std::string& label) const {
    auto it = std::find(scale_.begin(), scale_.end(), label);
    return it == scale_.end() ? 0 : static_cast<int>(it - scale_.begin()) + 1;
  }

  friend bool operator==(const Criterion&, const Criterion&) = default;

 private:
  std::string name_;
  Direction direction_;
  std::vector<std::string> scale_;
};

/// An identified vector of criterion performances.
///
/// Values are stored normalized: every criterion reads "larger is better",
/// whatever the declared direction (see Problem).
struct Action {
  std::string id;
  std::vector<PerformanceValue> performance;

  std::size_t size() const noexcept { return performance.size(); }
  friend bool operator==(const Action&, const Action&) = default;
};

/// Ordered classes C_1..C_M, ascending in the desirable feature.
class CategorySet {
 public:
  explicit CategorySet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() < 2) throw ValidationError("at least 2 categories are required");
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size()) throw ValidationError("category labels must be unique");
  }

  int size() const noexcept { return static_cast<int>(names_.size()); }
  /// Label of the 1-based category k.
  const std::string& name(int k) const { return names_.at(static_cast<std::size_t>(k - 1)); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  /// 1-based index of a label, 0 if absent.
  int index_of(const std::string& label) const {
    auto it = std::find(names_.begin(), names_.end(), label);
    return it == names_.end() ? 0 : static_cast<int>(it - names_.begin()) + 1;
  }

  friend bool operator==(const CategorySet&, const CategorySet&) = default;

 private:
  std::vector<std::string> names_;
};

/// Per-category subsets of characteristic actions. Members are indices into
/// the problem's action store; subset k (1-based) characterizes C_k.
class ReferenceSet {
 public:
  ReferenceSet(std::vector<std::vector<std::size_t>> subsets, std::size_t store_size)
      : subsets_(std::move(subsets)) {
    if (subsets_.size() < 2) throw ValidationError("reference set needs at least 2 subsets");
    std::unordered_set<std::size_t> seen;
    for (std::size_t k = 0; k < subsets_.size(); ++k) {
      if (subsets_[k].empty()) {
        throw ValidationError("reference subset R_" + std::to_string(k + 1) + " is empty");
      }
      for (std::size_t a : subsets_[k]) {
        if (a >= store_size) throw ValidationError("reference member does not resolve to an action");
        if (!seen.insert(a).second) {
          throw ValidationError("action placed in more than one reference subset (R_" +
                                std::to_string(k + 1) + ")");
        }
      }
    }
  }

  int size() const noexcept { return static_cast<int>(subsets_.size()); }
  /// Members of R_k, k 1-based.
  const std::vector<std::size_t>& subset(int k) const {
    return subsets_.at(static_cast<std::size_t>(k - 1));
  }
  const std::vector<std::vector<std::size_t>>& subsets() const noexcept { return subsets_; }

  /// Category holding action a, 0 when a is not a reference action.
  int category_of(std::size_t a) const {
    for (std::size_t k = 0; k < subsets_.size(); ++k) {
      if (std::find(subsets_[k].begin(), subsets_[k].end(), a) != subsets_[k].end()) {
        return static_cast<int>(k) + 1;
      }
    }
    return 0;
  }

  friend bool operator==(const ReferenceSet&, const ReferenceSet&) = default;

 private:
  std::vector<std::vector<std::size_t>> subsets_;
};

/// Contiguous class interval [low, high] over M categories, 1-based.
class AssignmentRange {
 public:
  AssignmentRange(int low, int high, int categories)
      : low_(low), high_(high), categories_(categories) {
    if (low < 1 || high > categories || low > high) {
      throw ValidationError("invalid assignment range [" + std::to_string(low) + "," +
                            std::to_string(high) + "] over " + std::to_string(categories) +
                            " categories");
    }
  }

  int low() const noexcept { return low_; }
  int high() const noexcept { return high_; }
  int categories() const noexcept { return categories_; }
  bool single() const noexcept { return low_ == high_; }
  bool contains(int k) const noexcept { return low_ <= k && k <= high_; }

  /// Image under the class-order reversal k -> M+1-k.
  AssignmentRange mirrored() const {
    return AssignmentRange(categories_ + 1 - high_, categories_ + 1 - low_, categories_);
  }

  friend bool operator==(const AssignmentRange&, const AssignmentRange&) = default;

 private:
  int low_;
  int high_;
  int categories_;
};

inline std::string to_string(const AssignmentRange& r) {
  return "[" + std::to_string(r.low()) + "," + std::to_string(r.high()) + "]";
}

/// Relation between an action and a reference subset.
enum class RelationKind { I, P, Pinv, Inc };

constexpr RelationKind relation_kind(bool action_outranks_set, bool set_outranks_action) noexcept {
  if (action_outranks_set) return set_outranks_action ? RelationKind::I : RelationKind::P;
  return set_outranks_action ? RelationKind::Pinv : RelationKind::Inc;
}

inline const char* to_string(RelationKind k) noexcept {
  switch (k) {
    case RelationKind::I: return "I";
    case RelationKind::P: return "P";
    case RelationKind::Pinv: return "Pinv";
    case RelationKind::Inc: return "Inc";
  }
  return "?";
}

/// A classification problem: criteria, ordered categories, the action store,
/// the reference set and the actions to classify.
///
/// Performances are held normalized so that every criterion reads "larger is
/// better" (see orient). The file reader does the conversion.
struct Problem {
  std::vector<Criterion> criteria;
  CategorySet categories;
  std::vector<Action> actions;
  ReferenceSet reference;
  std::vector<std::size_t> assign;

  int category_count() const noexcept { return categories.size(); }

  /// Store index of an action id.
  std::size_t index_of(const std::string& id) const {
    for (std::size_t i = 0; i < actions.size(); ++i) {
      if (actions[i].id == id) return i;
    }
    throw ValidationError("unknown action id '" + id + "'");
  }

  /// Checks the structural invariants tying the parts together.
  void validate() const {
    if (reference.size() != categories.size()) {
      throw ValidationError("reference set and category set differ in size");
    }
    std::set<std::string> ids;
    for (const auto& a : actions) {
      if (!ids.insert(a.id).second) throw ValidationError("duplicate action id '" + a.id + "'");
      if (a.size() != criteria.size()) {
        throw ValidationError("action '" + a.id + "' has " + std::to_string(a.size()) +
                              " performances, expected " + std::to_string(criteria.size()));
      }
      for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        const auto& v = a.performance[i];
        if (c.is_ordinal()) {
          const auto* lvl = std::get_if<OrdinalLevel>(&v);
          if (lvl == nullptr) {
            throw ValidationError("action '" + a.id + "': criterion '" + c.name() +
                                  "' expects an ordinal level");
          }
          if (lvl->index < 1 || lvl->index > c.levels()) {
            throw ValidationError("action '" + a.id + "': level out of scale on '" + c.name() + "'");
          }
        } else if (std::holds_alternative<OrdinalLevel>(v)) {
          throw ValidationError("action '" + a.id + "': criterion '" + c.name() +
                                "' has no ordinal scale");
        }
      }
    }
    for (std::size_t a : assign) {
      if (a >= actions.size()) throw ValidationError("assign list refers to an unknown action");
    }
  }
};

/// Maps a value between raw (as declared) and normalized orientation. The
/// map is an involution, so the same call converts in both directions.
inline PerformanceValue orient(const PerformanceValue& v, const Criterion& c) {
  if (c.direction() == Direction::increasing) return v;
  if (const auto* d = std::get_if<double>(&v)) return -*d;
  if (const auto* o = std::get_if<OrdinalLevel>(&v)) return OrdinalLevel{c.levels() + 1 - o->index};
  const auto& i = std::get<Interval>(v);
  return Interval(-i.upper(), -i.lower());
}

}  // namespace ordclass
