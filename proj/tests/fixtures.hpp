// Shared problems for the test suites.

#pragma once

#include <string>

#include "ordclass/io.hpp"

namespace fixtures {

inline std::string corpus(const std::string& name) { return std::string(ORDCLASS_CORPUS_DIR) + "/" + name; }

inline ordclass::ProblemFile toy() { return ordclass::load_problem(corpus("toy.json")); }

/// The R&D projects file. Its reference set does not pass the separation
/// check (r5 outranks r1), so it is loaded without validation.
inline ordclass::ProblemFile projects() { return ordclass::load_problem(corpus("rnd_projects.json")); }

/// Toy problem extended with a two-point chain (6,6,6,6) < (8,8,8,8).
inline ordclass::ProblemFile toy_with_chain() {
  auto f = toy();
  f.problem.actions.push_back({"a6", {6.0, 6.0, 6.0, 6.0}});
  f.problem.actions.push_back({"a8", {8.0, 8.0, 8.0, 8.0}});
  f.problem.reference = ordclass::ReferenceSet(f.problem.reference.subsets(), f.problem.actions.size());
  return f;
}

}  // namespace fixtures
