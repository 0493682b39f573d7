#pragma once

#include <string>
#include <vector>

namespace logvar {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs the full acceptance suite (criteria 1-10) and returns one result per
// criterion. Every tolerance is pinned in code.
std::vector<CriterionResult> run_acceptance();

}  // namespace logvar
