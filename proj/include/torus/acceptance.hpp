#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace torus::accept {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;  // deterministic summary; timing never enters here
};

// Criteria 1-11, in order.
std::vector<CriterionResult> run_criteria(std::ostream* progress = nullptr);

// Runs criteria 1-11 twice, byte-compares the deterministic summaries
// (criterion 12), prints one line per criterion, returns overall pass.
bool run_all(std::ostream& os);

}  // namespace torus::accept
