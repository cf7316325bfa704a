#pragma once
#include <string>
#include <vector>

namespace alrates::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<int> all_ids();

// Runs one acceptance criterion (1..10) and reports pass/fail with the
// measured quantities in `detail`.
CriterionResult run_criterion(int id);

}  // namespace alrates::acceptance
