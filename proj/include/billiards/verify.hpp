#pragma once

// The acceptance suite: numbered end-to-end checks with pinned tolerances,
// runnable from the CLI (`verify`) and from the acceptance test binary.

#include <iosfwd>
#include <string>
#include <vector>

namespace billiards {

struct CriterionOutcome {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Run the acceptance criteria whose names contain `filter` (all when empty).
std::vector<CriterionOutcome> run_acceptance(const std::string& filter = {});

/// One line per criterion; returns true iff all passed.
bool print_acceptance(std::ostream& os, const std::vector<CriterionOutcome>& outcomes);

}  // namespace billiards
