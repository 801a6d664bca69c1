#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weylab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
    bool hard = true;  // exact identity / unconditional bound (exit code 2 on failure)
};

struct AcceptanceOptions {
    bool fast_only = false;          // skip the long statistical criteria (11, 12, 14)
    unsigned long long seed = 20240811;
};

// Runs the acceptance criteria, one pass/fail line per criterion on `out`.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& out);

}  // namespace weylab
