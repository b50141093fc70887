#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmem::verify {

struct CriterionResult {
    std::string id;       // "AC1", "AC6b", ...
    std::string title;
    bool pass = false;
    std::string detail;   // measured values against their thresholds
    double seconds = 0.0;
};

/// Runs every acceptance criterion in order. Exceptions inside a criterion
/// are caught and reported as a failure of that criterion.
std::vector<CriterionResult> run_acceptance();

/// One line per criterion: "AC1   PASS  <title>  [<detail>]  (0.01 s)".
void print_results(std::ostream& out, const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace qmem::verify
