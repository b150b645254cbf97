#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wedge {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double runtime_ms = 0.0;
};

// Runs the ten acceptance criteria, streaming one PASS/FAIL line per
// criterion to log as it completes and writing supporting artifacts into
// outdir. jobs > 1 parallelizes the embarrassingly parallel criteria.
// Callers map the failure count to an exit code.
std::vector<CriterionResult> run_acceptance(const std::string& outdir, int jobs,
                                            std::ostream& log);

}  // namespace wedge
