// Acceptance gate runner: prints one pass/fail line per criterion and exits
// with the number of failed criteria.

#include <cstring>
#include <iostream>
#include <string>

#include "wedge/acceptance.hpp"

int main(int argc, char** argv) {
    std::string outdir = "acceptance_out";
    int jobs = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--output") && i + 1 < argc) {
            outdir = argv[++i];
        } else if (!std::strcmp(argv[i], "--jobs") && i + 1 < argc) {
            jobs = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: " << argv[0] << " [--output DIR] [--jobs N]\n";
            return 64;
        }
    }
    try {
        const auto results = wedge::run_acceptance(outdir, jobs, std::cout);
        int failures = 0;
        for (const auto& r : results)
            if (!r.pass) ++failures;
        std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                    : "acceptance: " + std::to_string(failures) +
                                          " criterion(s) failed")
                  << std::endl;
        return failures;
    } catch (const std::exception& e) {
        std::cerr << "acceptance run aborted: " << e.what() << std::endl;
        return 99;
    }
}
