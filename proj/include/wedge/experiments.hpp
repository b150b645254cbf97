#pragma once

#include <iosfwd>

#include "wedge/config.hpp"

namespace wedge {

// Runs the configured experiment and writes its artifacts (results.csv,
// ratefit.txt, events.log, wavediagram.txt, ... as applicable) into
// cfg.output_dir, which is created if missing. Progress goes to log.
// Errors propagate as config_error / solver_error for the CLI to map
// to exit codes.
void run_experiment(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace wedge
