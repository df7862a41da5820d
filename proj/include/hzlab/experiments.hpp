#pragma once

#include "hzlab/config.hpp"

namespace hzlab {

// Executes the configured experiment: writes <out_dir>/<kind>.csv plus one
// two-column plot-data file per plotted series, and prints a one-line
// summary (value, error estimate, elapsed) to stdout.  Throws ConfigError
// for bad configurations and the computation errors otherwise.
void run_experiment(const ExperimentConfig& cfg);

}  // namespace hzlab
