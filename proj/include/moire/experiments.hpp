#pragma once

#include <json.hpp>
#include <string>

#include "moire/config.hpp"

namespace moire {

// Outcome of one CLI run. `pass` false means an invariant verdict failed
// (process exit 2); hard errors are exceptions (exit 1).
struct RunResult {
  bool pass = true;
  std::string verdict;
  nlohmann::json summary;
};

RunResult run_experiment(const RunConfig& cfg);

RunResult run_dos_convergence(const RunConfig& cfg);
RunResult run_butterfly(const RunConfig& cfg);
RunResult run_disorder_ensemble(const RunConfig& cfg);
RunResult run_covariance_audit(const RunConfig& cfg);
RunResult run_birkhoff_rates(const RunConfig& cfg);
RunResult run_trace_defect(const RunConfig& cfg);

}  // namespace moire
