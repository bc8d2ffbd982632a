#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moire/model.hpp"

namespace moire {

// Full description of one CLI run. Every field has a workable default; the
// CLI overrides from a config file first, then from flags. `ladder` empty
// means "use the experiment's own default ladder".
struct RunConfig {
  std::string experiment = "dos-convergence";
  std::string model = "reduced-chain";

  // almost-Mathieu
  double alpha = defaults::kAlpha;
  double lambda = defaults::kLambda;
  double theta_phase = 0.0;  // phase in [0, 2*pi)

  // Anderson
  std::string disorder = "uniform";  // uniform | gaussian
  double disorder_a = -1.0;          // endpoint / mean
  double disorder_b = 1.0;           // endpoint / stddev
  std::uint64_t seed = defaults::kSeed;
  int samples = 8;

  // bilayer chains
  double theta = defaults::kTheta;
  double b = defaults::kShiftB;
  double A = 1.0;   // hopping amplitude
  double B = 2.0;   // hopping decay
  double Lz = 1.0;  // interchain distance

  // experiment scales
  std::vector<double> ladder;   // window sizes; empty -> experiment default
  double reference_L = 0.0;     // 0 -> 2 * max(ladder)
  int nodes1 = 12;              // shift nodes in [0, 1)
  int nodes2 = 12;              // shift nodes in [0, 1-theta)
  int phases = 8;               // almost-Mathieu phase-grid size
  int alpha_points = 199;       // butterfly frequency grid
  double butterfly_L = 150.0;
  double audit_L = 30.0;        // covariance audit window
  int shift_range = 5;          // covariance audit shifts x in [-range, range]
  std::vector<long long> birkhoff_N = {100, 1000, 10000};
  int birkhoff_modes = 3;

  // numerics / output
  double tail_tol = defaults::kTailTol;
  double outer_pad = 0.0;  // 0 -> minimal pad for tail_tol
  std::string kernel = "gaussian";
  double bandwidth = 0.05;
  int grid_points = 800;
  int threads = 1;
  std::string out_dir = "out";
};

// Throws std::invalid_argument naming the offending field.
void validate_config(const RunConfig& cfg);

// The configured operator family (phase/seed/shift taken from cfg).
OperatorModel make_model(const RunConfig& cfg);

// Canonical key=value dump (sorted keys, 17-digit reals) and its FNV-1a hash;
// the hash is embedded in every output file of a run.
std::string canonical_dump(const RunConfig& cfg);
std::uint64_t config_hash(const RunConfig& cfg);

}  // namespace moire
