#include "moire/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "moire/csv.hpp"

namespace moire {
namespace {

const std::set<std::string> kExperiments{"dos-convergence", "butterfly", "disorder-ensemble",
                                         "covariance-audit", "birkhoff-rates", "trace-defect"};
const std::set<std::string> kModels{"almost-mathieu", "anderson", "coupled-chain",
                                    "reduced-chain"};

void fail(const std::string& field, const std::string& what) {
  throw std::invalid_argument("config field '" + field + "': " + what);
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (!kExperiments.count(cfg.experiment)) fail("experiment", "unknown experiment");
  if (!kModels.count(cfg.model)) fail("model", "unknown model family");
  if (!std::isfinite(cfg.alpha)) fail("alpha", "must be finite");
  if (!std::isfinite(cfg.lambda)) fail("lambda", "must be finite");
  if (!std::isfinite(cfg.theta_phase)) fail("theta_phase", "must be finite");
  if (cfg.disorder != "uniform" && cfg.disorder != "gaussian")
    fail("disorder", "must be uniform or gaussian");
  if (cfg.disorder == "uniform" && !(cfg.disorder_a <= cfg.disorder_b))
    fail("disorder_a", "uniform law needs a <= b");
  if (cfg.disorder == "gaussian" && !(cfg.disorder_b >= 0.0))
    fail("disorder_b", "gaussian law needs stddev >= 0");
  if (cfg.samples < 1) fail("samples", "must be >= 1");
  if (!(cfg.theta > 0.0 && cfg.theta < 1.0)) fail("theta", "must lie in (0,1)");
  if (!std::isfinite(cfg.b)) fail("b", "must be finite");
  if (!(cfg.A >= 0.0)) fail("A", "must be >= 0");
  if (!(cfg.B > 0.0)) fail("B", "must be > 0");
  if (!(cfg.Lz > 0.0)) fail("Lz", "must be > 0");
  for (const double L : cfg.ladder)
    if (!(L > 0.0) || !std::isfinite(L)) fail("L", "ladder entries must be positive");
  if (cfg.reference_L != 0.0 && !(cfg.reference_L > 0.0)) fail("reference_L", "must be > 0");
  if (cfg.nodes1 < 1) fail("nodes1", "must be >= 1");
  if (cfg.nodes2 < 1) fail("nodes2", "must be >= 1");
  if (cfg.phases < 1) fail("phases", "must be >= 1");
  if (cfg.alpha_points < 1) fail("alpha_points", "must be >= 1");
  if (!(cfg.butterfly_L > 0.0)) fail("butterfly_L", "must be > 0");
  if (!(cfg.audit_L > 0.0)) fail("audit_L", "must be > 0");
  if (cfg.shift_range < 0) fail("shift_range", "must be >= 0");
  if (cfg.birkhoff_N.empty()) fail("birkhoff_N", "must not be empty");
  for (const long long n : cfg.birkhoff_N)
    if (n < 1) fail("birkhoff_N", "entries must be >= 1");
  if (cfg.birkhoff_modes < 1) fail("birkhoff_modes", "must be >= 1");
  if (!(cfg.tail_tol > 0.0)) fail("tail_tol", "must be > 0");
  if (cfg.outer_pad != 0.0 && !(cfg.outer_pad >= 1.0)) fail("outer_pad", "must be >= 1 (or 0 for auto)");
  if (cfg.kernel != "gaussian" && cfg.kernel != "lorentzian")
    fail("kernel", "must be gaussian or lorentzian");
  if (!(cfg.bandwidth > 0.0)) fail("bandwidth", "must be > 0");
  if (cfg.grid_points < 2) fail("grid_points", "must be >= 2");
  if (cfg.threads < 1) fail("threads", "must be >= 1");
  if (cfg.out_dir.empty()) fail("out_dir", "must not be empty");
}

OperatorModel make_model(const RunConfig& cfg) {
  if (cfg.model == "almost-mathieu")
    return AlmostMathieu{cfg.alpha, cfg.lambda, cfg.theta_phase};
  if (cfg.model == "anderson") {
    DisorderLaw law;
    law.kind = cfg.disorder == "uniform" ? DisorderLaw::Kind::Uniform
                                         : DisorderLaw::Kind::Gaussian;
    law.a = cfg.disorder_a;
    law.b = cfg.disorder_b;
    law.seed = cfg.seed;
    return Anderson{law};
  }
  const HoppingParams hop{cfg.A, cfg.B, cfg.Lz};
  if (cfg.model == "coupled-chain") return CoupledChain{cfg.theta, cfg.b, hop};
  if (cfg.model == "reduced-chain") return ReducedChain{cfg.theta, cfg.b, hop};
  throw std::invalid_argument("config field 'model': unknown model family");
}

std::string canonical_dump(const RunConfig& cfg) {
  std::map<std::string, std::string> kv;
  kv["experiment"] = cfg.experiment;
  kv["model"] = cfg.model;
  kv["alpha"] = format_real(cfg.alpha);
  kv["lambda"] = format_real(cfg.lambda);
  kv["theta_phase"] = format_real(cfg.theta_phase);
  kv["disorder"] = cfg.disorder;
  kv["disorder_a"] = format_real(cfg.disorder_a);
  kv["disorder_b"] = format_real(cfg.disorder_b);
  kv["seed"] = std::to_string(cfg.seed);
  kv["samples"] = std::to_string(cfg.samples);
  kv["theta"] = format_real(cfg.theta);
  kv["b"] = format_real(cfg.b);
  kv["A"] = format_real(cfg.A);
  kv["B"] = format_real(cfg.B);
  kv["Lz"] = format_real(cfg.Lz);
  std::string ladder;
  for (std::size_t i = 0; i < cfg.ladder.size(); ++i)
    ladder += (i ? "," : "") + format_real(cfg.ladder[i]);
  kv["ladder"] = ladder;
  kv["reference_L"] = format_real(cfg.reference_L);
  kv["nodes1"] = std::to_string(cfg.nodes1);
  kv["nodes2"] = std::to_string(cfg.nodes2);
  kv["phases"] = std::to_string(cfg.phases);
  kv["alpha_points"] = std::to_string(cfg.alpha_points);
  kv["butterfly_L"] = format_real(cfg.butterfly_L);
  kv["audit_L"] = format_real(cfg.audit_L);
  kv["shift_range"] = std::to_string(cfg.shift_range);
  std::string bn;
  for (std::size_t i = 0; i < cfg.birkhoff_N.size(); ++i)
    bn += (i ? "," : "") + std::to_string(cfg.birkhoff_N[i]);
  kv["birkhoff_N"] = bn;
  kv["birkhoff_modes"] = std::to_string(cfg.birkhoff_modes);
  kv["tail_tol"] = format_real(cfg.tail_tol);
  kv["outer_pad"] = format_real(cfg.outer_pad);
  kv["kernel"] = cfg.kernel;
  kv["bandwidth"] = format_real(cfg.bandwidth);
  kv["grid_points"] = std::to_string(cfg.grid_points);
  // threads and out_dir are runtime placement, not part of the result identity

  std::string dump;
  for (const auto& [k, v] : kv) dump += k + "=" + v + "\n";
  return dump;
}

std::uint64_t config_hash(const RunConfig& cfg) { return fnv1a64(canonical_dump(cfg)); }

}  // namespace moire
