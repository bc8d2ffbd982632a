#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>

#include "moire/disorder.hpp"
#include "moire/hopping.hpp"

namespace moire {

namespace defaults {
inline const double kAlpha = (std::sqrt(5.0) - 1.0) / 2.0;       // golden-mean frequency
inline const double kTheta = 1.0 - 1.0 / std::numbers::sqrt2;    // incommensurate twist
inline constexpr double kLambda = 2.0;
inline constexpr double kShiftB = 0.3;
inline constexpr double kTailTol = 1e-12;
inline constexpr std::uint64_t kSeed = 42;
}  // namespace defaults

// Lattice site: layer 1 sits at position x = n, layer 2 at x = (1-theta)*n + b.
// Single-chain models use layer 1 only.
struct SiteIndex {
  int layer = 1;  // 1 or 2
  std::int64_t n = 0;

  friend bool operator==(const SiteIndex&, const SiteIndex&) = default;
};

// (H psi)_n = -psi_{n+1} - psi_{n-1} + lambda*cos(2*pi*alpha*n + theta)*psi_n
struct AlmostMathieu {
  double alpha = defaults::kAlpha;
  double lambda = defaults::kLambda;
  double theta = 0.0;  // phase in [0, 2*pi)
};

// (H psi)_n = -psi_{n+1} - psi_{n-1} + w_n psi_n, w_n i.i.d. per `law`
struct Anderson {
  DisorderLaw law{};
};

// Two chains, intralayer +1 nearest neighbor, zero on-site terms, interlayer
// element h(x_i - x_j) between layer-1 site n1 and layer-2 site n2:
// (H(b) psi)_{n1} = psi_{n1+1} + psi_{n1-1} + sum_{n2} h(n1 - (1-theta)*n2 - b) psi_{n2}
// and symmetrically on layer 2.
struct CoupledChain {
  double theta = defaults::kTheta;  // twist, 0 < theta < 1
  double b = defaults::kShiftB;     // layer-2 offset
  HoppingParams hopping{};
};

// Single chain with +1 nearest neighbor plus the layer-2-eliminated effective
// coupling c(n, n'') = sum_{n'} h(n - (1-theta)*n' - b) * h(n'' - (1-theta)*n' - b)
// on every pair, diagonal included. c is (1-theta)-periodic in b.
struct ReducedChain {
  double theta = defaults::kTheta;
  double b = defaults::kShiftB;  // taken mod (1-theta)
  HoppingParams hopping{};
};

using OperatorModel = std::variant<AlmostMathieu, Anderson, CoupledChain, ReducedChain>;

enum class ModelKind { AlmostMathieu, Anderson, CoupledChain, ReducedChain };

ModelKind kind_of(const OperatorModel& model);
std::string model_id(ModelKind kind);
bool has_layer2(const OperatorModel& model);
void validate(const OperatorModel& model);

inline double potential_am(double alpha, double lambda, double theta, std::int64_t n) {
  return lambda * std::cos(2.0 * std::numbers::pi * alpha * static_cast<double>(n) + theta);
}

// Physical position of a site; layer 2 exists only for CoupledChain.
double site_position(const OperatorModel& model, SiteIndex i);

// Effective coupling with the inner-chain sum truncated so the discarded tail
// is below tail_tol. The truncation range is a function of (min(n,n''),
// max(n,n''), b) only and terms are summed in ascending inner-index order, so
// the result is bit-exactly symmetric in (n, n'') and shift-equivariant.
double reduced_coupling(const ReducedChain& model, std::int64_t n, std::int64_t n2,
                        double tail_tol);

// <delta_i, H delta_j> for the infinite operator. tail_tol only affects
// ReducedChain. Exactly symmetric in (i, j).
double matrix_element(const OperatorModel& model, SiteIndex i, SiteIndex j, double tail_tol);

}  // namespace moire
