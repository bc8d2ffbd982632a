#pragma once

#include <cmath>
#include <stdexcept>

namespace moire {

// Interlayer hopping profile h(eta) = A * exp(-B * sqrt(eta^2 + Lz^2)).
// eta is the in-chain offset between the two sites; Lz is the fixed
// transverse separation of the chains, so h is even and bounded by A*exp(-B*Lz).
struct HoppingParams {
  double amplitude = 1.0;  // A >= 0
  double decay = 2.0;      // B > 0
  double distance = 1.0;   // Lz > 0
};

inline void validate(const HoppingParams& h) {
  if (!(h.amplitude >= 0.0)) throw std::invalid_argument("hopping amplitude must be >= 0");
  if (!(h.decay > 0.0)) throw std::invalid_argument("hopping decay must be > 0");
  if (!(h.distance > 0.0)) throw std::invalid_argument("hopping distance must be > 0");
}

inline double hopping_eval(const HoppingParams& h, double eta) {
  return h.amplitude * std::exp(-h.decay * std::sqrt(eta * eta + h.distance * h.distance));
}

}  // namespace moire
