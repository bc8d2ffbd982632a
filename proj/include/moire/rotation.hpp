#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace moire {

// Rotation x -> x + k*step on the circle R / (modulus Z), representatives [0, modulus).
struct CircleRotation {
  double modulus = 1.0;  // > 0
  double step = 0.0;     // displacement per unit shift
};

inline double rotate(const CircleRotation& rot, double x, std::int64_t k) {
  if (!(rot.modulus > 0.0)) throw std::invalid_argument("modulus must be > 0");
  if (!(x >= 0.0 && x < rot.modulus))
    throw std::domain_error("representative outside [0, modulus)");
  double r = std::fmod(x + static_cast<double>(k) * rot.step, rot.modulus);
  if (r < 0.0) r += rot.modulus;
  if (r >= rot.modulus) r -= rot.modulus;  // fmod edge after the add
  if (r < 0.0) r = 0.0;
  return r;
}

}  // namespace moire
