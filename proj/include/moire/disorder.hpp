#pragma once

#include <cstdint>
#include <stdexcept>

namespace moire {

namespace detail {
// splitmix64 finalizer; full avalanche, so consecutive counters decorrelate.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}
}  // namespace detail

// Site disorder for the Anderson model. Values are a pure function of
// (seed, n - offset) through a counter-based integer hash, so evaluation order
// is irrelevant and the lattice shift (T_x w)_n = w_{n-x} is realized exactly
// by adding x to `offset` (re-keying) rather than replaying a stream.
struct DisorderLaw {
  enum class Kind { Uniform, Gaussian };
  Kind kind = Kind::Uniform;
  double a = -1.0;  // uniform: lower endpoint;  gaussian: mean
  double b = 1.0;   // uniform: upper endpoint;  gaussian: stddev >= 0
  std::uint64_t seed = 0;
  std::int64_t offset = 0;  // index re-keying used by lattice shifts
};

inline void validate(const DisorderLaw& law) {
  if (law.kind == DisorderLaw::Kind::Uniform) {
    if (!(law.a <= law.b)) throw std::invalid_argument("uniform disorder needs a <= b");
  } else {
    if (!(law.b >= 0.0)) throw std::invalid_argument("gaussian disorder needs stddev >= 0");
  }
}

// Value of the disorder potential at lattice site n.
double disorder_value(const DisorderLaw& law, std::int64_t n);

// Shifted law: disorder_value(shifted, n) == disorder_value(law, n - x) bit-exactly.
inline DisorderLaw shift_law(const DisorderLaw& law, std::int64_t x) {
  DisorderLaw out = law;
  out.offset += x;
  return out;
}

// Independent stream seed for ensemble sample k.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return detail::mix64(base + 0x9e3779b97f4a7c15ull * (stream + 1));
}

}  // namespace moire
