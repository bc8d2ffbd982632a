#include "moire/disorder.hpp"

#include <cmath>
#include <numbers>

namespace moire {
namespace {

// One uniform in [0,1) keyed on (seed, counter, slot). 53-bit mantissa.
double u01(std::uint64_t seed, std::uint64_t counter, std::uint64_t slot) {
  const std::uint64_t z = seed + counter * 0x9e3779b97f4a7c15ull + slot * 0xd1342543de82ef95ull;
  return static_cast<double>(detail::mix64(z) >> 11) * 0x1.0p-53;
}

// Same stream shifted into (0,1] so logs stay finite.
double u01_open(std::uint64_t seed, std::uint64_t counter, std::uint64_t slot) {
  const std::uint64_t z = seed + counter * 0x9e3779b97f4a7c15ull + slot * 0xd1342543de82ef95ull;
  return static_cast<double>((detail::mix64(z) >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

double disorder_value(const DisorderLaw& law, std::int64_t n) {
  validate(law);
  const auto counter = static_cast<std::uint64_t>(n - law.offset);
  if (law.kind == DisorderLaw::Kind::Uniform) {
    return law.a + (law.b - law.a) * u01(law.seed, counter, 0);
  }
  // Box-Muller from two hashed uniforms.
  const double u1 = u01_open(law.seed, counter, 0);
  const double u2 = u01(law.seed, counter, 1);
  return law.a + law.b * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace moire
