#include "moire/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace moire {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double x, double modulus) {
  double r = std::fmod(x, modulus);
  if (r < 0.0) r += modulus;
  if (r >= modulus) r -= modulus;
  if (r < 0.0) r = 0.0;
  return r;
}

// Generic finite covariance check. `shifted` is the transformed model,
// `map` sends a window site to the site it must agree with in the original.
double residual_over_pairs(const OperatorModel& model, const OperatorModel& shifted,
                           const LatticeWindow& window,
                           const std::function<SiteIndex(SiteIndex)>& map, double tail_tol) {
  std::vector<SiteIndex> tested;
  for (const SiteIndex& s : window.sites)
    if (window.contains(map(s))) tested.push_back(s);
  if (tested.empty()) throw std::invalid_argument("shift exits the window");

  double worst = 0.0;
  for (const SiteIndex& i : tested) {
    for (const SiteIndex& j : tested) {
      const double lhs = matrix_element(shifted, i, j, tail_tol);
      const double rhs = matrix_element(model, map(i), map(j), tail_tol);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

}  // namespace

double covariance_residual_layer(const CoupledChain& model, std::int64_t x,
                                 const LatticeWindow& window, ShiftFamily family,
                                 double tail_tol) {
  CoupledChain shifted = model;
  int moved_layer;
  if (family == ShiftFamily::Layer1) {
    shifted.b = model.b + static_cast<double>(x);
    moved_layer = 1;
  } else {
    shifted.b = model.b - (1.0 - model.theta) * static_cast<double>(x);
    moved_layer = 2;
  }
  auto map = [moved_layer, x](SiteIndex s) {
    if (s.layer == moved_layer) s.n -= x;
    return s;
  };
  return residual_over_pairs(OperatorModel(model), OperatorModel(shifted), window, map, tail_tol);
}

double covariance_residual(const OperatorModel& model, std::int64_t x,
                           const LatticeWindow& window, double tail_tol) {
  validate(model);
  if (window.kind != kind_of(model))
    throw std::invalid_argument("window was built for a different model family");

  switch (kind_of(model)) {
    case ModelKind::AlmostMathieu: {
      const auto& m = std::get<AlmostMathieu>(model);
      AlmostMathieu shifted = m;
      shifted.theta = wrap(m.theta - kTwoPi * m.alpha * static_cast<double>(x), kTwoPi);
      auto map = [x](SiteIndex s) { s.n -= x; return s; };
      return residual_over_pairs(model, OperatorModel(shifted), window, map, tail_tol);
    }
    case ModelKind::Anderson: {
      const auto& m = std::get<Anderson>(model);
      Anderson shifted{shift_law(m.law, x)};
      auto map = [x](SiteIndex s) { s.n -= x; return s; };
      return residual_over_pairs(model, OperatorModel(shifted), window, map, tail_tol);
    }
    case ModelKind::CoupledChain: {
      const auto& m = std::get<CoupledChain>(model);
      return std::max(covariance_residual_layer(m, x, window, ShiftFamily::Layer1, tail_tol),
                      covariance_residual_layer(m, x, window, ShiftFamily::Layer2, tail_tol));
    }
    case ModelKind::ReducedChain: {
      const auto& m = std::get<ReducedChain>(model);
      ReducedChain shifted = m;
      shifted.b = wrap(m.b - static_cast<double>(x), 1.0 - m.theta);
      // The eliminated-layer shift acts oppositely on the surviving chain:
      // element(H(b-x), i, j) = element(H(b), i+x, j+x).
      auto map = [x](SiteIndex s) { s.n += x; return s; };
      return residual_over_pairs(model, OperatorModel(shifted), window, map, tail_tol);
    }
  }
  throw std::logic_error("unknown model kind");
}

double birkhoff_average(const std::function<double(double)>& f, double x0,
                        const CircleRotation& rot, std::int64_t N) {
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  constexpr std::int64_t kBlock = 1024;
  double total = 0.0;
  double block = 0.0;
  std::int64_t in_block = 0;
  for (std::int64_t n = -N; n <= N; ++n) {
    block += f(rotate(rot, x0, n));
    if (++in_block == kBlock) {
      total += block;
      block = 0.0;
      in_block = 0;
    }
  }
  total += block;
  return total / static_cast<double>(2 * N + 1);
}

namespace {

// Fractional part of alpha*k in [0,1). The product is split with an fma so
// the reduced phase keeps full precision even when alpha*k is large; a naive
// polar(1, 2*pi*alpha*k) loses ~ulp(alpha*k) of phase, which is what limits
// the closed form's accuracy at large N.
double frac_alpha_k(double alpha, double k) {
  const double hi = alpha * k;
  const double lo = std::fma(alpha, k, -hi);
  double f = std::fmod(hi, 1.0) + lo;
  f -= std::floor(f);
  if (f >= 1.0) f -= 1.0;
  if (f < 0.0) f = 0.0;
  return f;
}

}  // namespace

std::complex<double> weyl_sum(std::int64_t m, double alpha, std::int64_t N) {
  if (m == 0) throw std::invalid_argument("mode m must be nonzero");
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
  const double md = static_cast<double>(m);
  // q = e^{i phi}, phi = -2 pi m alpha; all q powers from reduced phases
  const std::complex<double> q = std::polar(1.0, -kTwoPi * frac_alpha_k(alpha, md));
  const std::complex<double> denom = 1.0 - q;
  if (std::abs(denom) <= 1e-12) throw std::domain_error("resonant frequency: 1 - q is degenerate");
  const std::complex<double> qmN =
      std::polar(1.0, kTwoPi * frac_alpha_k(alpha, md * static_cast<double>(N)));
  const std::complex<double> qNp1 =
      std::polar(1.0, -kTwoPi * frac_alpha_k(alpha, md * static_cast<double>(N + 1)));
  return (qmN - qNp1) / denom;
}

double orbit_fill(const CircleRotation& rot, double x0, std::int64_t N, int bins) {
  if (N < 1) throw std::invalid_argument("orbit length must be >= 1");
  if (bins < 1) throw std::invalid_argument("bins must be >= 1");
  std::vector<std::int64_t> count(static_cast<std::size_t>(bins), 0);
  for (std::int64_t n = 0; n < N; ++n) {
    const double x = rotate(rot, x0, n);
    auto k = static_cast<std::int64_t>(x / rot.modulus * bins);
    k = std::clamp<std::int64_t>(k, 0, bins - 1);
    ++count[static_cast<std::size_t>(k)];
  }
  return static_cast<double>(*std::min_element(count.begin(), count.end())) /
         static_cast<double>(N);
}

}  // namespace moire
