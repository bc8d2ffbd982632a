#pragma once

#include <complex>
#include <cstdint>
#include <functional>

#include "moire/rotation.hpp"
#include "moire/truncation.hpp"

namespace moire {

// Which of the two magnetic-translation analogues is audited for the coupled
// chain: shifting layer 1 (b -> b + x) or layer 2 (b -> b - (1-theta) x).
enum class ShiftFamily { Layer1, Layer2 };

// Max over window-interior pairs of |element(shifted model, i, j) -
// element(model, shifted sites)|, the finite-check of the exact covariance
// identity of each family. Should be at fp-roundoff scale (<= 1e-12).
// CoupledChain reports the max over both shift families.
double covariance_residual(const OperatorModel& model, std::int64_t x,
                           const LatticeWindow& window, double tail_tol);
double covariance_residual_layer(const CoupledChain& model, std::int64_t x,
                                 const LatticeWindow& window, ShiftFamily family,
                                 double tail_tol);

// (1/(2N+1)) sum_{n=-N}^{N} f(rotate(x0, n)); fixed-order blockwise summation.
double birkhoff_average(const std::function<double(double)>& f, double x0,
                        const CircleRotation& rot, std::int64_t N);

// sum_{n=-N}^{N} e^{-2 pi i m alpha n} in closed form (q^{-N} - q^{N+1})/(1-q),
// q = e^{-2 pi i m alpha}; |result| <= 2/|1-q|. Throws on the resonance
// |1-q| <= 1e-12 and on m = 0.
std::complex<double> weyl_sum(std::int64_t m, double alpha, std::int64_t N);

// Fraction of the orbit x0, T x0, ..., T^{N-1} x0 landing in the emptiest of
// `bins` equal subintervals of [0, modulus).
double orbit_fill(const CircleRotation& rot, double x0, std::int64_t N, int bins);

}  // namespace moire
