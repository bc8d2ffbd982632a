#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "moire/truncation.hpp"

namespace moire {

// Purely atomic spectral measure: sum_j weights[j] * delta(energies[j]).
struct EmpiricalDOS {
  std::vector<double> energies;  // ascending
  std::vector<double> weights;   // positive, aligned with energies
  double total = 0.0;            // sum of weights

  std::size_t size() const { return energies.size(); }
};

struct DOSCurve {
  std::vector<double> grid;     // ascending energies
  std::vector<double> density;  // kernel-smoothed values, >= 0
};

enum class KernelKind { Gaussian, Lorentzian };

// Quadrature estimate of the thermodynamic DOS measure, with the shift nodes
// it averaged over and (coupled chain) the layer weights of the mixture.
struct LimitingDOSEstimate {
  EmpiricalDOS mixture;
  std::vector<double> nodes_b2;  // nodes in [0, 1-theta)
  std::vector<double> nodes_b1;  // nodes in [0, 1); empty for the reduced chain
  double w1 = 1.0;               // layer-1 weight (1-theta)/(2-theta) for coupled
  double w2 = 0.0;               // layer-2 weight 1/(2-theta) for coupled
};

// Each eigenvalue becomes an atom of weight 1/card; eigs must be ascending
// with eigs.size() == card, so the measure is normalized.
EmpiricalDOS empirical_dos(const std::vector<double>& eigs, std::size_t card);

// Atoms (E_j, |v_j(row)|^2); zero-weight atoms are dropped. Normalized by
// eigenvector completeness.
EmpiricalDOS local_dos(const SpectralDecomposition& decomp, std::size_t row);
EmpiricalDOS local_dos(const TruncatedOperator& op, SiteIndex site);

// Weighted union of atomic measures; scales must be > 0.
EmpiricalDOS mix_dos(const std::vector<std::pair<const EmpiricalDOS*, double>>& parts);

// integral of g against the measure, fixed ascending-energy order.
double integrate(const EmpiricalDOS& dos, const std::function<double(double)>& g);

// (1/#eigs) sum_j 1/(E_j - z); |result| <= total/|Im z|. Requires Im z != 0.
std::complex<double> resolvent_trace_avg(const std::vector<double>& eigs, std::complex<double> z);
std::complex<double> resolvent_trace_avg(const TruncatedOperator& op, std::complex<double> z);

// Kernel-smoothed density on the given ascending grid.
// Gaussian: exp(-t^2/(2 h^2)) / (h sqrt(2 pi)); Lorentzian: (h/pi)/(t^2 + h^2).
DOSCurve smooth(const EmpiricalDOS& dos, KernelKind kernel, double bandwidth,
                const std::vector<double>& grid);

std::vector<double> uniform_grid(double lo, double hi, int points);

// Trapezoid integral of the curve (mass check helper).
double trapezoid_mass(const DOSCurve& curve);

// sup_E |CDF_a(E) - CDF_b(E)| for normalized measures (totals within 1e-9 of 1).
double ks_distance(const EmpiricalDOS& a, const EmpiricalDOS& b);

// Equal-weight midpoint average over nodes b_k = (k+1/2)(1-theta)/nodes of the
// reduced-chain empirical DOS at window size L.
LimitingDOSEstimate limiting_dos_reduced(double theta, const HoppingParams& hopping, double L,
                                         int nodes, double tail_tol, int threads = 1);

// Coupled-chain estimate: (1-theta)/(2-theta) * avg over nodes2 in [0,1-theta)
// of the layer-1 origin local DOS + 1/(2-theta) * avg over nodes1 in [0,1) of
// the layer-2 origin local DOS. Total weight 1.
LimitingDOSEstimate limiting_dos_coupled(double theta, const HoppingParams& hopping, double L,
                                         int nodes1, int nodes2, double tail_tol,
                                         int threads = 1);

}  // namespace moire
