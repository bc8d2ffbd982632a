#include "moire/dos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "moire/parallel.hpp"
#include "moire/window.hpp"

namespace moire {
namespace {

void require_normalized(const EmpiricalDOS& dos, const char* who) {
  if (std::abs(dos.total - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(who) + ": measure is not normalized");
}

void require_sorted(const std::vector<double>& v, const char* who) {
  if (!std::is_sorted(v.begin(), v.end()))
    throw std::invalid_argument(std::string(who) + ": energies must be ascending");
}

}  // namespace

EmpiricalDOS empirical_dos(const std::vector<double>& eigs, std::size_t card) {
  if (card == 0) throw std::invalid_argument("cardinality must be > 0");
  if (eigs.size() != card)
    throw std::invalid_argument("eigenvalue count does not match window cardinality");
  require_sorted(eigs, "empirical_dos");
  EmpiricalDOS dos;
  dos.energies = eigs;
  const double w = 1.0 / static_cast<double>(card);
  dos.weights.assign(card, w);
  dos.total = static_cast<double>(card) * w;
  return dos;
}

EmpiricalDOS local_dos(const SpectralDecomposition& decomp, std::size_t row) {
  if (row >= static_cast<std::size_t>(decomp.vectors.rows()))
    throw std::out_of_range("site row outside the decomposition");
  EmpiricalDOS dos;
  dos.energies.reserve(static_cast<std::size_t>(decomp.values.size()));
  dos.weights.reserve(static_cast<std::size_t>(decomp.values.size()));
  double total = 0.0;
  for (Eigen::Index j = 0; j < decomp.values.size(); ++j) {
    const double a = decomp.vectors(static_cast<Eigen::Index>(row), j);
    const double w = a * a;
    if (w == 0.0) continue;
    dos.energies.push_back(decomp.values[j]);
    dos.weights.push_back(w);
    total += w;
  }
  dos.total = total;
  require_sorted(dos.energies, "local_dos");
  return dos;
}

EmpiricalDOS local_dos(const TruncatedOperator& op, SiteIndex site) {
  return local_dos(decompose(op), op.window.row_of(site));
}

EmpiricalDOS mix_dos(const std::vector<std::pair<const EmpiricalDOS*, double>>& parts) {
  std::size_t count = 0;
  for (const auto& [part, scale] : parts) {
    if (part == nullptr) throw std::invalid_argument("null mixture component");
    if (!(scale > 0.0)) throw std::invalid_argument("mixture scales must be > 0");
    count += part->size();
  }
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(count);
  double total = 0.0;
  for (const auto& [part, scale] : parts) {
    for (std::size_t k = 0; k < part->size(); ++k)
      atoms.emplace_back(part->energies[k], scale * part->weights[k]);
    total += scale * part->total;
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  EmpiricalDOS dos;
  dos.energies.reserve(atoms.size());
  dos.weights.reserve(atoms.size());
  for (const auto& [e, w] : atoms) {
    dos.energies.push_back(e);
    dos.weights.push_back(w);
  }
  dos.total = total;
  return dos;
}

double integrate(const EmpiricalDOS& dos, const std::function<double(double)>& g) {
  double acc = 0.0;
  for (std::size_t k = 0; k < dos.size(); ++k) acc += dos.weights[k] * g(dos.energies[k]);
  return acc;
}

std::complex<double> resolvent_trace_avg(const std::vector<double>& eigs,
                                         std::complex<double> z) {
  if (eigs.empty()) throw std::invalid_argument("empty spectrum");
  if (z.imag() == 0.0) throw std::invalid_argument("z must be non-real");
  std::complex<double> acc(0.0, 0.0);
  for (const double e : eigs) acc += 1.0 / (std::complex<double>(e, 0.0) - z);
  return acc / static_cast<double>(eigs.size());
}

std::complex<double> resolvent_trace_avg(const TruncatedOperator& op, std::complex<double> z) {
  return resolvent_trace_avg(eigenvalues(op), z);
}

DOSCurve smooth(const EmpiricalDOS& dos, KernelKind kernel, double bandwidth,
                const std::vector<double>& grid) {
  if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
  if (grid.size() < 2) throw std::invalid_argument("grid needs at least two points");
  require_sorted(grid, "smooth");

  DOSCurve curve;
  curve.grid = grid;
  curve.density.assign(grid.size(), 0.0);
  const double inv_gauss_norm = 1.0 / (bandwidth * std::sqrt(2.0 * std::numbers::pi));
  const double lor_scale = bandwidth / std::numbers::pi;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < dos.size(); ++k) {
      const double t = grid[i] - dos.energies[k];
      const double kv = kernel == KernelKind::Gaussian
                            ? std::exp(-t * t / (2.0 * bandwidth * bandwidth)) * inv_gauss_norm
                            : lor_scale / (t * t + bandwidth * bandwidth);
      acc += dos.weights[k] * kv;
    }
    curve.density[i] = acc;
  }
  return curve;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  if (!(hi > lo)) throw std::invalid_argument("grid bounds must satisfy hi > lo");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double h = (hi - lo) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = lo + h * i;
  grid.back() = hi;
  return grid;
}

double trapezoid_mass(const DOSCurve& curve) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < curve.grid.size(); ++i)
    acc += 0.5 * (curve.density[i] + curve.density[i + 1]) * (curve.grid[i + 1] - curve.grid[i]);
  return acc;
}

double ks_distance(const EmpiricalDOS& a, const EmpiricalDOS& b) {
  require_normalized(a, "ks_distance");
  require_normalized(b, "ks_distance");
  std::size_t i = 0, j = 0;
  double ca = 0.0, cb = 0.0, best = 0.0;
  while (i < a.size() || j < b.size()) {
    double e;
    if (i >= a.size()) e = b.energies[j];
    else if (j >= b.size()) e = a.energies[i];
    else e = std::min(a.energies[i], b.energies[j]);
    while (i < a.size() && a.energies[i] <= e) ca += a.weights[i++];
    while (j < b.size() && b.energies[j] <= e) cb += b.weights[j++];
    best = std::max(best, std::abs(ca - cb));
  }
  return best;
}

LimitingDOSEstimate limiting_dos_reduced(double theta, const HoppingParams& hopping, double L,
                                         int nodes, double tail_tol, int threads) {
  if (nodes < 1) throw std::invalid_argument("node count must be >= 1");
  validate(hopping);
  const double p = 1.0 - theta;

  LimitingDOSEstimate est;
  est.w1 = 1.0;
  est.w2 = 0.0;
  est.nodes_b2.resize(static_cast<std::size_t>(nodes));
  for (int k = 0; k < nodes; ++k)
    est.nodes_b2[static_cast<std::size_t>(k)] = (k + 0.5) * p / static_cast<double>(nodes);

  std::vector<EmpiricalDOS> parts(static_cast<std::size_t>(nodes));
  parallel_for(nodes, threads, [&](int k) {
    const ReducedChain model{theta, est.nodes_b2[static_cast<std::size_t>(k)], hopping};
    const auto window = build_window(OperatorModel(model), L);
    const auto op = assemble(OperatorModel(model), window, tail_tol);
    parts[static_cast<std::size_t>(k)] = empirical_dos(eigenvalues(op), window.total());
  });

  std::vector<std::pair<const EmpiricalDOS*, double>> weighted;
  weighted.reserve(parts.size());
  for (const auto& part : parts) weighted.emplace_back(&part, 1.0 / nodes);
  est.mixture = mix_dos(weighted);
  return est;
}

LimitingDOSEstimate limiting_dos_coupled(double theta, const HoppingParams& hopping, double L,
                                         int nodes1, int nodes2, double tail_tol, int threads) {
  if (nodes1 < 1 || nodes2 < 1) throw std::invalid_argument("node counts must be >= 1");
  if (!(L > 1.0)) throw std::invalid_argument("coupled estimate needs L > 1 (shifts reach 1)");
  validate(hopping);
  const double p = 1.0 - theta;

  LimitingDOSEstimate est;
  est.w1 = p / (2.0 - theta);
  est.w2 = 1.0 / (2.0 - theta);
  est.nodes_b2.resize(static_cast<std::size_t>(nodes2));
  for (int k = 0; k < nodes2; ++k)
    est.nodes_b2[static_cast<std::size_t>(k)] = (k + 0.5) * p / static_cast<double>(nodes2);
  est.nodes_b1.resize(static_cast<std::size_t>(nodes1));
  for (int k = 0; k < nodes1; ++k)
    est.nodes_b1[static_cast<std::size_t>(k)] = (k + 0.5) / static_cast<double>(nodes1);

  // Tasks [0, nodes2): layer-1 origin local DOS at b2 nodes;
  // tasks [nodes2, nodes2+nodes1): layer-2 origin local DOS at b1 nodes.
  std::vector<EmpiricalDOS> parts(static_cast<std::size_t>(nodes1 + nodes2));
  parallel_for(nodes1 + nodes2, threads, [&](int t) {
    const bool layer1_term = t < nodes2;
    const double b = layer1_term ? est.nodes_b2[static_cast<std::size_t>(t)]
                                 : est.nodes_b1[static_cast<std::size_t>(t - nodes2)];
    const CoupledChain model{theta, b, hopping};
    const auto window = build_window(OperatorModel(model), L);
    const auto op = assemble(OperatorModel(model), window, tail_tol);
    parts[static_cast<std::size_t>(t)] = local_dos(op, SiteIndex{layer1_term ? 1 : 2, 0});
  });

  std::vector<std::pair<const EmpiricalDOS*, double>> weighted;
  weighted.reserve(parts.size());
  for (int t = 0; t < nodes1 + nodes2; ++t) {
    const double scale = t < nodes2 ? est.w1 / nodes2 : est.w2 / nodes1;
    weighted.emplace_back(&parts[static_cast<std::size_t>(t)], scale);
  }
  est.mixture = mix_dos(weighted);
  return est;
}

}  // namespace moire
