#include "moire/truncation.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace moire {
namespace {

// Envelope of the reduced-chain effective coupling at site separation d:
// |c(n, n+d)| <= A^2 e^{-B d} (d/(1-theta) + 2 + 2/(1-q)).
double reduced_coupling_envelope(const ReducedChain& m, double d) {
  const double A = m.hopping.amplitude;
  const double B = m.hopping.decay;
  const double p = 1.0 - m.theta;
  const double q = std::exp(-2.0 * B * p);
  return A * A * std::exp(-B * d) * (d / p + 2.0 + 2.0 / (1.0 - q));
}

}  // namespace

TruncatedOperator assemble(const OperatorModel& model, const LatticeWindow& window,
                           double tail_tol) {
  validate(model);
  if (window.kind != kind_of(model))
    throw std::invalid_argument("window was built for a different model family");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("tail_tol must be > 0");

  const auto n = static_cast<Eigen::Index>(window.total());
  TruncatedOperator op{model, window, Eigen::MatrixXd(n, n)};
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = r; c < n; ++c) {
      const double v = matrix_element(model, window.sites[static_cast<std::size_t>(r)],
                                      window.sites[static_cast<std::size_t>(c)], tail_tol);
      op.matrix(r, c) = v;
      op.matrix(c, r) = v;
    }
  }
  return op;
}

std::vector<double> eigenvalues(const TruncatedOperator& op) {
  if (!op.matrix.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigen decomposition failed");
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

SpectralDecomposition decompose(const TruncatedOperator& op) {
  if (!op.matrix.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigen decomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_outer_pad(const OperatorModel& model, double tail_tol) {
  if (!(tail_tol > 0.0)) throw std::invalid_argument("tail_tol must be > 0");
  switch (kind_of(model)) {
    case ModelKind::AlmostMathieu:
    case ModelKind::Anderson:
      return 1.0;  // couplings vanish beyond one lattice spacing
    case ModelKind::CoupledChain: {
      const auto& m = std::get<CoupledChain>(model);
      const double A = m.hopping.amplitude;
      if (A == 0.0) return 1.0;
      return std::max(1.0, std::log(A / tail_tol) / m.hopping.decay);
    }
    case ModelKind::ReducedChain: {
      const auto& m = std::get<ReducedChain>(model);
      if (m.hopping.amplitude == 0.0) return 1.0;
      double d = std::max(1.0, std::log(m.hopping.amplitude * m.hopping.amplitude / tail_tol) /
                                   m.hopping.decay);
      while (reduced_coupling_envelope(m, d) > tail_tol) d += 0.5;
      return d;
    }
  }
  throw std::logic_error("unknown model kind");
}

double truncation_trace_defect(const OperatorModel& model, const LatticeWindow& window,
                               double outer_pad, double tail_tol) {
  validate(model);
  if (window.kind != kind_of(model))
    throw std::invalid_argument("window was built for a different model family");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("tail_tol must be > 0");
  if (!(outer_pad >= 1.0))
    throw std::invalid_argument("outer_pad must cover at least one lattice spacing");
  if (outer_pad < min_outer_pad(model, tail_tol))
    throw std::invalid_argument("outer_pad too small: neglected couplings exceed tail_tol");

  std::vector<SiteIndex> exterior;
  const auto pad1 = static_cast<std::int64_t>(std::ceil(outer_pad));
  for (std::int64_t n = window.n1_lo - pad1; n <= window.n1_lo - 1; ++n) exterior.push_back({1, n});
  for (std::int64_t n = window.n1_hi + 1; n <= window.n1_hi + pad1; ++n) exterior.push_back({1, n});
  if (window.kind == ModelKind::CoupledChain) {
    const auto& m = std::get<CoupledChain>(model);
    const auto pad2 = static_cast<std::int64_t>(std::ceil(outer_pad / (1.0 - m.theta)));
    for (std::int64_t n = window.n2_lo - pad2; n <= window.n2_lo - 1; ++n)
      exterior.push_back({2, n});
    for (std::int64_t n = window.n2_hi + 1; n <= window.n2_hi + pad2; ++n)
      exterior.push_back({2, n});
  }

  Eigen::MatrixXd block(static_cast<Eigen::Index>(window.total()),
                        static_cast<Eigen::Index>(exterior.size()));
  for (Eigen::Index r = 0; r < block.rows(); ++r)
    for (Eigen::Index c = 0; c < block.cols(); ++c)
      block(r, c) = matrix_element(model, window.sites[static_cast<std::size_t>(r)],
                                   exterior[static_cast<std::size_t>(c)], tail_tol);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
  return svd.singularValues().sum();
}

}  // namespace moire
