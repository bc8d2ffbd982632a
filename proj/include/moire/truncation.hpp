#pragma once

#include <Eigen/Dense>
#include <vector>

#include "moire/model.hpp"
#include "moire/window.hpp"

namespace moire {

// Dense symmetric truncation H_L = 1_Lambda H 1_Lambda in the window's row order.
struct TruncatedOperator {
  OperatorModel model;
  LatticeWindow window;
  Eigen::MatrixXd matrix;
};

// Fills the upper triangle from matrix_element and mirrors it, so the matrix
// is exactly symmetric. Rebuilding with identical inputs is bit-identical.
TruncatedOperator assemble(const OperatorModel& model, const LatticeWindow& window,
                           double tail_tol);

// Eigenvalues in ascending order (deterministic single-threaded dense solve).
std::vector<double> eigenvalues(const TruncatedOperator& op);

struct SpectralDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns, vectors.col(j) <-> values[j]
};
SpectralDecomposition decompose(const TruncatedOperator& op);

// Smallest outer_pad such that couplings from the window to sites beyond the
// padded collar are below tail_tol (exact zeros for the nearest-neighbor
// families once pad >= 1).
double min_outer_pad(const OperatorModel& model, double tail_tol);

// tr|H_L - 1_Lambda H| = trace norm of the window<->exterior coupling block,
// exact up to neglected couplings below tail_tol. outer_pad is the physical
// width of the exterior collar that is kept.
double truncation_trace_defect(const OperatorModel& model, const LatticeWindow& window,
                               double outer_pad, double tail_tol);

}  // namespace moire
