#include "moire/model.hpp"

#include <algorithm>
#include <cmath>

namespace moire {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_layer1(SiteIndex i) {
  if (i.layer != 1) throw std::invalid_argument("single-chain model has layer-1 sites only");
}

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(field) + " must be finite");
}

void require_twist(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0,1)");
}

}  // namespace

ModelKind kind_of(const OperatorModel& model) {
  return std::visit(overloaded{[](const AlmostMathieu&) { return ModelKind::AlmostMathieu; },
                               [](const Anderson&) { return ModelKind::Anderson; },
                               [](const CoupledChain&) { return ModelKind::CoupledChain; },
                               [](const ReducedChain&) { return ModelKind::ReducedChain; }},
                    model);
}

std::string model_id(ModelKind kind) {
  switch (kind) {
    case ModelKind::AlmostMathieu: return "almost-mathieu";
    case ModelKind::Anderson: return "anderson";
    case ModelKind::CoupledChain: return "coupled-chain";
    case ModelKind::ReducedChain: return "reduced-chain";
  }
  throw std::logic_error("unknown model kind");
}

bool has_layer2(const OperatorModel& model) {
  return kind_of(model) == ModelKind::CoupledChain;
}

void validate(const OperatorModel& model) {
  std::visit(overloaded{[](const AlmostMathieu& m) {
                          require_finite(m.alpha, "alpha");
                          require_finite(m.lambda, "lambda");
                          require_finite(m.theta, "theta");
                        },
                        [](const Anderson& m) { validate(m.law); },
                        [](const CoupledChain& m) {
                          require_twist(m.theta);
                          require_finite(m.b, "b");
                          validate(m.hopping);
                        },
                        [](const ReducedChain& m) {
                          require_twist(m.theta);
                          require_finite(m.b, "b");
                          validate(m.hopping);
                        }},
             model);
}

double site_position(const OperatorModel& model, SiteIndex i) {
  if (i.layer == 1) return static_cast<double>(i.n);
  if (!has_layer2(model)) throw std::invalid_argument("model has no layer-2 sites");
  const auto& m = std::get<CoupledChain>(model);
  return (1.0 - m.theta) * static_cast<double>(i.n) + m.b;
}

double reduced_coupling(const ReducedChain& model, std::int64_t n, std::int64_t n2,
                        double tail_tol) {
  if (!(tail_tol > 0.0)) throw std::invalid_argument("tail_tol must be > 0");
  const double A = model.hopping.amplitude;
  const double B = model.hopping.decay;
  if (A == 0.0) return 0.0;

  const double p = 1.0 - model.theta;
  const std::int64_t lo = std::min(n, n2);
  const std::int64_t hi = std::max(n, n2);
  const double sep = static_cast<double>(hi - lo);
  const double q = std::exp(-2.0 * B * p);  // geometric factor per inner step

  // Every term is bounded by A^2 e^{-B(hi-lo)}; with the geometric envelope the
  // whole sum is below this. Far-separated pairs are returned as exact zeros
  // (decision depends only on hi-lo, so symmetry/equivariance are kept).
  const double whole_bound = A * A * std::exp(-B * sep) * (sep / p + 2.0 + 2.0 / (1.0 - q));
  if (whole_bound <= std::min(1e-250, 1e-3 * tail_tol)) return 0.0;

  // Reach R so that each one-sided discarded tail is <= tail_tol/2, with a
  // two-period margin absorbing ceil/floor knife edges under shifts of b.
  double reach = std::log(2.0 * A * A / ((1.0 - q) * tail_tol)) / (2.0 * B) + 2.0 * p;
  if (reach < p) reach = p;

  const auto k_lo = static_cast<std::int64_t>(
      std::ceil((static_cast<double>(lo) - model.b - reach) / p));
  const auto k_hi = static_cast<std::int64_t>(
      std::floor((static_cast<double>(hi) - model.b + reach) / p));

  double acc = 0.0;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const double u = p * static_cast<double>(k) + model.b;  // inner-site position
    acc += hopping_eval(model.hopping, static_cast<double>(n) - u) *
           hopping_eval(model.hopping, static_cast<double>(n2) - u);
  }
  return acc;
}

double matrix_element(const OperatorModel& model, SiteIndex i, SiteIndex j, double tail_tol) {
  return std::visit(
      overloaded{
          [&](const AlmostMathieu& m) -> double {
            require_layer1(i);
            require_layer1(j);
            if (i.n == j.n) return potential_am(m.alpha, m.lambda, m.theta, i.n);
            return std::llabs(i.n - j.n) == 1 ? -1.0 : 0.0;
          },
          [&](const Anderson& m) -> double {
            require_layer1(i);
            require_layer1(j);
            if (i.n == j.n) return disorder_value(m.law, i.n);
            return std::llabs(i.n - j.n) == 1 ? -1.0 : 0.0;
          },
          [&](const CoupledChain& m) -> double {
            if (i.layer < 1 || i.layer > 2 || j.layer < 1 || j.layer > 2)
              throw std::invalid_argument("coupled chain has layers 1 and 2 only");
            if (i.layer == j.layer) {
              if (i.n == j.n) return 0.0;
              return std::llabs(i.n - j.n) == 1 ? 1.0 : 0.0;
            }
            const SiteIndex s1 = i.layer == 1 ? i : j;
            const SiteIndex s2 = i.layer == 1 ? j : i;
            const double eta = static_cast<double>(s1.n) -
                               (1.0 - m.theta) * static_cast<double>(s2.n) - m.b;
            return hopping_eval(m.hopping, eta);
          },
          [&](const ReducedChain& m) -> double {
            require_layer1(i);
            require_layer1(j);
            double v = reduced_coupling(m, i.n, j.n, tail_tol);
            if (std::llabs(i.n - j.n) == 1) v += 1.0;
            return v;
          }},
      model);
}

}  // namespace moire
