#include "moire/window.hpp"

#include <cmath>
#include <stdexcept>

namespace moire {

bool LatticeWindow::contains(SiteIndex i) const {
  if (i.layer == 1) return i.n >= n1_lo && i.n <= n1_hi;
  if (i.layer == 2) return i.n >= n2_lo && i.n <= n2_hi;
  return false;
}

std::size_t LatticeWindow::row_of(SiteIndex i) const {
  if (!contains(i)) throw std::out_of_range("site not in window");
  if (i.layer == 1) return static_cast<std::size_t>(i.n - n1_lo);
  return card1 + static_cast<std::size_t>(i.n - n2_lo);
}

LatticeWindow build_window(const OperatorModel& model, double L) {
  validate(model);
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("window size L must be > 0");

  LatticeWindow w;
  w.L = L;
  w.kind = kind_of(model);

  const auto m1 = static_cast<std::int64_t>(std::floor(L));
  w.n1_lo = -m1;
  w.n1_hi = m1;

  if (w.kind == ModelKind::CoupledChain) {
    const auto& m = std::get<CoupledChain>(model);
    if (!(L > std::abs(m.b)))
      throw std::invalid_argument("coupled window needs L > |b| so layer 2 is non-empty");
    const double p = 1.0 - m.theta;
    w.n2_lo = -static_cast<std::int64_t>(std::floor((L + m.b) / p));
    w.n2_hi = static_cast<std::int64_t>(std::floor((L - m.b) / p));
  }

  w.card1 = static_cast<std::size_t>(w.n1_hi - w.n1_lo + 1);
  w.card2 = w.n2_hi >= w.n2_lo ? static_cast<std::size_t>(w.n2_hi - w.n2_lo + 1) : 0;
  w.sites.reserve(w.card1 + w.card2);
  for (std::int64_t n = w.n1_lo; n <= w.n1_hi; ++n) w.sites.push_back({1, n});
  for (std::int64_t n = w.n2_lo; n <= w.n2_hi; ++n) w.sites.push_back({2, n});
  return w;
}

}  // namespace moire
