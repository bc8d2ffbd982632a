#pragma once

#include <cstdint>
#include <vector>

#include "moire/model.hpp"

namespace moire {

// Finite truncation window: all sites with physical position in [-L, L].
// Layer-1 sites occupy rows [0, card1), layer-2 sites (coupled chain only)
// rows [card1, card1+card2), each block in ascending site index.
struct LatticeWindow {
  double L = 0.0;
  ModelKind kind = ModelKind::AlmostMathieu;
  std::int64_t n1_lo = 0, n1_hi = -1;
  std::int64_t n2_lo = 0, n2_hi = -1;
  std::vector<SiteIndex> sites;
  std::size_t card1 = 0, card2 = 0;

  std::size_t total() const { return sites.size(); }
  bool contains(SiteIndex i) const;
  std::size_t row_of(SiteIndex i) const;  // throws if the site is outside
};

// Single chains: n in [-floor(L), floor(L)], 2*floor(L)+1 sites.
// Coupled chain adds layer-2 indices n with (1-theta)*n + b in [-L, L]:
// n in [-floor((L+b)/(1-theta)), floor((L-b)/(1-theta))]; requires L > |b|.
LatticeWindow build_window(const OperatorModel& model, double L);

}  // namespace moire
