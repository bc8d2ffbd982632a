#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "moire/disorder.hpp"
#include "moire/hopping.hpp"
#include "moire/model.hpp"

using namespace moire;

namespace {

// Wide-window oracle for the effective coupling: explicit sum over the inner
// chain, range fixed a priori, independent of the library's range selection.
double brute_coupling(const ReducedChain& m, std::int64_t n, std::int64_t n2) {
  const double p = 1.0 - m.theta;
  double acc = 0.0;
  for (std::int64_t k = -200; k <= 200; ++k) {
    const double u = p * static_cast<double>(k) + m.b;
    acc += hopping_eval(m.hopping, static_cast<double>(n) - u) *
           hopping_eval(m.hopping, static_cast<double>(n2) - u);
  }
  return acc;
}

double coupling_envelope(const ReducedChain& m, double d) {
  const double A = m.hopping.amplitude, B = m.hopping.decay, p = 1.0 - m.theta;
  const double q = std::exp(-2.0 * B * p);
  return A * A * std::exp(-B * d) * (d / p + 2.0 + 2.0 / (1.0 - q));
}

}  // namespace

TEST_CASE("hopping profile values") {
  CHECK(hopping_eval({1.0, 1.0, 1.0}, 0.0) == doctest::Approx(0.36787944117144233).epsilon(1e-15));
  CHECK(hopping_eval({2.0, 1.0, 1.0}, 0.0) == doctest::Approx(0.73575888234288467).epsilon(1e-15));
  // A=1, B=0.5, Lz=1 at eta=3: exp(-0.5*sqrt(10))
  CHECK(hopping_eval({1.0, 0.5, 1.0}, 3.0) ==
        doctest::Approx(0.20574066108381444).epsilon(1e-15));
}

TEST_CASE("hopping profile is even and bounded by its peak") {
  const HoppingParams h{1.3, 2.0, 0.7};
  const double peak = h.amplitude * std::exp(-h.decay * h.distance);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> eta(-25.0, 25.0);
  for (int i = 0; i < 500; ++i) {
    const double e = eta(rng);
    CHECK(hopping_eval(h, e) == hopping_eval(h, -e));  // x*x kills the sign exactly
    CHECK(hopping_eval(h, e) <= peak);
    CHECK(hopping_eval(h, e) > 0.0);
  }
  CHECK(hopping_eval(h, 0.0) == doctest::Approx(peak).epsilon(1e-15));
}

TEST_CASE("hopping parameter validation") {
  CHECK_THROWS_AS(validate(HoppingParams{-1.0, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(HoppingParams{1.0, 0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(HoppingParams{1.0, 1.0, 0.0}), std::invalid_argument);
  CHECK_NOTHROW(validate(HoppingParams{0.0, 2.0, 1.0}));  // decoupled chains are legal
}

TEST_CASE("almost-Mathieu potential values") {
  CHECK(std::abs(potential_am(0.25, 1.0, 0.0, 1)) <= 1e-15);            // cos(pi/2)
  CHECK(potential_am(0.25, 1.0, 0.0, 2) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(potential_am(0.25, 3.0, 0.0, 0) == doctest::Approx(3.0).epsilon(1e-15));
  // alpha = 1/sqrt(2), lambda = 2, theta = 0.3, n = 5 against an extended-
  // precision evaluation at the same double-rounded alpha.
  CHECK(potential_am(1.0 / std::sqrt(2.0), 2.0, 0.3, 5) ==
        doctest::Approx(-1.7323833716611106).epsilon(5e-14));
  // lambda scales linearly
  CHECK(potential_am(0.1, 5.0, 0.2, 7) ==
        doctest::Approx(5.0 * potential_am(0.1, 1.0, 0.2, 7)).epsilon(1e-15));
}

TEST_CASE("disorder values are order-independent pure functions") {
  DisorderLaw law;
  law.seed = 1234;
  const double late = disorder_value(law, 907);
  for (int n = -50; n <= 50; ++n) (void)disorder_value(law, n);
  CHECK(disorder_value(law, 907) == late);

  // distinct sites give distinct values for this keyed hash
  std::set<double> seen;
  for (int n = -5000; n < 5000; ++n) seen.insert(disorder_value(law, n));
  CHECK(seen.size() == 10000);
}

TEST_CASE("uniform disorder support and moments") {
  DisorderLaw law;
  law.a = -1.0;
  law.b = 1.0;
  law.seed = 99;
  double mean = 0.0;
  const int N = 20001;
  for (int n = -10000; n <= 10000; ++n) {
    const double v = disorder_value(law, n);
    CHECK(v >= -1.0);
    CHECK(v < 1.0);
    mean += v;
  }
  mean /= N;
  CHECK(std::abs(mean) < 4.0 * (2.0 / std::sqrt(12.0)) / std::sqrt(double(N)));
}

TEST_CASE("degenerate disorder laws are constant") {
  DisorderLaw point;
  point.a = 0.7;
  point.b = 0.7;
  CHECK(disorder_value(point, 3) == 0.7);
  DisorderLaw frozen;
  frozen.kind = DisorderLaw::Kind::Gaussian;
  frozen.a = -0.25;  // mean
  frozen.b = 0.0;    // stddev
  CHECK(disorder_value(frozen, -11) == -0.25);
}

TEST_CASE("gaussian disorder moments") {
  DisorderLaw law;
  law.kind = DisorderLaw::Kind::Gaussian;
  law.a = 0.5;
  law.b = 2.0;
  law.seed = 2024;
  double mean = 0.0, var = 0.0;
  const int N = 20001;
  for (int n = -10000; n <= 10000; ++n) mean += disorder_value(law, n);
  mean /= N;
  for (int n = -10000; n <= 10000; ++n) {
    const double d = disorder_value(law, n) - mean;
    var += d * d;
  }
  var /= N - 1;
  CHECK(std::abs(mean - 0.5) < 4.0 * 2.0 / std::sqrt(double(N)));
  CHECK(std::abs(std::sqrt(var) - 2.0) < 0.1);
}

TEST_CASE("re-keyed disorder reproduces shifted sites bit-exactly") {
  DisorderLaw law;
  law.seed = 5150;
  for (const std::int64_t x : {-7, -1, 0, 3, 12}) {
    const DisorderLaw shifted = shift_law(law, x);
    for (std::int64_t n = -30; n <= 30; ++n)
      CHECK(disorder_value(shifted, n) == disorder_value(law, n - x));
  }
}

TEST_CASE("disorder law validation") {
  DisorderLaw bad;
  bad.a = 1.0;
  bad.b = -1.0;
  CHECK_THROWS_AS(disorder_value(bad, 0), std::invalid_argument);
  DisorderLaw badg;
  badg.kind = DisorderLaw::Kind::Gaussian;
  badg.b = -0.5;
  CHECK_THROWS_AS(disorder_value(badg, 0), std::invalid_argument);
}

TEST_CASE("effective coupling matches the wide-window oracle") {
  ReducedChain m;
  m.theta = 1.0 / std::sqrt(2.0);  // 1-theta ~ 0.2929
  m.b = 0.2;
  m.hopping = {1.0, 2.0, 1.0};
  const double tol = 1e-12;
  for (const auto& [n, n2] : std::vector<std::pair<std::int64_t, std::int64_t>>{
           {0, 0}, {3, -2}, {10, 10}, {-7, 4}, {1, 0}}) {
    CHECK(std::abs(reduced_coupling(m, n, n2, tol) - brute_coupling(m, n, n2)) <= tol);
  }
}

TEST_CASE("effective coupling matches the oracle at default twist") {
  ReducedChain m;  // theta = 1 - 1/sqrt(2)
  m.b = 0.3;
  for (std::int64_t n = -6; n <= 6; n += 3)
    for (std::int64_t n2 = -6; n2 <= 6; n2 += 2)
      CHECK(std::abs(reduced_coupling(m, n, n2, 1e-12) - brute_coupling(m, n, n2)) <= 1e-12);
}

TEST_CASE("effective coupling is bit-exactly symmetric") {
  ReducedChain m;
  m.b = 0.37;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> site(-40, 40);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t n = site(rng), n2 = site(rng);
    CHECK(reduced_coupling(m, n, n2, 1e-12) == reduced_coupling(m, n2, n, 1e-12));
  }
}

TEST_CASE("effective coupling is periodic in the shift") {
  ReducedChain m;
  const double p = 1.0 - m.theta;
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::int64_t> site(-15, 15);
  std::uniform_real_distribution<double> shift(0.0, p);
  for (int i = 0; i < 25; ++i) {
    ReducedChain a = m, b = m;
    a.b = shift(rng);
    b.b = a.b + p;
    const std::int64_t n = site(rng), n2 = site(rng);
    CHECK(std::abs(reduced_coupling(a, n, n2, 1e-12) - reduced_coupling(b, n, n2, 1e-12)) <=
          2e-12);
  }
}

TEST_CASE("effective coupling edge cases") {
  ReducedChain off;
  off.hopping.amplitude = 0.0;
  CHECK(reduced_coupling(off, 0, 5, 1e-12) == 0.0);
  ReducedChain m;
  CHECK_THROWS_AS(reduced_coupling(m, 0, 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(reduced_coupling(m, 0, 0, -1e-9), std::invalid_argument);
  // far-separated pairs decay to exact zeros well below any useful tolerance
  CHECK(reduced_coupling(m, -400, 400, 1e-12) == 0.0);
}

TEST_CASE("effective coupling obeys its decay envelope") {
  ReducedChain m;
  m.b = 0.1;
  for (std::int64_t d = 0; d <= 30; ++d)
    CHECK(reduced_coupling(m, 0, d, 1e-12) <=
          coupling_envelope(m, static_cast<double>(d)) + 1e-12);
}

TEST_CASE("matrix elements: almost-Mathieu") {
  const OperatorModel model = AlmostMathieu{0.25, 1.5, 0.2};
  CHECK(matrix_element(model, {1, 4}, {1, 4}, 1e-12) == potential_am(0.25, 1.5, 0.2, 4));
  CHECK(matrix_element(model, {1, 4}, {1, 5}, 1e-12) == -1.0);
  CHECK(matrix_element(model, {1, 5}, {1, 4}, 1e-12) == -1.0);
  CHECK(matrix_element(model, {1, 4}, {1, 6}, 1e-12) == 0.0);
  CHECK_THROWS_AS(matrix_element(model, {2, 0}, {1, 0}, 1e-12), std::invalid_argument);
}

TEST_CASE("matrix elements: Anderson") {
  Anderson a;
  a.law.seed = 77;
  const OperatorModel model = a;
  CHECK(matrix_element(model, {1, -3}, {1, -3}, 1e-12) == disorder_value(a.law, -3));
  CHECK(matrix_element(model, {1, 0}, {1, 1}, 1e-12) == -1.0);
  CHECK(matrix_element(model, {1, 0}, {1, 2}, 1e-12) == 0.0);
}

TEST_CASE("matrix elements: coupled chain") {
  CoupledChain m;  // defaults: theta = 1 - 1/sqrt(2), b = 0.3, A=1, B=2, Lz=1
  m.b = 0.0;
  const OperatorModel aligned = m;
  // aligned origins sit at distance Lz: h(0) = A exp(-B Lz)
  CHECK(matrix_element(aligned, {1, 0}, {2, 0}, 1e-12) ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(matrix_element(aligned, {1, 0}, {1, 1}, 1e-12) == 1.0);
  CHECK(matrix_element(aligned, {2, 3}, {2, 2}, 1e-12) == 1.0);
  CHECK(matrix_element(aligned, {1, 0}, {1, 0}, 1e-12) == 0.0);
  CHECK(matrix_element(aligned, {2, 5}, {2, 5}, 1e-12) == 0.0);
  CHECK(matrix_element(aligned, {1, 0}, {1, 2}, 1e-12) == 0.0);

  CoupledChain shifted;
  shifted.b = 0.3;
  // layer-1 site 2 vs layer-2 site 1: eta = 2 - (1-theta) - 0.3
  CHECK(matrix_element(OperatorModel(shifted), {1, 2}, {2, 1}, 1e-12) ==
        doctest::Approx(0.059701714600728929).epsilon(1e-14));
  CHECK_THROWS_AS(matrix_element(OperatorModel(shifted), {3, 0}, {1, 0}, 1e-12),
                  std::invalid_argument);
}

TEST_CASE("matrix elements: reduced chain adds +1 on nearest neighbors") {
  ReducedChain m;
  const OperatorModel model = m;
  const double c01 = reduced_coupling(m, 0, 1, 1e-12);
  CHECK(matrix_element(model, {1, 0}, {1, 1}, 1e-12) == doctest::Approx(1.0 + c01).epsilon(1e-15));
  CHECK(matrix_element(model, {1, 0}, {1, 0}, 1e-12) == reduced_coupling(m, 0, 0, 1e-12));
  CHECK(matrix_element(model, {1, 0}, {1, 7}, 1e-12) == reduced_coupling(m, 0, 7, 1e-12));
  CHECK_THROWS_AS(matrix_element(model, {1, 0}, {2, 0}, 1e-12), std::invalid_argument);
}

TEST_CASE("matrix elements are exactly symmetric") {
  CoupledChain cm;
  const OperatorModel coupled = cm;
  ReducedChain rm;
  const OperatorModel reduced = rm;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> site(-20, 20);
  std::uniform_int_distribution<int> layer(1, 2);
  for (int t = 0; t < 300; ++t) {
    const SiteIndex i{layer(rng), site(rng)};
    const SiteIndex j{layer(rng), site(rng)};
    CHECK(matrix_element(coupled, i, j, 1e-12) == matrix_element(coupled, j, i, 1e-12));
    const SiteIndex i1{1, i.n}, j1{1, j.n};
    CHECK(matrix_element(reduced, i1, j1, 1e-12) == matrix_element(reduced, j1, i1, 1e-12));
  }
}

TEST_CASE("interlayer elements obey the distance bound") {
  CoupledChain m;
  const OperatorModel model = m;
  for (std::int64_t n1 = -10; n1 <= 10; n1 += 2) {
    for (std::int64_t n2 = -12; n2 <= 12; n2 += 3) {
      const double d = std::abs(site_position(model, {1, n1}) - site_position(model, {2, n2}));
      CHECK(std::abs(matrix_element(model, {1, n1}, {2, n2}, 1e-12)) <=
            m.hopping.amplitude *
                std::exp(-m.hopping.decay * (d - m.hopping.distance)) + 1e-15);
    }
  }
}

TEST_CASE("site positions") {
  CoupledChain m;
  m.b = 0.3;
  const OperatorModel model = m;
  CHECK(site_position(model, {1, 5}) == 5.0);
  CHECK(site_position(model, {2, 0}) == 0.3);
  CHECK(site_position(model, {2, 2}) ==
        doctest::Approx(2.0 * (1.0 - m.theta) + 0.3).epsilon(1e-15));
  const OperatorModel am = AlmostMathieu{};
  CHECK(site_position(am, {1, -4}) == -4.0);
  CHECK_THROWS_AS(site_position(am, {2, 0}), std::invalid_argument);
}

TEST_CASE("model validation reports bad fields") {
  CHECK_THROWS_AS(validate(OperatorModel(CoupledChain{0.0, 0.3, {}})), std::invalid_argument);
  CHECK_THROWS_AS(validate(OperatorModel(ReducedChain{1.0, 0.3, {}})), std::invalid_argument);
  CoupledChain bad_hop;
  bad_hop.hopping.decay = -2.0;
  CHECK_THROWS_AS(validate(OperatorModel(bad_hop)), std::invalid_argument);
  CHECK_NOTHROW(validate(OperatorModel(AlmostMathieu{})));
}
