#include <doctest.h>

#include <cmath>
#include <vector>

#include "markovflb/cgf.hpp"
#include "markovflb/conversion.hpp"
#include "markovflb/simulate.hpp"
#include "test_util.hpp"

using namespace markovflb;
using testutil::matrix2;

namespace {

// Independent oracle: the n-step CGF by direct prefix accumulation
//   phi_n(rho) = log sum_{z^n} P(z^n) e^{rho S_n},
// evaluated with matrix-free vector recursions and rescaling. No eigenvalues.
double brute_phi_n(const CgfSpec& spec, double rho, int n) {
  const std::size_t s = spec.transition.size();
  std::vector<double> w(s);
  double log_scale = 0.0;
  for (std::size_t z = 0; z < s; ++z) {
    double gt = spec.initial_generator.empty() ? 0.0 : spec.initial_generator[z];
    w[z] = spec.initial[z] * std::exp(rho * gt);
  }
  for (int step = 2; step <= n; ++step) {
    std::vector<double> next(s, 0.0);
    for (std::size_t z = 0; z < s; ++z)
      for (std::size_t zp = 0; zp < s; ++zp) {
        double t = spec.transition.at(z, zp);
        if (t > 0.0) next[z] += t * std::exp(rho * spec.generator.at(z, zp)) * w[zp];
      }
    double mx = 0.0;
    for (double v : next) mx = std::max(mx, v);
    for (double& v : next) v /= mx;
    log_scale += std::log(mx);
    w = std::move(next);
  }
  double tot = 0.0;
  for (double v : w) tot += v;
  return std::log(tot) + log_scale;
}

CgfSpec fair_coin_spec() {
  // i.i.d. chain W(z|z') = P(z) with g(z, z') = z.
  Matrix w = matrix2(0.5, 0.5, 0.5, 0.5);
  Matrix g(2);
  g.at(1, 0) = g.at(1, 1) = 1.0;
  std::vector<double> gt = {0.0, 1.0};
  return CgfSpec{StochasticMatrix(w), g, gt, ProbVector({0.5, 0.5})};
}

// Gilbert-Elliott pair chain with the conditional self-information generator.
CgfSpec ge_spec() {
  MarkovSource src = make_gilbert_elliott(0.1, 0.1, 0.1, 0.4);
  return src.lower_cgf();
}

}  // namespace

TEST_CASE("cgf vanishes at rho = 0") {
  CounterRng rng(7, 0);
  for (int rep = 0; rep < 5; ++rep) {
    double a = testutil::uniform_in(rng, 0.1, 0.9);
    double b = testutil::uniform_in(rng, 0.1, 0.9);
    Matrix w = matrix2(a, b, 1 - a, 1 - b);
    Matrix g(2);
    for (int i = 0; i < 4; ++i) g.at(i / 2, i % 2) = testutil::uniform_in(rng, -2, 2);
    CgfSpec spec{StochasticMatrix(w), g, {}, ProbVector({0.5, 0.5})};
    CHECK(cgf(spec, 0.0) == 0.0);
  }
}

TEST_CASE("iid fair coin reduces to the single-shot CGF") {
  CgfSpec spec = fair_coin_spec();
  for (double rho : {-1.0, -0.3, 0.2, 0.9, 2.0}) {
    CHECK(cgf(spec, rho) ==
          doctest::Approx(std::log((1 + std::exp(rho)) / 2)).epsilon(1e-12));
  }
}

TEST_CASE("fair coin derivatives at zero are the Bernoulli mean and variance") {
  CgfSpec spec = fair_coin_spec();
  CgfDerivatives d = cgf_derivatives(spec, 0.0);
  CHECK(d.first == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(d.second == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("constant generator gives a deterministic sum") {
  const double c = 0.73;
  Matrix w = matrix2(0.6, 0.2, 0.4, 0.8);
  Matrix g(2, c);
  CgfSpec spec{StochasticMatrix(w), g, {}, ProbVector({0.3, 0.7})};
  for (double rho : {-0.8, 0.0, 1.1}) {
    CgfDerivatives d = cgf_derivatives(spec, rho);
    CHECK(d.first == doctest::Approx(c).epsilon(1e-7));
    CHECK(d.second == doctest::Approx(0.0).epsilon(1e-6));
  }
}

TEST_CASE("noise chain rate matches the n-step oracle by extrapolation") {
  CgfSpec spec = ge_spec();
  for (double rho : {-0.5, -0.3}) {
    double direct = cgf(spec, rho);
    // phi_n - phi_{n-1} -> phi geometrically; Aitken acceleration at n = 12.
    double e10 = brute_phi_n(spec, rho, 10) - brute_phi_n(spec, rho, 9);
    double e11 = brute_phi_n(spec, rho, 11) - brute_phi_n(spec, rho, 10);
    double e12 = brute_phi_n(spec, rho, 12) - brute_phi_n(spec, rho, 11);
    double denom = (e12 - e11) - (e11 - e10);
    double accel = std::abs(denom) > 1e-14 ? e12 - (e12 - e11) * (e12 - e11) / denom : e12;
    CHECK(direct == doctest::Approx(accel).epsilon(1e-7));
  }
}

TEST_CASE("finite bounds collapse for the iid chain") {
  CgfSpec spec = fair_coin_spec();
  for (double rho : {-0.7, 0.4}) {
    auto [lo, hi] = cgf_finite_bounds(spec, rho, 6);
    double exact = 6 * std::log((1 + std::exp(rho)) / 2);
    CHECK(lo == doctest::Approx(exact).epsilon(1e-10));
    CHECK(hi == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("n = 1 bounds contain the single-letter sum") {
  CgfSpec spec = ge_spec();
  for (double rho : {-0.4, 0.6}) {
    auto [lo, hi] = cgf_finite_bounds(spec, rho, 1);
    double exact = brute_phi_n(spec, rho, 1);
    CHECK(lo <= exact + 1e-12);
    CHECK(exact <= hi + 1e-12);
  }
}

TEST_CASE("noise chain bounds contain phi_8") {
  CgfSpec spec = ge_spec();
  auto [lo, hi] = cgf_finite_bounds(spec, -0.3, 8);
  double exact = brute_phi_n(spec, -0.3, 8);
  CHECK(lo <= exact + 1e-12);
  CHECK(exact <= hi + 1e-12);
}

TEST_CASE("property: sandwich holds for random chains up to n = 8") {
  CounterRng rng(99, 0);
  for (int rep = 0; rep < 20; ++rep) {
    double a = testutil::uniform_in(rng, 0.1, 0.9);
    double b = testutil::uniform_in(rng, 0.1, 0.9);
    Matrix w = matrix2(a, b, 1 - a, 1 - b);
    Matrix g(2);
    for (int i = 0; i < 4; ++i) g.at(i / 2, i % 2) = testutil::uniform_in(rng, -1.5, 1.5);
    double i0 = testutil::uniform_in(rng, 0.1, 0.9);
    std::vector<double> gt = {testutil::uniform_in(rng, -1, 1), testutil::uniform_in(rng, -1, 1)};
    CgfSpec spec{StochasticMatrix(w), g, gt, ProbVector({i0, 1 - i0})};
    for (double rho : {-0.9, -0.2, 0.5, 1.3}) {
      for (int n = 1; n <= 8; ++n) {
        auto [lo, hi] = cgf_finite_bounds(spec, rho, n);
        double exact = brute_phi_n(spec, rho, n);
        CHECK(lo <= exact + 1e-9);
        CHECK(exact <= hi + 1e-9);
      }
    }
  }
}

TEST_CASE("property: cgf is convex and its derivative nondecreasing") {
  CgfSpec spec = ge_spec();
  CounterRng rng(5, 0);
  for (int rep = 0; rep < 20; ++rep) {
    double r1 = testutil::uniform_in(rng, -1.2, 1.2);
    double r2 = testutil::uniform_in(rng, -1.2, 1.2);
    if (r1 > r2) std::swap(r1, r2);
    double t = testutil::uniform_in(rng, 0.05, 0.95);
    double mid = t * r1 + (1 - t) * r2;
    CHECK(cgf(spec, mid) <= t * cgf(spec, r1) + (1 - t) * cgf(spec, r2) + 1e-9);
  }
  double prev = -std::numeric_limits<double>::infinity();
  for (double rho = -1.0; rho <= 1.0; rho += 0.2) {
    double d = cgf_derivatives(spec, rho).first;
    CHECK(d >= prev - 1e-7);
    prev = d;
  }
}

TEST_CASE("varentropy rate matches a Monte Carlo estimate") {
  MarkovSource src = make_gilbert_elliott(0.1, 0.1, 0.1, 0.4);
  CgfDerivatives d = cgf_derivatives(src.lower_cgf(), 0.0);
  VarentropyEstimate est = empirical_varentropy_stats(src, 500, 20000, 11);
  CHECK(std::abs(est.value - d.second) <= 3 * est.stderr_ + 5e-4);
}
