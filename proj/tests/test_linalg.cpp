#include <doctest.h>

#include <cmath>

#include "markovflb/linalg.hpp"
#include "markovflb/simulate.hpp"
#include "test_util.hpp"

using namespace markovflb;
using testutil::matrix2;

TEST_CASE("stationary distribution of the symmetric flip chain is uniform") {
  StochasticMatrix w(matrix2(0.9, 0.1, 0.1, 0.9));
  ProbVector pi = stationary_distribution(w);
  CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("two closed classes are rejected") {
  StochasticMatrix w(matrix2(1.0, 0.0, 0.0, 1.0));
  CHECK_THROWS_AS(stationary_distribution(w), NotIrreducible);
}

TEST_CASE("stationary distribution solves the 2x2 linear system") {
  // Columns are source-indexed: from state 0 stay w.p. 0.7, from 1 enter w.p. 0.4.
  StochasticMatrix w(matrix2(0.7, 0.4, 0.3, 0.6));
  ProbVector pi = stationary_distribution(w);
  CHECK(pi[0] == doctest::Approx(4.0 / 7.0).epsilon(1e-10));
  CHECK(pi[1] == doctest::Approx(3.0 / 7.0).epsilon(1e-10));
}

TEST_CASE("dominant eigenpair of a symmetric circulant") {
  EigenPair e = perron_frobenius(matrix2(2, 1, 1, 2));
  CHECK(e.value == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(e.right[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(e.right[1] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("permutation matrix needs the diagonal shift") {
  EigenPair e = perron_frobenius(matrix2(0, 1, 1, 0));
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(e.right[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(e.right[1] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("rank-one matrix has the column sum as eigenvalue") {
  const double c = 1.7;
  Matrix m(2);
  for (int j = 0; j < 2; ++j) {
    m.at(0, j) = 0.3 * c;
    m.at(1, j) = 0.7 * c;
  }
  EigenPair e = perron_frobenius(m);
  CHECK(e.value == doctest::Approx(c).epsilon(1e-10));
  CHECK(e.right[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(e.right[1] == doctest::Approx(0.7 / 0.3).epsilon(1e-8));
}

TEST_CASE("property: stochastic matrices have eigenvalue 1 and stationary eigenvector") {
  CounterRng rng(20240811, 0);
  for (int rep = 0; rep < 25; ++rep) {
    std::size_t n = 2 + rep % 3;
    Matrix m(n);
    for (std::size_t j = 0; j < n; ++j) {
      double tot = 0.0;
      std::vector<double> col(n);
      for (auto& v : col) {
        v = testutil::uniform_in(rng, 0.05, 1.0);
        tot += v;
      }
      for (std::size_t i = 0; i < n; ++i) m.at(i, j) = col[i] / tot;
    }
    EigenPair e = perron_frobenius(m);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-10));
    ProbVector pi = stationary_distribution(StochasticMatrix(m));
    // The Perron eigenvector (min entry 1) is proportional to pi, and the
    // left eigenvector of a column-stochastic matrix is uniform.
    double scale = e.right[0] / pi[0];
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(e.right[i] == doctest::Approx(scale * pi[i]).epsilon(1e-8));
      CHECK(e.left[i] == doctest::Approx(1.0 / static_cast<double>(n)).epsilon(1e-8));
    }
  }
}

TEST_CASE("log-scale eigenvalue matches the linear scale") {
  Matrix m = matrix2(0.2, 1.4, 0.8, 0.6);
  EigenPair e = perron_frobenius(m);
  std::vector<double> logs(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) logs[i * 2 + j] = std::log(m.at(i, j));
  CHECK(log_perron_value(2, logs) == doctest::Approx(std::log(e.value)).epsilon(1e-12));
}

TEST_CASE("pair transition matrix validates structure") {
  Matrix bad(4, 0.25);
  bad.at(0, 0) = 0.5;  // breaks the column sum
  CHECK_THROWS_AS(PairTransitionMatrix(2, 2, bad), DomainError);
  Matrix per(4);
  // Period-2 walk on pair states.
  per.at(1, 0) = 1.0;
  per.at(0, 1) = 1.0;
  per.at(3, 2) = 1.0;
  per.at(2, 3) = 1.0;
  CHECK_THROWS_AS(PairTransitionMatrix(2, 2, per), NotIrreducible);
}
