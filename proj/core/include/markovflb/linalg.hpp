#pragma once

#include <cstddef>
#include <vector>

#include "markovflb/errors.hpp"

namespace markovflb {

// Probability vector over a finite alphabet; entries >= 0, sum 1 within 1e-12.
class ProbVector {
 public:
  ProbVector() = default;
  explicit ProbVector(std::vector<double> entries);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& entries() const { return p_; }

 private:
  std::vector<double> p_;
};

// Dense square matrix indexed (destination, source): entry(z, z') = M(z | z').
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& at(std::size_t dest, std::size_t src) { return a_[dest * n_ + src]; }
  double at(std::size_t dest, std::size_t src) const { return a_[dest * n_ + src]; }
  const std::vector<double>& data() const { return a_; }

  Matrix transpose() const;
  double max_entry() const;

  // Strong connectivity of the support graph (edge src -> dest iff entry > 0).
  bool irreducible() const;

  // gcd of cycle lengths equals 1 (assumes irreducible).
  bool aperiodic() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

// Column-stochastic matrix: every column sums to 1 within 1e-12, entries >= 0.
class StochasticMatrix {
 public:
  StochasticMatrix() = default;
  explicit StochasticMatrix(Matrix m);

  std::size_t size() const { return m_.size(); }
  double at(std::size_t dest, std::size_t src) const { return m_.at(dest, src); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

// Nonnegative square matrix (tilted matrices); validated on construction.
class NonnegMatrix {
 public:
  NonnegMatrix() = default;
  explicit NonnegMatrix(Matrix m);

  std::size_t size() const { return m_.size(); }
  double at(std::size_t dest, std::size_t src) const { return m_.at(dest, src); }
  const Matrix& matrix() const { return m_; }
  bool irreducible() const { return m_.irreducible(); }

 private:
  Matrix m_;
};

// Transition matrix W(x,y | x',y') on a product alphabet X x Y.
// Pair states are flattened as z = x * |Y| + y. Irreducible and aperiodic
// as a chain on X x Y, checked at construction.
class PairTransitionMatrix {
 public:
  PairTransitionMatrix() = default;
  PairTransitionMatrix(std::size_t nx, std::size_t ny, Matrix m);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t states() const { return m_.size(); }
  std::size_t state(std::size_t x, std::size_t y) const { return x * ny_ + y; }
  std::size_t x_of(std::size_t z) const { return z / ny_; }
  std::size_t y_of(std::size_t z) const { return z % ny_; }

  double at(std::size_t x, std::size_t y, std::size_t xp, std::size_t yp) const {
    return m_.at(state(x, y), state(xp, yp));
  }
  const Matrix& matrix() const { return m_; }

 private:
  std::size_t nx_ = 0, ny_ = 0;
  Matrix m_;
};

struct EigenPair {
  double value = 0.0;             // Perron-Frobenius eigenvalue
  std::vector<double> right;      // M r = lambda r, normalized min entry = 1
  std::vector<double> left;       // M^T l = lambda l, normalized to sum 1
};

// Dominant eigenpair of an irreducible nonnegative matrix by power iteration
// on M + cI (c = 0.5 * max entry) so periodic supports converge too.
EigenPair perron_frobenius(const Matrix& m);
inline EigenPair perron_frobenius(const NonnegMatrix& m) { return perron_frobenius(m.matrix()); }

// Same computation carried out on log-scale entries (-inf marks zero).
// Returns log(lambda); eigenvectors are on the linear scale.
struct LogEigenPair {
  double log_value = 0.0;
  std::vector<double> right;
  std::vector<double> left;
};
LogEigenPair log_perron_frobenius(std::size_t n, const std::vector<double>& log_entries);

// Eigenvalue only; tolerates extreme tilts whose eigenvectors underflow.
double log_perron_value(std::size_t n, const std::vector<double>& log_entries);

// Invariant law pi with W pi = pi, entries > 0, sum 1.
ProbVector stationary_distribution(const StochasticMatrix& w);

}  // namespace markovflb
