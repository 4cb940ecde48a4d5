#include "markovflb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "markovflb/numeric.hpp"

namespace markovflb {

namespace {

constexpr double kSumTol = 1e-12;

void check_nonneg(const Matrix& m, const char* what) {
  for (double v : m.data()) {
    if (!(v >= 0.0)) throw DomainError(std::string(what) + ": negative or NaN entry");
  }
}

}  // namespace

ProbVector::ProbVector(std::vector<double> entries) : p_(std::move(entries)) {
  double sum = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0)) throw DomainError("ProbVector: negative or NaN entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTol * std::max<double>(1, p_.size())) {
    throw DomainError("ProbVector: entries sum to " + std::to_string(sum) + ", not 1");
  }
}

Matrix Matrix::transpose() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
  return t;
}

double Matrix::max_entry() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, v);
  return m;
}

bool Matrix::irreducible() const {
  if (n_ == 0) return false;
  if (n_ == 1) return a_[0] > 0.0;
  // Strong connectivity: every node reachable from 0 and 0 reachable from all,
  // on the directed support graph src -> dest.
  auto reach = [&](bool forward) {
    std::vector<char> seen(n_, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n_; ++v) {
        double e = forward ? at(v, u) : at(u, v);
        if (e > 0.0 && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  };
  return reach(true) && reach(false);
}

bool Matrix::aperiodic() const {
  if (n_ == 0) return false;
  // BFS levels from node 0; the gcd of dist[u] + 1 - dist[v] over support
  // edges u -> v is the period.
  std::vector<long> dist(n_, -1);
  std::vector<std::size_t> queue{0};
  dist[0] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t u = queue[qi];
    for (std::size_t v = 0; v < n_; ++v) {
      if (at(v, u) > 0.0 && dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  long g = 0;
  for (std::size_t u = 0; u < n_; ++u) {
    if (dist[u] < 0) continue;
    for (std::size_t v = 0; v < n_; ++v) {
      if (at(v, u) > 0.0 && dist[v] >= 0) g = std::gcd(g, dist[u] + 1 - dist[v]);
    }
  }
  return std::abs(g) == 1;
}

StochasticMatrix::StochasticMatrix(Matrix m) : m_(std::move(m)) {
  check_nonneg(m_, "StochasticMatrix");
  for (std::size_t src = 0; src < m_.size(); ++src) {
    double col = 0.0;
    for (std::size_t dest = 0; dest < m_.size(); ++dest) col += m_.at(dest, src);
    if (std::abs(col - 1.0) > kSumTol * std::max<std::size_t>(1, m_.size())) {
      throw DomainError("StochasticMatrix: column " + std::to_string(src) +
                        " sums to " + std::to_string(col));
    }
  }
}

NonnegMatrix::NonnegMatrix(Matrix m) : m_(std::move(m)) {
  check_nonneg(m_, "NonnegMatrix");
}

PairTransitionMatrix::PairTransitionMatrix(std::size_t nx, std::size_t ny, Matrix m)
    : nx_(nx), ny_(ny), m_(std::move(m)) {
  if (m_.size() != nx * ny) throw DomainError("PairTransitionMatrix: size mismatch");
  check_nonneg(m_, "PairTransitionMatrix");
  for (std::size_t src = 0; src < m_.size(); ++src) {
    double col = 0.0;
    for (std::size_t dest = 0; dest < m_.size(); ++dest) col += m_.at(dest, src);
    if (std::abs(col - 1.0) > kSumTol * std::max<std::size_t>(1, m_.size())) {
      throw DomainError("PairTransitionMatrix: column " + std::to_string(src) +
                        " sums to " + std::to_string(col));
    }
  }
  if (!m_.irreducible()) {
    throw NotIrreducible("PairTransitionMatrix: chain on X x Y is not irreducible");
  }
  if (!m_.aperiodic()) {
    throw NotIrreducible("PairTransitionMatrix: chain on X x Y is periodic");
  }
}

namespace {

// Power iteration on M + cI starting from the uniform vector. On return the
// iterate is normalized to sum 1. When check_residual is set, iteration
// continues past eigenvalue stability until
//   ||M r - lambda r||_inf / lambda <= 1e-10
// holds for the min-normalized iterate.
double power_iterate(const Matrix& m, double shift, std::vector<double>* vec,
                     bool check_residual) {
  const std::size_t n = m.size();
  std::vector<double>& v = *vec;
  v.assign(n, 1.0 / static_cast<double>(n));
  std::vector<double> w(n);
  double lambda = 0.0;
  int stable = 0;
  const int max_iter = 100000;
  for (int it = 0; it < max_iter; ++it) {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = shift * v[i];
      for (std::size_t j = 0; j < n; ++j) acc += m.at(i, j) * v[j];
      w[i] = acc;
      norm += acc;
    }
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw NoConvergence("power iteration: iterate collapsed");
    }
    double next = norm;  // sum norm of (M + cI) v with sum(v) == 1
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    double rel = std::abs(next - lambda) / std::max(next, 1e-300);
    lambda = next;
    if (rel < 1e-13) {
      if (++stable < 3) continue;
      double value = lambda - shift;
      if (!check_residual) return value;
      double resid = 0.0;
      double mn = *std::min_element(v.begin(), v.end());
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += m.at(i, j) * v[j];
        resid = std::max(resid, std::abs(acc - value * v[i]));
      }
      if (mn > 0.0 && resid <= 1e-10 * value * mn) return value;
      stable = 0;  // keep polishing
    } else {
      stable = 0;
    }
  }
  throw NoConvergence("power iteration: budget exhausted");
}

Matrix from_log_scaled(std::size_t n, const std::vector<double>& log_entries, double* scale) {
  double mx = kNegInf;
  for (double v : log_entries) mx = std::max(mx, v);
  if (mx == kNegInf) throw NotIrreducible("log matrix: all entries zero");
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double le = log_entries[i * n + j];
      m.at(i, j) = le == kNegInf ? 0.0 : std::exp(le - mx);
    }
  *scale = mx;
  return m;
}

bool log_support_irreducible(std::size_t n, const std::vector<double>& log_entries) {
  Matrix s(n);
  for (std::size_t i = 0; i < n * n; ++i) {
    if (log_entries[i] != kNegInf) s.at(i / n, i % n) = 1.0;
  }
  return s.irreducible();
}

}  // namespace

EigenPair perron_frobenius(const Matrix& m) {
  if (m.size() == 0) throw DomainError("perron_frobenius: empty matrix");
  if (!m.irreducible()) throw NotIrreducible("perron_frobenius: support graph not strongly connected");

  const std::size_t n = m.size();
  EigenPair out;
  if (n == 1) {
    out.value = m.at(0, 0);
    out.right = {1.0};
    out.left = {1.0};
    return out;
  }
  const double shift = 0.5 * m.max_entry();
  out.value = power_iterate(m, shift, &out.right, /*check_residual=*/true);
  Matrix mt = m.transpose();
  power_iterate(mt, shift, &out.left, /*check_residual=*/true);

  double mn = *std::min_element(out.right.begin(), out.right.end());
  if (!(mn > 0.0)) throw NoConvergence("perron_frobenius: right eigenvector not strictly positive");
  for (double& v : out.right) v /= mn;
  double ls = std::accumulate(out.left.begin(), out.left.end(), 0.0);
  for (double& v : out.left) v /= ls;
  return out;
}

double log_perron_value(std::size_t n, const std::vector<double>& log_entries) {
  if (log_entries.size() != n * n) throw DomainError("log_perron_value: size mismatch");
  if (!log_support_irreducible(n, log_entries)) {
    throw NotIrreducible("log_perron_value: support graph not strongly connected");
  }
  double scale = 0.0;
  Matrix m = from_log_scaled(n, log_entries, &scale);
  if (n == 1) return std::log(m.at(0, 0)) + scale;
  std::vector<double> v;
  double value = power_iterate(m, 0.5 * m.max_entry(), &v, /*check_residual=*/false);
  return std::log(value) + scale;
}

LogEigenPair log_perron_frobenius(std::size_t n, const std::vector<double>& log_entries) {
  if (log_entries.size() != n * n) throw DomainError("log_perron_frobenius: size mismatch");
  if (!log_support_irreducible(n, log_entries)) {
    throw NotIrreducible("log_perron_frobenius: support graph not strongly connected");
  }
  double scale = 0.0;
  Matrix m = from_log_scaled(n, log_entries, &scale);
  EigenPair ep = perron_frobenius(m);
  return LogEigenPair{std::log(ep.value) + scale, std::move(ep.right), std::move(ep.left)};
}

ProbVector stationary_distribution(const StochasticMatrix& w) {
  if (!w.matrix().irreducible()) {
    throw NotIrreducible("stationary_distribution: chain not irreducible");
  }
  EigenPair ep = perron_frobenius(w.matrix());
  double sum = std::accumulate(ep.right.begin(), ep.right.end(), 0.0);
  std::vector<double> pi(ep.right.size());
  for (std::size_t i = 0; i < pi.size(); ++i) pi[i] = ep.right[i] / sum;
  return ProbVector(pi);
}

}  // namespace markovflb
