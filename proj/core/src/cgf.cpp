#include "markovflb/cgf.hpp"

#include <algorithm>
#include <cmath>

#include "markovflb/numeric.hpp"

namespace markovflb {

std::vector<double> tilted_log_entries(const CgfSpec& spec, double rho) {
  const std::size_t n = spec.transition.size();
  std::vector<double> logs(n * n, kNegInf);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double w = spec.transition.at(i, j);
      if (w <= 0.0) continue;  // zero entries are never tilted
      double g = spec.generator.at(i, j);
      if (!std::isfinite(g)) {
        throw DomainError("CgfSpec: generator not finite on the support of W");
      }
      logs[i * n + j] = std::log(w) + rho * g;
    }
  }
  return logs;
}

double cgf(const CgfSpec& spec, double rho) {
  if (rho == 0.0) return 0.0;  // lambda_0 = 1 for a stochastic matrix
  auto logs = tilted_log_entries(spec, rho);
  return log_perron_frobenius(spec.transition.size(), logs).log_value;
}

CgfDerivatives cgf_derivatives(const CgfSpec& spec, double rho) {
  auto f = [&](double r) { return cgf(spec, r); };
  CgfDerivatives d;
  d.first = central_derivative(f, rho);
  d.second = central_second_derivative(f, rho);
  if (d.second < -1e-9) {
    throw StepUnderflow("cgf_derivatives: second derivative violates convexity");
  }
  if (d.second < 0.0) d.second = 0.0;
  return d;
}

std::pair<double, double> cgf_finite_bounds(const CgfSpec& spec, double rho, int n) {
  if (n < 1) throw DomainError("cgf_finite_bounds: n must be >= 1");
  if (spec.initial.size() != spec.transition.size()) {
    throw DomainError("cgf_finite_bounds: initial distribution not set");
  }
  const std::size_t sz = spec.transition.size();
  auto logs = tilted_log_entries(spec, rho);
  LogEigenPair ep = log_perron_frobenius(sz, logs);
  double phi = rho == 0.0 ? 0.0 : ep.log_value;

  // v: left eigenvector with min entry 1.
  std::vector<double> v = ep.left;
  double mn = *std::min_element(v.begin(), v.end());
  for (double& x : v) x /= mn;

  double inner = 0.0;
  for (std::size_t z = 0; z < sz; ++z) {
    double gt = spec.initial_generator.empty() ? 0.0 : spec.initial_generator[z];
    double w = spec.initial[z] == 0.0 ? 0.0 : spec.initial[z] * std::exp(rho * gt);
    inner += v[z] * w;
  }
  double log_inner = std::log(inner);
  double log_max_v = std::log(*std::max_element(v.begin(), v.end()));
  double upper = log_inner;
  double lower = log_inner - log_max_v;
  return {(n - 1) * phi + lower, (n - 1) * phi + upper};
}

}  // namespace markovflb
