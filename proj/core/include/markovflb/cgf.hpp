#pragma once

#include <utility>
#include <vector>

#include "markovflb/linalg.hpp"

namespace markovflb {

// Cumulant generating function of the additive functional
//   S_n = g~(Z_1) + sum_{i>=2} g(Z_i, Z_{i-1})
// of the chain with transition matrix W. The per-step rate is
// phi(rho) = log of the Perron-Frobenius eigenvalue of W(z|z') e^{rho g(z,z')}.
//
// g must be finite wherever W > 0; pairs with W = 0 never enter the tilt.
struct CgfSpec {
  StochasticMatrix transition;
  Matrix generator;                        // g(dest, src); may be +-inf off support
  std::vector<double> initial_generator;   // g~(z); empty means zero
  ProbVector initial;                      // required by cgf_finite_bounds
};

double cgf(const CgfSpec& spec, double rho);

struct CgfDerivatives {
  double first = 0.0;
  double second = 0.0;
};
// Central finite differences with Richardson extrapolation; second >= -1e-9
// by convexity of phi.
CgfDerivatives cgf_derivatives(const CgfSpec& spec, double rho);

// Bounds ((n-1) phi + delta_lo, (n-1) phi + delta_hi) containing the n-step
// CGF phi_n(rho), built from the left eigenvector of the tilted matrix
// (normalized to min entry 1) and w(z) = P_{Z_1}(z) e^{rho g~(z)}.
std::pair<double, double> cgf_finite_bounds(const CgfSpec& spec, double rho, int n);

// Log-scale entries of the tilted matrix W e^{rho g} (internal building block,
// exposed for the transition-measure module).
std::vector<double> tilted_log_entries(const CgfSpec& spec, double rho);

}  // namespace markovflb
