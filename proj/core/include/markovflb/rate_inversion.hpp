#pragma once

#include <functional>
#include <utility>

#include "markovflb/joint.hpp"
#include "markovflb/transition.hpp"

namespace markovflb {

// A one-parameter concave family G(theta) = theta * H_{1+theta} with its
// numeric derivative, for any measure (single-shot or transition, any kind).
// The domain is truncated to [-1 + 1e-6, theta_max]; the order-0 limit is
// estimated at the truncation point.
class MeasureFamily {
 public:
  MeasureFamily(std::function<double(double)> g, double theta_min = -1.0 + 1e-6,
                double theta_max = 50.0);

  static MeasureFamily from_joint(const JointDistribution& p, const RenyiKind& kind,
                                  double theta_max = 50.0);
  static MeasureFamily from_source(const MarkovSource& src, const TransitionKind& kind,
                                   double theta_max = 50.0);

  double g(double theta) const { return g_(theta); }
  double value(double theta) const;      // H_{1+theta} = G(theta)/theta
  double g_prime(double theta) const;    // central differences, h = 1e-5
  double entropy() const { return entropy_; }          // G'(0)
  double varentropy_estimate() const { return var_; }  // -G''(0)
  bool degenerate() const { return degenerate_; }
  double theta_min() const { return theta_min_; }
  double theta_max() const { return theta_max_; }
  double h0() const { return h0_; }      // H at the lower truncation point
  double a_lower() const { return a_lo_; }  // G' at theta_max
  double a_upper() const { return a_hi_; }  // G' at theta_min

 private:
  std::function<double(double)> g_;
  double theta_min_, theta_max_;
  double entropy_ = 0.0, var_ = 0.0, h0_ = 0.0;
  double a_lo_ = 0.0, a_hi_ = 0.0;
  bool degenerate_ = false;
};

// Tilt parameter with G'(theta(a)) = a; bisection on the decreasing G'.
double theta_of_a(const MeasureFamily& fam, double a);

// Inverse of the increasing map R(a) = (1 + theta(a)) a - G(theta(a)).
double a_of_R(const MeasureFamily& fam, double R);

// sup over theta in [-1+eps, 0] of [G(theta) - theta R] (golden section).
double exponent_linear(const MeasureFamily& fam, double R);

// Closed form G(theta*) - theta* a* at theta* = theta(a(R)); equals
// sup_theta [G(theta) - theta R] / (1 + theta).
double exponent_scaled(const MeasureFamily& fam, double R);

// Direct golden-section evaluation of the scaled supremum over
// [clamp_lo, 0]; used to cross-check the closed form and for the
// achievability exponents clamped at -1/2.
double exponent_scaled_grid(const MeasureFamily& fam, double R, double clamp_lo = -1.0 + 1e-6);

// R(a) evaluated at a = G'(-1/2); requires an Upper-kind family.
double critical_rate(const MeasureFamily& fam);

// (exact, approx): the scaled exponent and its quadratic expansion
// V/2 ((R-H)/V)^2 near R = H.
std::pair<double, double> quadratic_expansion_check(const MeasureFamily& fam, double R);

}  // namespace markovflb
