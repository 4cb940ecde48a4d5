#include "markovflb/rate_inversion.hpp"

#include <algorithm>
#include <cmath>

#include "markovflb/numeric.hpp"

namespace markovflb {

namespace {
constexpr double kDerivStep = 1e-5;
constexpr double kInvTol = 1e-9;
}  // namespace

MeasureFamily::MeasureFamily(std::function<double(double)> g, double theta_min,
                             double theta_max)
    : g_(std::move(g)), theta_min_(theta_min), theta_max_(theta_max) {
  // Spot-check concavity on a coarse grid.
  const int grid = 32;
  double prev = 0.0;
  for (int i = 0; i <= grid; ++i) {
    double t = theta_min_ + (std::min(theta_max_, 4.0) - theta_min_) * i / grid;
    double d = g_prime(t);
    if (i > 0 && d > prev + 1e-6 * std::max(1.0, std::abs(prev))) {
      throw DomainError("MeasureFamily: G' increases on the grid; family not concave");
    }
    prev = d;
  }
  entropy_ = g_prime(0.0);
  double d2 = (g_prime(kDerivStep) - g_prime(-kDerivStep)) / (2 * kDerivStep);
  var_ = -d2;
  degenerate_ = std::abs(d2) < 1e-10;
  h0_ = value(theta_min_);
  a_lo_ = g_prime(theta_max_);
  a_hi_ = g_prime(theta_min_);
}

MeasureFamily MeasureFamily::from_joint(const JointDistribution& p, const RenyiKind& kind,
                                        double theta_max) {
  JointDistribution copy = p;
  RenyiKind k = kind;
  return MeasureFamily(
      [copy, k](double t) { return t * singleshot_renyi(copy, k, t); }, -1.0 + 1e-6,
      theta_max);
}

MeasureFamily MeasureFamily::from_source(const MarkovSource& src, const TransitionKind& kind,
                                         double theta_max) {
  const MarkovSource* s = &src;
  TransitionKind k = kind;
  return MeasureFamily(
      [s, k](double t) { return t * transition_renyi(*s, k, t); }, -1.0 + 1e-6,
      theta_max);
}

double MeasureFamily::value(double theta) const {
  if (std::abs(theta) < 1e-9) return g_prime(0.0);
  return g_(theta) / theta;
}

double MeasureFamily::g_prime(double theta) const {
  double h = kDerivStep;
  return (g_(theta + h) - g_(theta - h)) / (2 * h);
}

double theta_of_a(const MeasureFamily& fam, double a) {
  if (fam.degenerate()) {
    if (std::abs(a - fam.entropy()) < 1e-9) return 0.0;
    throw Degenerate("theta_of_a: family has zero varentropy");
  }
  if (!(a > fam.a_lower() && a < fam.a_upper())) {
    throw OutOfRange("theta_of_a: a outside the derivative range");
  }
  // Bracket by doubling away from zero on the monotone-decreasing G'.
  double lo, hi;  // G'(lo) >= a >= G'(hi)
  if (fam.g_prime(0.0) >= a) {
    lo = 0.0;
    double step = 0.25;
    hi = std::min(step, fam.theta_max());
    int iter = 0;
    while (fam.g_prime(hi) > a) {
      step *= 2;
      hi = std::min(hi + step, fam.theta_max());
      if (++iter > 200) throw OutOfRange("theta_of_a: bracket not found");
    }
  } else {
    hi = 0.0;
    double step = 0.25;
    lo = std::max(-step, fam.theta_min());
    int iter = 0;
    while (fam.g_prime(lo) < a) {
      step *= 2;
      lo = std::max(lo - step, fam.theta_min());
      if (++iter > 200) throw OutOfRange("theta_of_a: bracket not found");
    }
  }
  return bisect_root([&](double t) { return fam.g_prime(t) - a; }, lo, hi, kInvTol);
}

namespace {

double rate_of_a(const MeasureFamily& fam, double a) {
  double t = theta_of_a(fam, a);
  return (1.0 + t) * a - fam.g(t);
}

}  // namespace

double a_of_R(const MeasureFamily& fam, double R) {
  if (fam.degenerate()) throw Degenerate("a_of_R: family has zero varentropy");
  if (R > fam.h0() - 1e-9) {
    throw OutOfRange("a_of_R: R above the order-0 limit");
  }
  double eps_lo = 1e-7 * std::max(1.0, std::abs(fam.a_lower()));
  double eps_hi = 1e-7 * std::max(1.0, std::abs(fam.a_upper()));
  double a_lo = fam.a_lower() + eps_lo;
  double a_hi = fam.a_upper() - eps_hi;
  if (rate_of_a(fam, a_lo) > R || rate_of_a(fam, a_hi) < R) {
    throw OutOfRange("a_of_R: R outside the invertible window");
  }
  return bisect_root([&](double a) { return rate_of_a(fam, a) - R; }, a_lo, a_hi, kInvTol);
}

double exponent_linear(const MeasureFamily& fam, double R) {
  if (R < fam.entropy() - 1e-9) throw OutOfRange("exponent_linear: R below the entropy value");
  auto obj = [&](double t) { return fam.g(t) - t * R; };
  double t_star = golden_max(obj, fam.theta_min(), 0.0);
  return std::max(0.0, obj(t_star));
}

double exponent_scaled(const MeasureFamily& fam, double R) {
  if (R < fam.entropy() - 1e-9) throw OutOfRange("exponent_scaled: R below the entropy value");
  if (std::abs(R - fam.entropy()) < 1e-12) return 0.0;
  double a = a_of_R(fam, R);
  double t = theta_of_a(fam, a);
  return fam.g(t) - t * a;
}

double exponent_scaled_grid(const MeasureFamily& fam, double R, double clamp_lo) {
  auto obj = [&](double t) { return (fam.g(t) - t * R) / (1.0 + t); };
  double t_star = golden_max(obj, clamp_lo, 0.0, 1e-13);
  return std::max(0.0, obj(t_star));
}

double critical_rate(const MeasureFamily& fam) {
  if (fam.degenerate()) throw Degenerate("critical_rate: family has zero varentropy");
  double a = fam.g_prime(-0.5);
  return rate_of_a(fam, a);
}

std::pair<double, double> quadratic_expansion_check(const MeasureFamily& fam, double R) {
  double h = fam.entropy();
  if (std::abs(R - h) < 1e-15) return {0.0, 0.0};
  double exact = exponent_scaled(fam, R);
  double v = fam.varentropy_estimate();
  double approx = 0.5 * (R - h) * (R - h) / v;
  return {exact, approx};
}

}  // namespace markovflb
