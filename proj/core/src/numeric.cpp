#include "markovflb/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "markovflb/errors.hpp"

namespace markovflb {

double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double log_sum_exp(std::span<const double> logs) {
  double m = kNegInf;
  for (double v : logs) m = std::max(m, v);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double v : logs) s += std::exp(v - m);
  return m + std::log(s);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol, int max_iter) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  double xm = 0.5 * (a + b);
  double fm = f(xm);
  // Endpoints of the original interval may dominate when the maximum
  // sits on the boundary.
  double best_x = xm, best_f = fm;
  for (double c : {lo, hi, x1, x2}) {
    double fc = f(c);
    if (fc > best_f) {
      best_f = fc;
      best_x = c;
    }
  }
  return best_x;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double ftol, int max_iter) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) {
    throw OutOfRange("bisect_root: endpoints do not straddle zero");
  }
  double a = lo, b = hi;
  for (int i = 0; i < max_iter; ++i) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (std::abs(fm) <= ftol || (b - a) < 1e-15 * (1.0 + std::abs(m))) return m;
    if ((fm > 0) == (flo > 0)) {
      a = m;
      flo = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

namespace {

// One Richardson table: D(h), D(h/2), D(h/4) -> order-6 estimate.
double richardson(double d1, double d2, double d3, double* spread) {
  double r1 = (4.0 * d2 - d1) / 3.0;
  double r2 = (4.0 * d3 - d2) / 3.0;
  double rr = (16.0 * r2 - r1) / 15.0;
  *spread = std::abs(rr - r2);
  return rr;
}

}  // namespace

double central_derivative(const std::function<double(double)>& f, double x,
                          double h0, double h_min) {
  double h = h0;
  double best = 0.0, best_spread = std::numeric_limits<double>::infinity();
  while (h >= h_min) {
    auto d = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2.0 * hh); };
    double spread;
    double est = richardson(d(h), d(h / 2), d(h / 4), &spread);
    double scale = std::max(1.0, std::abs(est));
    if (spread <= 1e-9 * scale) return est;
    if (spread < best_spread) {
      best_spread = spread;
      best = est;
    }
    h /= 4.0;
  }
  if (best_spread <= 1e-6 * std::max(1.0, std::abs(best))) return best;
  throw StepUnderflow("central_derivative: step shrank below floor without stabilizing");
}

double central_second_derivative(const std::function<double(double)>& f, double x,
                                 double h0, double h_min) {
  double fx = f(x);
  double h = h0;
  double best = 0.0, best_spread = std::numeric_limits<double>::infinity();
  while (h >= h_min) {
    auto d = [&](double hh) { return (f(x + hh) - 2.0 * fx + f(x - hh)) / (hh * hh); };
    double spread;
    double est = richardson(d(h), d(h / 2), d(h / 4), &spread);
    double scale = std::max(1.0, std::abs(est));
    if (spread <= 1e-7 * scale) return est;
    if (spread < best_spread) {
      best_spread = spread;
      best = est;
    }
    h /= 4.0;
  }
  if (best_spread <= 1e-4 * std::max(1.0, std::abs(best))) return best;
  throw StepUnderflow("central_second_derivative: step shrank below floor without stabilizing");
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("inverse_normal_cdf: p must be in (0,1)");
  // Acklam's rational approximation.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= phigh) {
    double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  // One Halley refinement against the exact CDF.
  double e = normal_cdf(x) - p;
  double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  x = x - u / (1.0 + x * u / 2.0);
  return x;
}

unsigned worker_count() {
  if (const char* env = std::getenv("MARKOV_FLB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace markovflb
