#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace markovflb {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(e^a + e^b) without overflow; handles -inf operands.
double log_sum_exp(double a, double b);
double log_sum_exp(std::span<const double> logs);

// Golden-section search for the maximum of a unimodal function on [lo, hi].
// Returns the argmax; the value is obtained by re-evaluating f.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol = 1e-12, int max_iter = 200);

// Root of a monotone function on [lo, hi] (f(lo) and f(hi) must straddle 0).
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double ftol = 1e-12, int max_iter = 200);

// Central differences with Richardson extrapolation (two levels).
// Throws StepUnderflow when the adaptive step shrinks below h_min
// without the extrapolants stabilizing.
double central_derivative(const std::function<double(double)>& f, double x,
                          double h0 = 1e-4, double h_min = 1e-8);
double central_second_derivative(const std::function<double(double)>& f, double x,
                                 double h0 = 1e-4, double h_min = 1e-8);

// Standard normal CDF and its inverse. The inverse uses a rational
// approximation refined by one Halley step; |error| < 1e-9 on
// p in [1e-12, 1-1e-12].
double normal_cdf(double t);
double inverse_normal_cdf(double p);

// Number of worker threads: MARKOV_FLB_THREADS when set, else hardware.
unsigned worker_count();

// Formats with 12 significant digits, '.' decimal separator.
std::string format_g12(double v);

}  // namespace markovflb
