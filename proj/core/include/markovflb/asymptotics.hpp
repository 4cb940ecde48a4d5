#pragma once

#include <limits>

#include "markovflb/transition.hpp"

namespace markovflb {

struct LdPair {
  double achievability = 0.0;  // lower bound on the error exponent
  double converse = 0.0;       // upper bound on the error exponent
  double critical_rate = std::numeric_limits<double>::quiet_NaN();
  bool tight = false;          // the two coincide (rate at or below critical)
};

// Error exponents at per-letter rate R (nats). Uses the upper-measure pair
// when the source is strongly non-hidden, else the lower-measure pair
// (whose achievability is the unscaled supremum).
LdPair ld_source_exponents(const MarkovSource& src, double rate);

// Channel exponents at code rate `rate` (nats per symbol); reduces to the
// source problem at R = log|A| - rate. Additive channels (|Y| = 1) use the
// scaled additive achievability.
LdPair ld_channel_exponents(const MarkovSource& noise, double log_alphabet, double rate);

// delta^2 / (2 V^W); Degenerate when the varentropy rate vanishes.
double moderate_deviation_coefficient(const MarkovSource& src, double delta);

// n H^W + sqrt(n V^W) InversePhi(1 - eps).
double second_order_source_log_m(const MarkovSource& src, long n, double eps);

// n C + sqrt(n V^W) InversePhi(eps) with C = log|A| - H^W.
double second_order_channel_log_m(const MarkovSource& noise, double log_alphabet, long n,
                                  double eps);

}  // namespace markovflb
