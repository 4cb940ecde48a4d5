#pragma once

#include <limits>
#include <optional>
#include <string>

#include "markovflb/joint.hpp"
#include "markovflb/rate_inversion.hpp"
#include "markovflb/transition.hpp"

namespace markovflb {

// A bound on an error probability. `log_prob` is the log of the bound on P
// (already clamped so that exp(log_prob) lies in [0, 1]). Achievability
// bounds are upper bounds on the hash-averaged error; converses are lower
// bounds on the optimal error.
struct BoundResult {
  std::string name;
  bool is_upper_bound = true;
  double log_prob = 0.0;
  bool vacuous = false;
  // Optimizer record; NaN when a knob does not apply.
  double theta = std::numeric_limits<double>::quiet_NaN();
  double s = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();
  double theta_tilde = std::numeric_limits<double>::quiet_NaN();

  double prob() const;
};

// ---- Single-shot source coding with side-information ------------------

// Tail + e^gamma / M, optimized over gamma.
BoundResult src_ach_spectrum(const JointDistribution& p, double log_m);
// M^{theta/(1+theta)} e^{-theta/(1+theta) H_up}, theta in [-1/2, 0].
BoundResult src_ach_gallager(const JointDistribution& p, double log_m);
// M^{theta} e^{-theta H_down}, theta in [-1, 0].
BoundResult src_ach_loose(const JointDistribution& p, double log_m);

// Tail - M e^{-gamma}, optimized over gamma.
BoundResult src_conv_spectrum(const JointDistribution& p, double log_m, const Conditioner& q);
// Fractional-knapsack relaxation of the covering converse; a valid (slightly
// weakened) lower bound on the optimal error.
BoundResult src_conv_hypothesis(const JointDistribution& p, double log_m, const Conditioner& q);
// Exponential-type converse: upper bound on -log P(M), optimized over
// (s, theta~) after the saddle substitution. Empty conditioner selects the
// asymptotically optimal choice.
BoundResult src_conv_exponential(const JointDistribution& p, double log_m,
                                 const std::optional<Conditioner>& q);

// ---- Finite Markov bounds ----------------------------------------------

// Bound identifiers follow the CLI contract: T5/T7 are achievability
// exponents (lower/upper measure), T6/T8 the matching converses.
enum class SourceTheorem { T5, T6, T7, T8 };
SourceTheorem source_theorem_from_string(const std::string& s);
std::string to_string(SourceTheorem t);

// R is the per-letter rate log(M_n)/n in nats.
BoundResult src_markov_bound(const MarkovSource& src, int n, double rate, SourceTheorem which);

// ---- Channel coding over conditional additive channels ------------------

enum class ChannelBound {
  AchT13,          // achievability, lower measure
  AchT14,          // achievability, upper measure
  AchT15Additive,  // achievability, additive channel (Y singleton)
  ConvT14c,        // converse, lower measure
  ConvT16,         // converse, two-parameter measure
  ConvSpectrumL24, // information-spectrum converse (needs enumeration)
  ConvExpT11,      // exponential converse on the n-letter law (needs enumeration)
};
ChannelBound channel_bound_from_string(const std::string& s);
std::string to_string(ChannelBound b);

struct ChannelQuery {
  int n = 1;
  double log_alphabet = 0.0;  // log |A|
  double log_m = 0.0;         // log M_n (codebook size)
  // Rate bookkeeping: R = log|A| - log(M_n)/n; an (n,k) code has
  // log M_n = k log|A|.
  double source_rate() const { return log_alphabet - log_m / n; }
};

BoundResult chan_bound(const MarkovSource& noise, const ChannelQuery& q, ChannelBound which,
                       std::size_t enumeration_cap = 10000000);

}  // namespace markovflb
