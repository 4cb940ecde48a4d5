#pragma once

#include <cstdint>
#include <utility>

#include "markovflb/transition.hpp"

namespace markovflb {

// Counter-based generator: value i of stream s is SplitMix64 applied to
// key(seed, s) + i * GOLDEN_GAMMA. Streams never overlap and draws are
// independent of evaluation order, so parallel runs are schedule-free.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double next_unit();  // uniform in [0, 1)
  // Uniform integer in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

enum class TieRule { Error, Success };

struct SimConfig {
  long trials = 10000;
  std::uint64_t seed = 0;
  int n = 10;
  int k = 0;                  // code dimension; hash range is q^{n-k}
  int q = 2;                  // prime alphabet size; must equal |X|
  TieRule tie = TieRule::Error;
  std::size_t enumeration_cap = 10000000;
};

struct SimResult {
  double mean = 0.0;
  double stderr_ = 0.0;
  long trials = 0;
  long errors = 0;
};

// Syndrome coding with a fresh random parity-check matrix per trial and MAP
// decoding inside the syndrome coset. Ties count per cfg.tie (errors by
// default, which keeps the achievability comparison conservative).
SimResult mc_hash_coding(const MarkovSource& src, const SimConfig& cfg);

struct VarentropyEstimate {
  double value = 0.0;    // sample variance of the conditional self-information / n
  double stderr_ = 0.0;  // large-sample standard error of `value`
};
VarentropyEstimate empirical_varentropy_stats(const MarkovSource& src, int n, long trials,
                                              std::uint64_t seed);
double empirical_varentropy(const MarkovSource& src, int n, long trials, std::uint64_t seed);

}  // namespace markovflb
