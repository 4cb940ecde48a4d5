#pragma once

#include <cstdint>
#include <vector>

#include "markovflb/joint.hpp"
#include "markovflb/transition.hpp"

namespace markovflb {

// Exact n-letter law of a pair chain, flat over (|X||Y|)^n sequences.
// Sequence index is big-endian base-S over pair states z_i = x_i |Y| + y_i.
class ExhaustiveJoint {
 public:
  ExhaustiveJoint(std::size_t nx, std::size_t ny, int n, std::vector<double> p);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  int n() const { return n_; }
  std::size_t states() const { return p_.size(); }
  double operator[](std::size_t seq) const { return p_[seq]; }
  const std::vector<double>& flat() const { return p_; }

  // View of X^n as one super-symbol conditioned on Y^n.
  JointDistribution as_joint() const;

 private:
  std::size_t nx_, ny_;
  int n_;
  std::vector<double> p_;
};

// Exact chain law by dynamic programming over prefixes.
ExhaustiveJoint brute_joint(const MarkovSource& src, int n,
                            std::size_t state_cap = 10000000);

// Single-shot measure evaluated on the n-letter joint.
double brute_renyi_n(const ExhaustiveJoint& j, const RenyiKind& kind, double theta);

// Exact optimal error over all encoder partitions (restricted-growth
// enumeration, MAP decoding per bin). Requires |X|^n <= 12 and M <= 4.
double brute_optimal_source_error(const ExhaustiveJoint& j, int m);

}  // namespace markovflb
