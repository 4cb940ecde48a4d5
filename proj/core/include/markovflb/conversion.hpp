#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "markovflb/joint.hpp"
#include "markovflb/transition.hpp"

namespace markovflb {

// Exact rational with a small denominator; carries the exact-arithmetic path
// through channel conversions so closed-form probabilities come out exact.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n, long long d);
  static Rat from_decimal_string(const std::string& s);

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Direct product of cyclic groups Z_{q1} x ... x Z_{qm}; elements are
// mixed-radix encoded integers in [0, q1*...*qm).
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<int> moduli);

  int size() const { return size_; }
  int add(int a, int b) const;
  int neg(int a) const;
  int sub(int a, int b) const { return add(a, neg(b)); }
  const std::vector<int>& moduli() const { return moduli_; }

 private:
  std::vector<int> moduli_;
  int size_ = 1;
};

// Channel defined by a permutation representation of an abelian input group
// on the output alphabet: P(b|a) = P_base(pi_a(b)).
class RegularChannel {
 public:
  RegularChannel(FiniteAbelianGroup group, std::vector<std::vector<int>> perms,
                 std::vector<double> base, std::vector<Rat> base_exact = {});

  const FiniteAbelianGroup& group() const { return group_; }
  int out_size() const { return static_cast<int>(perms_[0].size()); }
  int perm(int a, int b) const { return perms_[a][b]; }
  double base(int b) const { return base_[b]; }
  bool has_exact_base() const { return !base_exact_.empty(); }
  const Rat& base_exact(int b) const { return base_exact_[b]; }

 private:
  FiniteAbelianGroup group_;
  std::vector<std::vector<int>> perms_;
  std::vector<double> base_;
  std::vector<Rat> base_exact_;
};

struct OrbitDecomposition {
  std::vector<std::vector<int>> orbits;    // members, ascending
  std::vector<int> representative;         // lexicographically smallest member
  std::vector<int> orbit_of;               // b -> orbit index
  std::vector<std::vector<int>> stabilizer;  // Stb(0_y), ascending
  // coset_rep[y][a]: lexicographically smallest member of a + Stb(0_y)
  std::vector<std::vector<int>> coset_rep;
  // iota[y][b]: the coset representative with pi_{-a}(0_y) = b (valid on the
  // orbit); iota_inv[y][a]: that member of the orbit (valid on coset reps)
  std::vector<std::vector<int>> iota;
  std::vector<std::vector<int>> iota_inv;
};

OrbitDecomposition decompose(const RegularChannel& ch);

// Single-shot noise law P_XY on A x Ybar of the virtual conditional additive
// channel. Exact rational arithmetic when the channel carries an exact base.
JointDistribution to_conditional_additive(const RegularChannel& ch);
std::vector<Rat> to_conditional_additive_exact(const RegularChannel& ch);

// Markov noise: lifts a noise chain on the output alphabet to the pair chain
// of the virtual channel.
MarkovSource convert_markov_noise(const RegularChannel& ch, const StochasticMatrix& w_tilde,
                                  const ProbVector& q);

// ---- Presets -------------------------------------------------------------

RegularChannel make_bes(const std::string& p, const std::string& p_prime);
RegularChannel make_bsc(const std::string& p);
MarkovSource make_gilbert_elliott(double q0, double q1, double p0, double p1);
// W(x,y|x',y') = Q(y|y') P_Z((x-y) - (x'-y')) on Z_m x Z_m.
MarkovSource make_symmetric_additive(const StochasticMatrix& q_chain,
                                     const ProbVector& p_z);

struct PresetResult {
  std::optional<RegularChannel> channel;
  std::optional<MarkovSource> source;
};
// Parses "name:p1,p2,..." (accepts '-' or '_' in names): bes, bsc,
// gilbert-elliott, symmetric-additive.
PresetResult make_preset(const std::string& spec);

}  // namespace markovflb
