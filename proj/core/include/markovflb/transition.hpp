#pragma once

#include <vector>

#include "markovflb/cgf.hpp"
#include "markovflb/linalg.hpp"

namespace markovflb {

enum class AssumptionLevel { None, NonHidden, StronglyNonHidden };

// NonHidden: the column sums over x depend on (y, y') only, so the Y-marginal
// of the pair chain is itself Markov. StronglyNonHidden: additionally the
// conditional noise columns are permutations of each other across x', which
// keeps every tilted Y-marginal Markov.
AssumptionLevel check_assumptions(const PairTransitionMatrix& w);

// A pair chain together with its initial law; the assumption level is
// computed once at construction.
class MarkovSource {
 public:
  MarkovSource(PairTransitionMatrix w, ProbVector initial);
  static MarkovSource with_stationary_initial(PairTransitionMatrix w);

  const PairTransitionMatrix& w() const { return w_; }
  const ProbVector& initial() const { return initial_; }
  AssumptionLevel level() const { return level_; }

  std::size_t nx() const { return w_.nx(); }
  std::size_t ny() const { return w_.ny(); }

  // W(y|y'); requires NonHidden.
  const Matrix& y_marginal() const;
  double initial_y(std::size_t y) const { return py1_[y]; }

  // CGF of the conditional self-information increments; the bridge
  // theta * H_lower(theta) = -phi(-theta) holds against it.
  const CgfSpec& lower_cgf() const { return lower_cgf_; }

 private:
  PairTransitionMatrix w_;
  ProbVector initial_;
  AssumptionLevel level_;
  Matrix y_marginal_;
  std::vector<double> py1_;
  CgfSpec lower_cgf_;
};

struct TransitionKind {
  enum class Tag { Lower, Upper, TwoParam };
  Tag tag = Tag::Lower;
  double theta_prime = 0.0;

  static TransitionKind lower() { return {Tag::Lower, 0.0}; }
  static TransitionKind upper() { return {Tag::Upper, 0.0}; }
  static TransitionKind two_param(double tp) { return {Tag::TwoParam, tp}; }
};

// Conditional Renyi entropy rates of the transition matrix, in nats.
// Lower needs NonHidden; Upper and TwoParam need StronglyNonHidden.
// theta = 0 is the entropy rate, theta = -1 the order-0 limit
// (evaluated at the truncation point with one Richardson step).
double transition_renyi(const MarkovSource& src, const TransitionKind& kind, double theta);

// Entropy rate H^W(X|Y) = phi'(0).
double transition_entropy(const MarkovSource& src);

// Varentropy rate V^W(X|Y) = phi''(0) >= 0.
double transition_varentropy(const MarkovSource& src);

// Additive constants sandwiching the n-letter measure:
//   (n-1) G^W + lower <= G_n <= (n-1) G^W + upper,
// where G is theta-scaled for Lower/TwoParam and theta/(1+theta)-scaled
// for Upper.
struct CorrectionPair {
  double lower = 0.0;
  double upper = 0.0;
};
CorrectionPair finite_corrections(const MarkovSource& src, const TransitionKind& kind,
                                  double theta);

// Conditioning chain V_theta on Y attaining the Upper measure:
// the eigenvalue of W^{1+theta} V_theta^{-theta} reproduces it.
StochasticMatrix optimal_v(const MarkovSource& src, double theta);

// Measure for an explicit conditioning chain V (supp of the Y-marginal of W
// must be contained in supp V).
double transition_renyi_given_v(const MarkovSource& src, const StochasticMatrix& v,
                                double theta);

// |Y| x |Y| reductions used by the Upper/TwoParam measures (log-scale
// entries); exposed for tests of the reduction consistency.
std::vector<double> log_w_theta(const MarkovSource& src, double theta);
std::vector<double> log_k_theta(const MarkovSource& src, double theta);
std::vector<double> log_n_theta(const MarkovSource& src, double theta, double theta_prime);

}  // namespace markovflb
