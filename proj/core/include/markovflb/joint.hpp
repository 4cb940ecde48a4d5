#pragma once

#include <cstddef>
#include <vector>

#include "markovflb/linalg.hpp"

namespace markovflb {

// Joint probability distribution P_XY on X x Y, stored as p[x * |Y| + y].
class JointDistribution {
 public:
  JointDistribution() = default;
  JointDistribution(std::size_t nx, std::size_t ny, std::vector<double> p);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double at(std::size_t x, std::size_t y) const { return p_[x * ny_ + y]; }
  const std::vector<double>& flat() const { return p_; }
  const std::vector<double>& marginal_x() const { return px_; }
  const std::vector<double>& marginal_y() const { return py_; }

  // |supp(P_{X|Y}(.|y))|; zero when P_Y(y) = 0.
  std::size_t support_size_given_y(std::size_t y) const;

 private:
  std::size_t nx_ = 0, ny_ = 0;
  std::vector<double> p_;
  std::vector<double> px_, py_;
};

// A distribution Q_Y on Y used to condition relative measures.
class Conditioner {
 public:
  Conditioner() = default;
  explicit Conditioner(std::vector<double> q) : q_(std::move(q)) {}

  std::size_t size() const { return q_.size(); }
  double operator[](std::size_t y) const { return q_[y]; }
  const std::vector<double>& entries() const { return q_.entries(); }

 private:
  ProbVector q_;
};

// Which conditional Renyi measure to evaluate.
struct RenyiKind {
  enum class Tag { RelativeQ, Lower, Upper, TwoParam };
  Tag tag = Tag::Lower;
  Conditioner q;              // RelativeQ only
  double theta_prime = 0.0;   // TwoParam only; must lie in (-1, inf)

  static RenyiKind lower() { return {Tag::Lower, {}, 0.0}; }
  static RenyiKind upper() { return {Tag::Upper, {}, 0.0}; }
  static RenyiKind relative(Conditioner qy) { return {Tag::RelativeQ, std::move(qy), 0.0}; }
  static RenyiKind two_param(double theta_prime) { return {Tag::TwoParam, {}, theta_prime}; }
};

// Conditional Renyi entropy of order 1+theta, in nats. theta in [-1, inf);
// theta = 0 is the Shannon limit, theta = -1 the order-0 support-counting
// limit.
double singleshot_renyi(const JointDistribution& p, const RenyiKind& kind, double theta);

// The conditioner attaining the order-(1+theta) maximum; plugging it into a
// RelativeQ evaluation reproduces the Upper measure.
Conditioner optimal_conditioner(const JointDistribution& p, double theta);

// Shannon conditional entropy H(X|Y) in nats.
double conditional_entropy(const JointDistribution& p);

// Variance of the conditional self-information -log P_{X|Y}(X|Y).
double varentropy(const JointDistribution& p);

// log sum_y P_Y(y) ( sum_x P_{X|Y}(x|y)^{1/(1+tau)} )^{1+tau},  tau > -1.
double gallager_e0(const JointDistribution& p, double tau);

}  // namespace markovflb
