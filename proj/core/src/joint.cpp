#include "markovflb/joint.hpp"

#include <algorithm>
#include <cmath>

#include "markovflb/numeric.hpp"

namespace markovflb {

namespace {
constexpr double kThetaZeroBand = 1e-6;
}

JointDistribution::JointDistribution(std::size_t nx, std::size_t ny, std::vector<double> p)
    : nx_(nx), ny_(ny), p_(std::move(p)) {
  if (p_.size() != nx * ny) throw DomainError("JointDistribution: size mismatch");
  double total = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0)) throw DomainError("JointDistribution: negative or NaN entry");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12 * std::max<std::size_t>(1, p_.size())) {
    throw DomainError("JointDistribution: total mass " + std::to_string(total));
  }
  px_.assign(nx_, 0.0);
  py_.assign(ny_, 0.0);
  for (std::size_t x = 0; x < nx_; ++x)
    for (std::size_t y = 0; y < ny_; ++y) {
      px_[x] += at(x, y);
      py_[y] += at(x, y);
    }
}

std::size_t JointDistribution::support_size_given_y(std::size_t y) const {
  std::size_t c = 0;
  for (std::size_t x = 0; x < nx_; ++x)
    if (at(x, y) > 0.0) ++c;
  return c;
}

namespace {

// Mean and variance of Z = log(Q_Y(Y) / P_XY(X,Y)) under P.
void z_moments(const JointDistribution& p, const std::vector<double>& logq,
               double* mean, double* var) {
  double m = 0.0;
  for (std::size_t x = 0; x < p.nx(); ++x)
    for (std::size_t y = 0; y < p.ny(); ++y) {
      double mass = p.at(x, y);
      if (mass == 0.0) continue;
      m += mass * (logq[y] - std::log(mass));
    }
  double v = 0.0;
  for (std::size_t x = 0; x < p.nx(); ++x)
    for (std::size_t y = 0; y < p.ny(); ++y) {
      double mass = p.at(x, y);
      if (mass == 0.0) continue;
      double z = logq[y] - std::log(mass);
      v += mass * (z - m) * (z - m);
    }
  *mean = m;
  *var = v;
}

std::vector<double> log_of(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] > 0.0 ? std::log(v[i]) : kNegInf;
  return out;
}

double renyi_relative(const JointDistribution& p, const std::vector<double>& q, double theta) {
  if (theta < -1.0) throw DomainError("singleshot_renyi: theta < -1");
  for (std::size_t y = 0; y < p.ny(); ++y) {
    if (p.marginal_y()[y] > 0.0 && q[y] <= 0.0) {
      throw SupportViolation("conditioner misses part of supp(P_Y)");
    }
  }
  if (theta == -1.0) {
    double s = 0.0;
    for (std::size_t y = 0; y < p.ny(); ++y) {
      s += q[y] * static_cast<double>(p.support_size_given_y(y));
    }
    return std::log(s);
  }
  std::vector<double> logq = log_of(q);
  if (std::abs(theta) < kThetaZeroBand) {
    double mean, var;
    z_moments(p, logq, &mean, &var);
    return mean - 0.5 * var * theta;
  }
  std::vector<double> terms;
  terms.reserve(p.nx() * p.ny());
  for (std::size_t x = 0; x < p.nx(); ++x)
    for (std::size_t y = 0; y < p.ny(); ++y) {
      double mass = p.at(x, y);
      if (mass == 0.0) continue;  // zero entries contribute nothing for theta > -1
      terms.push_back((1.0 + theta) * std::log(mass) - theta * logq[y]);
    }
  return -log_sum_exp(terms) / theta;
}

// log of [sum_x P(x,y)^{1+theta}] per y, -inf on empty columns.
std::vector<double> log_column_power_sums(const JointDistribution& p, double theta) {
  std::vector<double> out(p.ny(), kNegInf);
  std::vector<double> terms;
  for (std::size_t y = 0; y < p.ny(); ++y) {
    terms.clear();
    for (std::size_t x = 0; x < p.nx(); ++x) {
      double mass = p.at(x, y);
      if (mass > 0.0) terms.push_back((1.0 + theta) * std::log(mass));
    }
    if (!terms.empty()) out[y] = log_sum_exp(terms);
  }
  return out;
}

double renyi_upper(const JointDistribution& p, double theta) {
  if (theta < -1.0) throw DomainError("singleshot_renyi: theta < -1");
  if (theta == -1.0) {
    std::size_t mx = 0;
    for (std::size_t y = 0; y < p.ny(); ++y) {
      if (p.marginal_y()[y] > 0.0) mx = std::max(mx, p.support_size_given_y(y));
    }
    return std::log(static_cast<double>(mx));
  }
  if (std::abs(theta) < kThetaZeroBand) {
    return conditional_entropy(p) - 0.5 * varentropy(p) * theta;
  }
  auto colsum = log_column_power_sums(p, theta);
  std::vector<double> terms;
  for (double c : colsum) {
    if (c != kNegInf) terms.push_back(c / (1.0 + theta));
  }
  return -(1.0 + theta) / theta * log_sum_exp(terms);
}

}  // namespace

double singleshot_renyi(const JointDistribution& p, const RenyiKind& kind, double theta) {
  switch (kind.tag) {
    case RenyiKind::Tag::Lower:
      return renyi_relative(p, p.marginal_y(), theta);
    case RenyiKind::Tag::RelativeQ:
      if (kind.q.size() != p.ny()) throw DomainError("conditioner size mismatch");
      return renyi_relative(p, kind.q.entries(), theta);
    case RenyiKind::Tag::Upper:
      return renyi_upper(p, theta);
    case RenyiKind::Tag::TwoParam: {
      if (!(kind.theta_prime > -1.0)) {
        throw DomainError("two-parameter measure needs theta' > -1");
      }
      Conditioner q = optimal_conditioner(p, kind.theta_prime);
      return renyi_relative(p, q.entries(), theta);
    }
  }
  throw DomainError("singleshot_renyi: bad kind");
}

Conditioner optimal_conditioner(const JointDistribution& p, double theta) {
  if (!(theta > -1.0)) throw DomainError("optimal_conditioner: theta must exceed -1");
  auto colsum = log_column_power_sums(p, theta);
  std::vector<double> logw(p.ny(), kNegInf);
  for (std::size_t y = 0; y < p.ny(); ++y) {
    if (colsum[y] != kNegInf) logw[y] = colsum[y] / (1.0 + theta);
  }
  double logz = log_sum_exp(logw);
  std::vector<double> q(p.ny(), 0.0);
  for (std::size_t y = 0; y < p.ny(); ++y) {
    if (logw[y] != kNegInf) q[y] = std::exp(logw[y] - logz);
  }
  return Conditioner(q);
}

double conditional_entropy(const JointDistribution& p) {
  double h = 0.0;
  for (std::size_t x = 0; x < p.nx(); ++x)
    for (std::size_t y = 0; y < p.ny(); ++y) {
      double mass = p.at(x, y);
      if (mass == 0.0) continue;
      h += mass * (std::log(p.marginal_y()[y]) - std::log(mass));
    }
  return h;
}

double varentropy(const JointDistribution& p) {
  double h = conditional_entropy(p);
  double v = 0.0;
  for (std::size_t x = 0; x < p.nx(); ++x)
    for (std::size_t y = 0; y < p.ny(); ++y) {
      double mass = p.at(x, y);
      if (mass == 0.0) continue;
      double z = std::log(p.marginal_y()[y]) - std::log(mass);
      v += mass * (z - h) * (z - h);
    }
  return v;
}

double gallager_e0(const JointDistribution& p, double tau) {
  if (!(tau > -1.0)) throw DomainError("gallager_e0: tau must exceed -1");
  std::vector<double> terms;
  std::vector<double> inner;
  for (std::size_t y = 0; y < p.ny(); ++y) {
    double py = p.marginal_y()[y];
    if (py == 0.0) continue;
    inner.clear();
    for (std::size_t x = 0; x < p.nx(); ++x) {
      double mass = p.at(x, y);
      if (mass > 0.0) inner.push_back((std::log(mass) - std::log(py)) / (1.0 + tau));
    }
    terms.push_back(std::log(py) + (1.0 + tau) * log_sum_exp(inner));
  }
  return log_sum_exp(terms);
}

}  // namespace markovflb
