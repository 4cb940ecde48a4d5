#include "markovflb/transition.hpp"

#include <algorithm>
#include <cmath>

#include "markovflb/numeric.hpp"

namespace markovflb {

namespace {

constexpr double kThetaZeroBand = 1e-6;
constexpr double kThetaMin = -1.0 + 1e-6;
constexpr double kThetaMax = 50.0;

void require_theta(double theta) {
  if (!(theta >= -1.0 && theta <= kThetaMax)) {
    throw DomainError("transition measure: theta outside [-1, 50]");
  }
}

}  // namespace

AssumptionLevel check_assumptions(const PairTransitionMatrix& w) {
  const std::size_t nx = w.nx(), ny = w.ny();
  // Column sums over x must agree across x' for each (y, y').
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t yp = 0; yp < ny; ++yp) {
      double ref = 0.0;
      for (std::size_t xp = 0; xp < nx; ++xp) {
        double s = 0.0;
        for (std::size_t x = 0; x < nx; ++x) s += w.at(x, y, xp, yp);
        if (xp == 0) {
          ref = s;
        } else if (std::abs(s - ref) > 1e-12) {
          return AssumptionLevel::None;
        }
      }
    }
  }
  // Sorted conditional columns must match across x' for each (y, y').
  std::vector<double> ref, cur;
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t yp = 0; yp < ny; ++yp) {
      ref.clear();
      for (std::size_t xp = 0; xp < nx; ++xp) {
        cur.clear();
        for (std::size_t x = 0; x < nx; ++x) cur.push_back(w.at(x, y, xp, yp));
        std::sort(cur.begin(), cur.end());
        if (xp == 0) {
          ref = cur;
          continue;
        }
        for (std::size_t i = 0; i < nx; ++i) {
          if (std::abs(cur[i] - ref[i]) > 1e-10) return AssumptionLevel::NonHidden;
        }
      }
    }
  }
  return AssumptionLevel::StronglyNonHidden;
}

MarkovSource::MarkovSource(PairTransitionMatrix w, ProbVector initial)
    : w_(std::move(w)), initial_(std::move(initial)) {
  if (initial_.size() != w_.states()) {
    throw DomainError("MarkovSource: initial distribution size mismatch");
  }
  level_ = check_assumptions(w_);

  const std::size_t nx = w_.nx(), ny = w_.ny();
  py1_.assign(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) py1_[y] += initial_[w_.state(x, y)];

  if (level_ != AssumptionLevel::None) {
    y_marginal_ = Matrix(ny);
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t yp = 0; yp < ny; ++yp) {
        double s = 0.0;
        for (std::size_t x = 0; x < nx; ++x)
          for (std::size_t xp = 0; xp < nx; ++xp) s += w_.at(x, y, xp, yp);
        y_marginal_.at(y, yp) = s / static_cast<double>(nx);
      }

    // CGF of the increments of -log W(x,y | x',y') + log W(y|y').
    const std::size_t s = w_.states();
    Matrix g(s);
    for (std::size_t d = 0; d < s; ++d)
      for (std::size_t c = 0; c < s; ++c) {
        double wv = w_.matrix().at(d, c);
        if (wv > 0.0) {
          g.at(d, c) = std::log(y_marginal_.at(w_.y_of(d), w_.y_of(c))) - std::log(wv);
        }
      }
    std::vector<double> gt(s, 0.0);
    for (std::size_t z = 0; z < s; ++z) {
      if (initial_[z] > 0.0) {
        gt[z] = std::log(py1_[w_.y_of(z)]) - std::log(initial_[z]);
      }
    }
    lower_cgf_ = CgfSpec{StochasticMatrix(w_.matrix()), std::move(g), std::move(gt), initial_};
  }
}

MarkovSource MarkovSource::with_stationary_initial(PairTransitionMatrix w) {
  ProbVector pi = stationary_distribution(StochasticMatrix(w.matrix()));
  return MarkovSource(std::move(w), std::move(pi));
}

const Matrix& MarkovSource::y_marginal() const {
  if (level_ == AssumptionLevel::None) {
    throw AssumptionViolated("y-marginal chain needs the non-hidden assumption");
  }
  return y_marginal_;
}

std::vector<double> log_w_theta(const MarkovSource& src, double theta) {
  const std::size_t nx = src.nx(), ny = src.ny();
  std::vector<double> out(ny * ny, kNegInf);
  std::vector<double> terms;
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t yp = 0; yp < ny; ++yp) {
      terms.clear();
      for (std::size_t x = 0; x < nx; ++x) {
        double v = src.w().at(x, y, 0, yp);
        if (v > 0.0) terms.push_back((1.0 + theta) * std::log(v));
      }
      if (!terms.empty()) out[y * ny + yp] = log_sum_exp(terms);
    }
  return out;
}

std::vector<double> log_k_theta(const MarkovSource& src, double theta) {
  std::vector<double> out = log_w_theta(src, theta);
  for (double& v : out) {
    if (v != kNegInf) v /= (1.0 + theta);
  }
  return out;
}

std::vector<double> log_n_theta(const MarkovSource& src, double theta, double theta_prime) {
  std::vector<double> wt = log_w_theta(src, theta);
  std::vector<double> wtp = log_w_theta(src, theta_prime);
  for (std::size_t i = 0; i < wt.size(); ++i) {
    if (wt[i] != kNegInf) wt[i] -= theta / (1.0 + theta_prime) * wtp[i];
  }
  return wt;
}

namespace {

// Log PF eigenvalue of the pair-space tilted matrix W^{1+theta} W_y^{-theta}.
double log_lambda_lower(const MarkovSource& src, double theta) {
  const std::size_t s = src.w().states();
  std::vector<double> logs(s * s, kNegInf);
  const Matrix& wy = src.y_marginal();
  for (std::size_t d = 0; d < s; ++d)
    for (std::size_t c = 0; c < s; ++c) {
      double wv = src.w().matrix().at(d, c);
      if (wv > 0.0) {
        logs[d * s + c] = (1.0 + theta) * std::log(wv) -
                          theta * std::log(wy.at(src.w().y_of(d), src.w().y_of(c)));
      }
    }
  return log_perron_value(s, logs);
}

void require_level(const MarkovSource& src, AssumptionLevel need, const char* what) {
  if (static_cast<int>(src.level()) < static_cast<int>(need)) {
    throw AssumptionViolated(std::string(what) + ": assumption level insufficient");
  }
}

double renyi_endpoint_extrapolated(const std::function<double(double)>& h) {
  // One Richardson step from the truncation point toward theta = -1.
  double h1 = h(kThetaMin);
  double h2 = h(-1.0 + 2e-6);
  return 2.0 * h1 - h2;
}

}  // namespace

double transition_renyi(const MarkovSource& src, const TransitionKind& kind, double theta) {
  require_theta(theta);
  switch (kind.tag) {
    case TransitionKind::Tag::Lower: {
      require_level(src, AssumptionLevel::NonHidden, "lower transition measure");
      auto h = [&](double t) { return -log_lambda_lower(src, t) / t; };
      if (theta == -1.0) return renyi_endpoint_extrapolated(h);
      if (std::abs(theta) < kThetaZeroBand) {
        return transition_entropy(src) - 0.5 * transition_varentropy(src) * theta;
      }
      return h(theta);
    }
    case TransitionKind::Tag::Upper: {
      require_level(src, AssumptionLevel::StronglyNonHidden, "upper transition measure");
      auto h = [&](double t) {
        return -(1.0 + t) / t * log_perron_value(src.ny(), log_k_theta(src, t));
      };
      if (theta == -1.0) return renyi_endpoint_extrapolated(h);
      if (std::abs(theta) < kThetaZeroBand) {
        return transition_entropy(src) - 0.5 * transition_varentropy(src) * theta;
      }
      return h(theta);
    }
    case TransitionKind::Tag::TwoParam: {
      require_level(src, AssumptionLevel::StronglyNonHidden, "two-parameter transition measure");
      double tp = kind.theta_prime;
      if (!(tp > -1.0 && tp <= kThetaMax)) {
        throw DomainError("two-parameter transition measure: theta' outside (-1, 50]");
      }
      double tail = tp / (1.0 + tp) * transition_renyi(src, TransitionKind::upper(), tp);
      auto log_nu = [&](double t) {
        return log_perron_value(src.ny(), log_n_theta(src, t, tp));
      };
      auto h = [&](double t) { return -log_nu(t) / t + tail; };
      if (theta == -1.0) return renyi_endpoint_extrapolated(h);
      if (std::abs(theta) < kThetaZeroBand) {
        double d1 = central_derivative(log_nu, 0.0);
        double d2 = central_second_derivative(log_nu, 0.0);
        return -d1 - 0.5 * d2 * theta + tail;
      }
      return h(theta);
    }
  }
  throw DomainError("transition_renyi: bad kind");
}

double transition_entropy(const MarkovSource& src) {
  require_level(src, AssumptionLevel::NonHidden, "entropy rate");
  return cgf_derivatives(src.lower_cgf(), 0.0).first;
}

double transition_varentropy(const MarkovSource& src) {
  require_level(src, AssumptionLevel::NonHidden, "varentropy rate");
  return cgf_derivatives(src.lower_cgf(), 0.0).second;
}

namespace {

struct EigenScaled {
  double log_value;
  std::vector<double> v;  // left eigenvector, min entry 1
};

EigenScaled left_min_normalized(std::size_t n, const std::vector<double>& logs) {
  LogEigenPair ep = log_perron_frobenius(n, logs);
  double mn = *std::min_element(ep.left.begin(), ep.left.end());
  for (double& x : ep.left) x /= mn;
  return {ep.log_value, std::move(ep.left)};
}

// log <v|w> from log-scale weights.
double log_inner(const std::vector<double>& v, const std::vector<double>& logw) {
  std::vector<double> terms;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (logw[i] != kNegInf) terms.push_back(std::log(v[i]) + logw[i]);
  }
  return log_sum_exp(terms);
}

// log of [sum_x P1(x,y)^{1+t}] per y.
std::vector<double> log_initial_column_power(const MarkovSource& src, double t) {
  std::vector<double> out(src.ny(), kNegInf);
  std::vector<double> terms;
  for (std::size_t y = 0; y < src.ny(); ++y) {
    terms.clear();
    for (std::size_t x = 0; x < src.nx(); ++x) {
      double p = src.initial()[src.w().state(x, y)];
      if (p > 0.0) terms.push_back((1.0 + t) * std::log(p));
    }
    if (!terms.empty()) out[y] = log_sum_exp(terms);
  }
  return out;
}

}  // namespace

CorrectionPair finite_corrections(const MarkovSource& src, const TransitionKind& kind,
                                  double theta) {
  require_theta(theta);
  if (theta == 0.0) return {0.0, 0.0};
  if (theta == -1.0) throw DomainError("finite_corrections: theta = -1 not supported");

  switch (kind.tag) {
    case TransitionKind::Tag::Lower: {
      require_level(src, AssumptionLevel::NonHidden, "lower corrections");
      const std::size_t s = src.w().states();
      std::vector<double> logs = tilted_log_entries(src.lower_cgf(), -theta);
      EigenScaled e = left_min_normalized(s, logs);
      std::vector<double> logw(s, kNegInf);
      for (std::size_t z = 0; z < s; ++z) {
        double p = src.initial()[z];
        if (p > 0.0) {
          logw[z] = (1.0 + theta) * std::log(p) -
                    theta * std::log(src.initial_y(src.w().y_of(z)));
        }
      }
      double li = log_inner(e.v, logw);
      double lmax = std::log(*std::max_element(e.v.begin(), e.v.end()));
      return {-li, -li + lmax};
    }
    case TransitionKind::Tag::Upper: {
      require_level(src, AssumptionLevel::StronglyNonHidden, "upper corrections");
      EigenScaled e = left_min_normalized(src.ny(), log_k_theta(src, theta));
      std::vector<double> colp = log_initial_column_power(src, theta);
      for (double& c : colp) {
        if (c != kNegInf) c /= (1.0 + theta);
      }
      double li = log_inner(e.v, colp);
      double lmax = std::log(*std::max_element(e.v.begin(), e.v.end()));
      return {-li, -li + lmax};
    }
    case TransitionKind::Tag::TwoParam: {
      require_level(src, AssumptionLevel::StronglyNonHidden, "two-parameter corrections");
      double tp = kind.theta_prime;
      if (!(tp > -1.0)) throw DomainError("two-parameter corrections: theta' <= -1");
      EigenScaled e = left_min_normalized(src.ny(), log_n_theta(src, theta, tp));
      std::vector<double> a_t = log_initial_column_power(src, theta);
      std::vector<double> a_tp = log_initial_column_power(src, tp);
      std::vector<double> logw(src.ny(), kNegInf);
      for (std::size_t y = 0; y < src.ny(); ++y) {
        if (a_t[y] != kNegInf) logw[y] = a_t[y] - theta / (1.0 + tp) * a_tp[y];
      }
      double li = log_inner(e.v, logw);
      double lmax = std::log(*std::max_element(e.v.begin(), e.v.end()));
      CorrectionPair xi = finite_corrections(src, TransitionKind::upper(), tp);
      if (theta > 0.0) {
        return {-li + theta * xi.lower, -li + lmax + theta * xi.upper};
      }
      return {-li + theta * xi.upper, -li + lmax + theta * xi.lower};
    }
  }
  throw DomainError("finite_corrections: bad kind");
}

StochasticMatrix optimal_v(const MarkovSource& src, double theta) {
  require_level(src, AssumptionLevel::StronglyNonHidden, "optimal conditioning chain");
  const std::size_t ny = src.ny();
  std::vector<double> logk = log_k_theta(src, theta);
  LogEigenPair ep = log_perron_frobenius(ny, logk);
  Matrix v(ny);
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t yp = 0; yp < ny; ++yp) {
      double lk = logk[y * ny + yp];
      if (lk == kNegInf) continue;
      v.at(y, yp) = std::exp(std::log(ep.left[y]) + lk - ep.log_value - std::log(ep.left[yp]));
    }
  // The columns are stochastic by construction; absorb rounding.
  for (std::size_t yp = 0; yp < ny; ++yp) {
    double col = 0.0;
    for (std::size_t y = 0; y < ny; ++y) col += v.at(y, yp);
    for (std::size_t y = 0; y < ny; ++y) v.at(y, yp) /= col;
  }
  return StochasticMatrix(std::move(v));
}

double transition_renyi_given_v(const MarkovSource& src, const StochasticMatrix& v,
                                double theta) {
  require_theta(theta);
  const std::size_t s = src.w().states();
  const std::size_t ny = src.ny();
  if (v.size() != ny) throw DomainError("transition_renyi_given_v: size mismatch");
  const Matrix& wy = src.y_marginal();
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t yp = 0; yp < ny; ++yp) {
      if (wy.at(y, yp) > 0.0 && v.at(y, yp) <= 0.0) {
        throw DomainError("transition_renyi_given_v: V misses support of the Y-marginal");
      }
    }
  auto g = [&](double t) {
    std::vector<double> logs(s * s, kNegInf);
    for (std::size_t d = 0; d < s; ++d)
      for (std::size_t c = 0; c < s; ++c) {
        double wv = src.w().matrix().at(d, c);
        if (wv > 0.0) {
          logs[d * s + c] = (1.0 + t) * std::log(wv) -
                            t * std::log(v.at(src.w().y_of(d), src.w().y_of(c)));
        }
      }
    return -log_perron_value(s, logs);
  };
  if (std::abs(theta) < kThetaZeroBand) {
    double d1 = central_derivative(g, 0.0);
    double d2 = central_second_derivative(g, 0.0);
    return d1 + 0.5 * d2 * theta;
  }
  return g(theta) / theta;
}

}  // namespace markovflb
