#include "markovflb/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "markovflb/numeric.hpp"

namespace markovflb {

ExhaustiveJoint::ExhaustiveJoint(std::size_t nx, std::size_t ny, int n, std::vector<double> p)
    : nx_(nx), ny_(ny), n_(n), p_(std::move(p)) {
  std::size_t expect = 1;
  for (int i = 0; i < n; ++i) expect *= nx_ * ny_;
  if (p_.size() != expect) throw DomainError("ExhaustiveJoint: size mismatch");
  double total = 0.0;
  for (double v : p_) total += v;
  if (std::abs(total - 1.0) > 1e-10) {
    throw DomainError("ExhaustiveJoint: mass " + std::to_string(total));
  }
}

JointDistribution ExhaustiveJoint::as_joint() const {
  std::size_t xn = 1, yn = 1;
  for (int i = 0; i < n_; ++i) {
    xn *= nx_;
    yn *= ny_;
  }
  std::vector<double> q(xn * yn, 0.0);
  const std::size_t s = nx_ * ny_;
  for (std::size_t seq = 0; seq < p_.size(); ++seq) {
    if (p_[seq] == 0.0) continue;
    std::size_t xi = 0, yi = 0, rest = seq;
    // big-endian digits; peel from the least significant end and rebuild
    std::size_t xpow = 1, ypow = 1;
    for (int i = 0; i < n_; ++i) {
      std::size_t z = rest % s;
      rest /= s;
      xi += (z / ny_) * xpow;
      yi += (z % ny_) * ypow;
      xpow *= nx_;
      ypow *= ny_;
    }
    q[xi * yn + yi] += p_[seq];
  }
  return JointDistribution(xn, yn, std::move(q));
}

ExhaustiveJoint brute_joint(const MarkovSource& src, int n, std::size_t state_cap) {
  if (n < 1) throw DomainError("brute_joint: n must be >= 1");
  const std::size_t s = src.w().states();
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) {
    if (count > state_cap / s) throw EnumerationTooLarge("brute_joint: state count above cap");
    count *= s;
  }
  std::vector<double> cur(s);
  for (std::size_t z = 0; z < s; ++z) cur[z] = src.initial()[z];
  for (int step = 2; step <= n; ++step) {
    std::vector<double> next(cur.size() * s, 0.0);
    for (std::size_t prefix = 0; prefix < cur.size(); ++prefix) {
      double mass = cur[prefix];
      if (mass == 0.0) continue;
      std::size_t zprev = prefix % s;
      for (std::size_t z = 0; z < s; ++z) {
        double w = src.w().matrix().at(z, zprev);
        if (w > 0.0) next[prefix * s + z] = mass * w;
      }
    }
    cur = std::move(next);
  }
  return ExhaustiveJoint(src.nx(), src.ny(), n, std::move(cur));
}

double brute_renyi_n(const ExhaustiveJoint& j, const RenyiKind& kind, double theta) {
  return singleshot_renyi(j.as_joint(), kind, theta);
}

double brute_optimal_source_error(const ExhaustiveJoint& j, int m) {
  JointDistribution joint = j.as_joint();
  const std::size_t xn = joint.nx(), yn = joint.ny();
  if (xn > 12 || m > 4) {
    throw EnumerationTooLarge("brute_optimal_source_error: instance too large");
  }
  if (static_cast<std::size_t>(m) >= xn) return 0.0;

  // Enumerate set partitions of X^n into at most m blocks as
  // restricted-growth strings; MAP decoding scores each bin per y.
  std::vector<int> assign(xn, 0);
  double best = 1.0;
  std::vector<double> binmax(static_cast<std::size_t>(m));

  struct Frame {
    std::size_t pos;
    int used;
  };
  // Iterative depth-first enumeration.
  std::vector<int> label(xn, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int used) {
    if (pos == xn) {
      double covered = 0.0;
      for (std::size_t y = 0; y < yn; ++y) {
        std::fill(binmax.begin(), binmax.end(), 0.0);
        for (std::size_t x = 0; x < xn; ++x) {
          double v = joint.at(x, y);
          int b = label[x];
          if (v > binmax[b]) binmax[b] = v;
        }
        for (int b = 0; b < m; ++b) covered += binmax[b];
      }
      best = std::min(best, 1.0 - covered);
      return;
    }
    int limit = std::min(used + 1, m);
    for (int b = 0; b < limit; ++b) {
      label[pos] = b;
      rec(pos + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace markovflb
