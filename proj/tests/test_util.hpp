#pragma once

#include <cmath>
#include <vector>

#include "markovflb/linalg.hpp"
#include "markovflb/simulate.hpp"
#include "markovflb/transition.hpp"

namespace testutil {

using namespace markovflb;

inline Matrix matrix2(double a00, double a01, double a10, double a11) {
  Matrix m(2);
  m.at(0, 0) = a00;
  m.at(0, 1) = a01;
  m.at(1, 0) = a10;
  m.at(1, 1) = a11;
  return m;
}

inline double uniform_in(CounterRng& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_unit();
}

// Strongly non-hidden random chain on {0,1} x {0,1} (permuted noise columns).
inline MarkovSource random_snh_source(CounterRng& rng) {
  Matrix wy(2);
  for (int yp = 0; yp < 2; ++yp) {
    double a = uniform_in(rng, 0.1, 0.9);
    wy.at(0, yp) = a;
    wy.at(1, yp) = 1.0 - a;
  }
  Matrix pair(4);
  for (int yp = 0; yp < 2; ++yp)
    for (int y = 0; y < 2; ++y) {
      double b0 = uniform_in(rng, 0.1, 0.9);
      for (int xp = 0; xp < 2; ++xp) {
        bool swap = rng.next_unit() < 0.5;
        double c0 = swap ? 1.0 - b0 : b0;
        pair.at(0 * 2 + y, xp * 2 + yp) = wy.at(y, yp) * c0;
        pair.at(1 * 2 + y, xp * 2 + yp) = wy.at(y, yp) * (1.0 - c0);
      }
    }
  std::vector<double> init(4);
  double tot = 0.0;
  for (auto& v : init) {
    v = uniform_in(rng, 0.1, 1.0);
    tot += v;
  }
  for (auto& v : init) v /= tot;
  return MarkovSource(PairTransitionMatrix(2, 2, std::move(pair)), ProbVector(init));
}

inline JointDistribution random_joint(CounterRng& rng, std::size_t nx, std::size_t ny) {
  std::vector<double> p(nx * ny);
  double tot = 0.0;
  for (auto& v : p) {
    v = uniform_in(rng, 0.05, 1.0);
    tot += v;
  }
  for (auto& v : p) v /= tot;
  return JointDistribution(nx, ny, std::move(p));
}

// Binary entropy in nats.
inline double h_nats(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

}  // namespace testutil
