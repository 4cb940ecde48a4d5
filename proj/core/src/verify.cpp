#include "markovflb/verify.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "markovflb/bounds.hpp"
#include "markovflb/conversion.hpp"
#include "markovflb/numeric.hpp"
#include "markovflb/oracle.hpp"
#include "markovflb/simulate.hpp"

namespace markovflb {

namespace {

struct Margin {
  double worst = std::numeric_limits<double>::infinity();
  std::string where;

  void update(double slack, const std::string& ctx) {
    if (slack < worst) {
      worst = slack;
      where = ctx;
    }
  }
};

double uniform_in(CounterRng& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_unit();
}

// Random strongly non-hidden pair chain on {0,1} x {0,1}: the conditional
// noise columns are permutations of a per-(y',y) base distribution.
MarkovSource random_snh_source(CounterRng& rng) {
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

JointDistribution random_joint(CounterRng& rng, std::size_t nx, std::size_t ny) {
  std::vector<double> p(nx * ny);
  double tot = 0.0;
  for (auto& v : p) {
    v = uniform_in(rng, 0.05, 1.0);
    tot += v;
  }
  for (auto& v : p) v /= tot;
  return JointDistribution(nx, ny, std::move(p));
}

CheckResult check_sandwich(std::uint64_t seed) {
  CounterRng rng(seed, 1);
  Margin m;
  const double tol = 1e-9;
  bool pass = true;
  const double thetas[] = {-0.7, -0.3, 0.5, 1.5};
  const double theta_primes[] = {-0.5, 0.4};
  for (int chain = 0; chain < 50; ++chain) {
    MarkovSource src = random_snh_source(rng);
    for (int n = 2; n <= 8; ++n) {
      ExhaustiveJoint j = brute_joint(src, n);
      JointDistribution nj = j.as_joint();
      for (int ti = 0; ti < 4; ++ti) {
        double t = thetas[ti];
        // Lower sandwich on theta-scaled values.
        {
          double gn = t * singleshot_renyi(nj, RenyiKind::lower(), t);
          double gw = t * transition_renyi(src, TransitionKind::lower(), t);
          CorrectionPair c = finite_corrections(src, TransitionKind::lower(), t);
          std::ostringstream ctx;
          ctx << "lower chain=" << chain << " n=" << n << " theta=" << t;
          m.update(gn - ((n - 1) * gw + c.lower) + tol, ctx.str() + " lo");
          m.update((n - 1) * gw + c.upper - gn + tol, ctx.str() + " hi");
          if (gn < (n - 1) * gw + c.lower - tol || gn > (n - 1) * gw + c.upper + tol) {
            pass = false;
          }
        }
        // Upper sandwich on theta/(1+theta)-scaled values.
        {
          double scale = t / (1.0 + t);
          double gn = scale * singleshot_renyi(nj, RenyiKind::upper(), t);
          double gw = scale * transition_renyi(src, TransitionKind::upper(), t);
          CorrectionPair c = finite_corrections(src, TransitionKind::upper(), t);
          std::ostringstream ctx;
          ctx << "upper chain=" << chain << " n=" << n << " theta=" << t;
          m.update(gn - ((n - 1) * gw + c.lower) + tol, ctx.str() + " lo");
          m.update((n - 1) * gw + c.upper - gn + tol, ctx.str() + " hi");
          if (gn < (n - 1) * gw + c.lower - tol || gn > (n - 1) * gw + c.upper + tol) {
            pass = false;
          }
        }
        // Two-parameter sandwich on theta-scaled values.
        for (double tp : theta_primes) {
          double gn = t * singleshot_renyi(nj, RenyiKind::two_param(tp), t);
          double gw = t * transition_renyi(src, TransitionKind::two_param(tp), t);
          CorrectionPair c = finite_corrections(src, TransitionKind::two_param(tp), t);
          std::ostringstream ctx;
          ctx << "two-param chain=" << chain << " n=" << n << " theta=" << t
              << " theta'=" << tp;
          m.update(gn - ((n - 1) * gw + c.lower) + tol, ctx.str() + " lo");
          m.update((n - 1) * gw + c.upper - gn + tol, ctx.str() + " hi");
          if (gn < (n - 1) * gw + c.lower - tol || gn > (n - 1) * gw + c.upper + tol) {
            pass = false;
          }
        }
      }
    }
  }
  return {"sandwich", pass, m.worst, m.where};
}

CheckResult check_cgf_bridge(std::uint64_t seed) {
  CounterRng rng(seed, 2);
  Margin m;
  bool pass = true;
  const double tol = 1e-10;
  for (int rep = 0; rep < 20; ++rep) {
    // Single shot: theta H(P|Q) = -phi(-theta) for Z = log(Q/P).
    JointDistribution p = random_joint(rng, 2, 3);
    std::vector<double> q(3);
    double tot = 0.0;
    for (auto& v : q) {
      v = uniform_in(rng, 0.1, 1.0);
      tot += v;
    }
    for (auto& v : q) v /= tot;
    for (double t : {-0.8, -0.4, 0.3, 1.2, 2.5}) {
      double lhs = t * singleshot_renyi(p, RenyiKind::relative(Conditioner(q)), t);
      std::vector<double> terms;
      for (std::size_t x = 0; x < p.nx(); ++x)
        for (std::size_t y = 0; y < p.ny(); ++y) {
          double mass = p.at(x, y);
          if (mass == 0.0) continue;
          double z = std::log(q[y]) - std::log(mass);
          terms.push_back(std::log(mass) + (-t) * z);
        }
      double phi = log_sum_exp(terms);
      double slack = tol - std::abs(lhs + phi);
      m.update(slack, "single-shot rep=" + std::to_string(rep) + " theta=" + std::to_string(t));
      if (slack < 0) pass = false;
    }
    // Transition: theta H_lower = -phi(-theta) through the CGF module.
    MarkovSource src = random_snh_source(rng);
    for (double t : {-0.6, -0.2, 0.4, 1.5}) {
      double lhs = t * transition_renyi(src, TransitionKind::lower(), t);
      double phi = cgf(src.lower_cgf(), -t);
      double slack = tol - std::abs(lhs + phi);
      m.update(slack, "transition rep=" + std::to_string(rep) + " theta=" + std::to_string(t));
      if (slack < 0) pass = false;
    }
    // Convexity of phi on random triples.
    for (int c = 0; c < 4; ++c) {
      double r1 = uniform_in(rng, -1.5, 1.5);
      double r2 = uniform_in(rng, -1.5, 1.5);
      if (r1 > r2) std::swap(r1, r2);
      double lam = uniform_in(rng, 0.05, 0.95);
      double mid = lam * r1 + (1 - lam) * r2;
      double lhs = cgf(src.lower_cgf(), mid);
      double rhs = lam * cgf(src.lower_cgf(), r1) + (1 - lam) * cgf(src.lower_cgf(), r2);
      double slack = rhs - lhs + 1e-9;
      m.update(slack, "convexity rep=" + std::to_string(rep));
      if (slack < 0) pass = false;
    }
  }
  return {"cgf-bridge", pass, m.worst, m.where};
}

CheckResult check_interleaving(std::uint64_t seed) {
  CounterRng rng(seed, 3);
  Margin m;
  bool pass = true;
  for (int rep = 0; rep < 30; ++rep) {
    JointDistribution p = random_joint(rng, 3, 2);
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      double lo = singleshot_renyi(p, RenyiKind::lower(), 1.0 / (1.0 - t) - 1.0);
      double up = singleshot_renyi(p, RenyiKind::upper(), 1.0 / (1.0 - t) - 1.0);
      double hi = singleshot_renyi(p, RenyiKind::lower(), t);
      m.update(up - lo, "interleave-left rep=" + std::to_string(rep));
      m.update(hi - up, "interleave-right rep=" + std::to_string(rep));
      if (up < lo - 1e-12 || hi < up - 1e-12) pass = false;
    }
  }
  return {"interleaving", pass, m.worst, m.where};
}

CheckResult check_attainment(std::uint64_t seed) {
  CounterRng rng(seed, 4);
  Margin m;
  bool pass = true;
  for (int rep = 0; rep < 20; ++rep) {
    JointDistribution p = random_joint(rng, 3, 3);
    for (double t : {-0.7, -0.3, 0.5, 1.0, 2.0}) {
      Conditioner q = optimal_conditioner(p, t);
      double via_q = singleshot_renyi(p, RenyiKind::relative(q), t);
      double up = singleshot_renyi(p, RenyiKind::upper(), t);
      double slack = 1e-10 - std::abs(via_q - up);
      m.update(slack, "single-shot rep=" + std::to_string(rep) + " theta=" + std::to_string(t));
      if (slack < 0) pass = false;
    }
    MarkovSource src = random_snh_source(rng);
    for (double t : {-0.5, 0.5, 1.5}) {
      StochasticMatrix v = optimal_v(src, t);
      double via_v = transition_renyi_given_v(src, v, t);
      double up = transition_renyi(src, TransitionKind::upper(), t);
      double slack = 1e-9 - std::abs(via_v - up);
      m.update(slack, "transition rep=" + std::to_string(rep) + " theta=" + std::to_string(t));
      if (slack < 0) pass = false;
    }
  }
  return {"attainment", pass, m.worst, m.where};
}

CheckResult check_ordering(std::uint64_t seed) {
  CounterRng rng(seed, 5);
  Margin m;
  bool pass = true;
  for (int rep = 0; rep < 15; ++rep) {
    JointDistribution p = random_joint(rng, 3, 2);
    double prev_lo = std::numeric_limits<double>::infinity();
    double prev_up = std::numeric_limits<double>::infinity();
    for (double t = -0.9; t <= 3.0; t += 0.15) {
      double lo = singleshot_renyi(p, RenyiKind::lower(), t);
      double up = singleshot_renyi(p, RenyiKind::upper(), t);
      m.update(up - lo + 1e-11, "H_up >= H_down rep=" + std::to_string(rep));
      m.update(prev_lo - lo + 1e-9, "H_down monotone rep=" + std::to_string(rep));
      m.update(prev_up - up + 1e-9, "H_up monotone rep=" + std::to_string(rep));
      if (up < lo - 1e-11 || lo > prev_lo + 1e-9 || up > prev_up + 1e-9) pass = false;
      prev_lo = lo;
      prev_up = up;
    }
    // Two-parameter measure is maximized at theta' = theta.
    for (double t : {-0.5, 0.8}) {
      double at_t = singleshot_renyi(p, RenyiKind::two_param(t), t);
      for (double tp : {-0.8, -0.3, 0.2, 1.0, 2.0}) {
        double v = singleshot_renyi(p, RenyiKind::two_param(tp), t);
        m.update(at_t - v + 1e-9, "two-param max rep=" + std::to_string(rep));
        if (v > at_t + 1e-9) pass = false;
      }
    }
    // Gallager bound dominates the loose bound.
    for (double log_m : {0.3, 0.8, 1.2}) {
      double g = src_ach_gallager(p, log_m).log_prob;
      double l = src_ach_loose(p, log_m).log_prob;
      m.update(l - g + 1e-10, "gallager<=loose rep=" + std::to_string(rep));
      if (g > l + 1e-10) pass = false;
    }
  }
  return {"ordering", pass, m.worst, m.where};
}

CheckResult check_convergence(std::uint64_t seed) {
  CounterRng rng(seed, 6);
  Margin m;
  bool pass = true;
  for (int rep = 0; rep < 10; ++rep) {
    MarkovSource src = random_snh_source(rng);
    for (double t : {-0.4, 0.8}) {
      double hw = transition_renyi(src, TransitionKind::lower(), t);
      CorrectionPair c = finite_corrections(src, TransitionKind::lower(), t);
      double envelope = std::max(std::abs(c.lower), std::abs(c.upper)) + std::abs(t * hw);
      double gap2 = 0.0, gap8 = 0.0;
      for (int n : {2, 8}) {
        ExhaustiveJoint j = brute_joint(src, n);
        double hn = singleshot_renyi(j.as_joint(), RenyiKind::lower(), t) / n;
        double gap = std::abs(hn - hw);
        double bound = envelope / (std::abs(t) * n);
        m.update(bound - gap, "envelope rep=" + std::to_string(rep) + " n=" + std::to_string(n));
        if (gap > bound) pass = false;
        (n == 2 ? gap2 : gap8) = gap;
      }
      m.update(gap2 - gap8 + 1e-9, "gap shrinks rep=" + std::to_string(rep));
      if (gap8 > gap2 + 1e-9) pass = false;
    }
  }
  return {"convergence", pass, m.worst, m.where};
}

CheckResult check_reproducibility(std::uint64_t seed) {
  MarkovSource ge = make_preset("gilbert-elliott:0.1,0.1,0.1,0.4").source.value();
  SimConfig cfg;
  cfg.trials = 2000;
  cfg.seed = seed;
  cfg.n = 10;
  cfg.k = 4;
  cfg.q = 2;
  SimResult a = mc_hash_coding(ge, cfg);
  SimResult b = mc_hash_coding(ge, cfg);
  bool pass = a.errors == b.errors && a.mean == b.mean;
  double v1 = empirical_varentropy(ge, 50, 2000, seed);
  double v2 = empirical_varentropy(ge, 50, 2000, seed);
  pass = pass && (v1 == v2);
  return {"reproducibility", pass, pass ? 0.0 : -1.0,
          pass ? "identical seeds give identical outputs" : "outputs differ across runs"};
}

}  // namespace

std::vector<CheckResult> run_verification_suite(const std::string& suite, std::uint64_t seed) {
  std::vector<CheckResult> out;
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  if (want("sandwich")) out.push_back(check_sandwich(seed));
  if (want("cgf-bridge")) out.push_back(check_cgf_bridge(seed));
  if (want("interleaving")) out.push_back(check_interleaving(seed));
  if (want("attainment")) out.push_back(check_attainment(seed));
  if (want("ordering")) out.push_back(check_ordering(seed));
  if (want("convergence")) out.push_back(check_convergence(seed));
  if (want("reproducibility")) out.push_back(check_reproducibility(seed));
  if (out.empty()) throw DomainError("unknown verification suite: " + suite);
  return out;
}

std::string report_to_json(const std::vector<CheckResult>& checks) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : checks) {
    j.push_back({{"check", c.name},
                 {"pass", c.pass},
                 {"margin", c.margin},
                 {"detail", c.detail}});
  }
  return j.dump(2);
}

}  // namespace markovflb
