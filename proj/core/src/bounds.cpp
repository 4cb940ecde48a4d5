#include "markovflb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "markovflb/numeric.hpp"
#include "markovflb/oracle.hpp"

namespace markovflb {

namespace {

constexpr double kThetaEps = 1e-6;

struct WeightedValue {
  double z;
  double mass;
};

// Distinct values of Z with masses, ascending, plus suffix tails.
struct Spectrum {
  std::vector<double> z;        // distinct, ascending
  std::vector<double> tail_ge;  // P(Z >= z[i])
  double z_max = 0.0;

  double tail_gt(double gamma) const {
    // P(Z > gamma): first index with z > gamma.
    auto it = std::upper_bound(z.begin(), z.end(), gamma);
    if (it == z.end()) return 0.0;
    return tail_ge[static_cast<std::size_t>(it - z.begin())];
  }
};

Spectrum build_spectrum(std::vector<WeightedValue> vals) {
  std::sort(vals.begin(), vals.end(),
            [](const WeightedValue& a, const WeightedValue& b) { return a.z < b.z; });
  Spectrum sp;
  for (const auto& v : vals) {
    if (!sp.z.empty() && v.z == sp.z.back()) {
      sp.tail_ge.back() += v.mass;  // temporarily per-value mass
    } else {
      sp.z.push_back(v.z);
      sp.tail_ge.push_back(v.mass);
    }
  }
  double acc = 0.0;
  for (std::size_t i = sp.z.size(); i-- > 0;) {
    acc += sp.tail_ge[i];
    sp.tail_ge[i] = acc;
  }
  sp.z_max = sp.z.empty() ? 0.0 : sp.z.back();
  return sp;
}

Spectrum self_information_spectrum(const JointDistribution& p) {
  std::vector<WeightedValue> vals;
  for (std::size_t x = 0; x < p.nx(); ++x)
    for (std::size_t y = 0; y < p.ny(); ++y) {
      double mass = p.at(x, y);
      if (mass == 0.0) continue;
      vals.push_back({std::log(p.marginal_y()[y]) - std::log(mass), mass});
    }
  return build_spectrum(std::move(vals));
}

Spectrum relative_spectrum(const JointDistribution& p, const Conditioner& q) {
  std::vector<WeightedValue> vals;
  for (std::size_t x = 0; x < p.nx(); ++x)
    for (std::size_t y = 0; y < p.ny(); ++y) {
      double mass = p.at(x, y);
      if (mass == 0.0) continue;
      if (q[y] <= 0.0) throw SupportViolation("conditioner misses part of supp(P_Y)");
      vals.push_back({std::log(q[y]) - std::log(mass), mass});
    }
  return build_spectrum(std::move(vals));
}

double clamp_log_prob(double lp) { return std::min(lp, 0.0); }

}  // namespace

double BoundResult::prob() const { return std::exp(std::min(log_prob, 0.0)); }

BoundResult src_ach_spectrum(const JointDistribution& p, double log_m) {
  Spectrum sp = self_information_spectrum(p);
  auto objective_log = [&](double gamma) {
    double tail = sp.tail_gt(gamma);
    double log_tail = tail > 0.0 ? std::log(tail) : kNegInf;
    return log_sum_exp(log_tail, gamma - log_m);
  };
  // Coarse grid plus the exact step points, then a golden polish around the
  // best cell; ties toward smaller gamma.
  double hi = std::max(sp.z_max, 0.0);
  double best_gamma = 0.0, best = objective_log(0.0);
  auto consider = [&](double g) {
    if (g < 0.0) return;
    double v = objective_log(g);
    if (v < best - 1e-15 || (std::abs(v - best) <= 1e-15 && g < best_gamma)) {
      best = v;
      best_gamma = g;
    }
  };
  for (int i = 0; i <= 256; ++i) consider(hi * i / 256.0);
  for (double z : sp.z) consider(z);
  double lo = std::max(0.0, best_gamma - hi / 256.0);
  double up = std::min(hi, best_gamma + hi / 256.0);
  consider(golden_max([&](double g) { return -objective_log(g); }, lo, up));

  BoundResult r;
  r.name = "src_ach_spectrum";
  r.is_upper_bound = true;
  r.gamma = best_gamma;
  r.log_prob = clamp_log_prob(best);
  return r;
}

BoundResult src_ach_gallager(const JointDistribution& p, double log_m) {
  auto exponent = [&](double t) {
    return (t * singleshot_renyi(p, RenyiKind::upper(), t) - t * log_m) / (1.0 + t);
  };
  double t_star = golden_max(exponent, -0.5, 0.0, 1e-13);
  double e = std::max(0.0, exponent(t_star));
  BoundResult r;
  r.name = "src_ach_gallager";
  r.is_upper_bound = true;
  r.theta = t_star;
  r.log_prob = clamp_log_prob(-e);
  return r;
}

BoundResult src_ach_loose(const JointDistribution& p, double log_m) {
  auto exponent = [&](double t) {
    return t * singleshot_renyi(p, RenyiKind::lower(), t) - t * log_m;
  };
  double t_star = golden_max(exponent, -1.0 + kThetaEps, 0.0, 1e-13);
  double e = exponent(t_star);
  double e_end = exponent(-1.0);  // order-0 endpoint has an explicit formula
  if (e_end > e) {
    e = e_end;
    t_star = -1.0;
  }
  e = std::max(0.0, e);
  BoundResult r;
  r.name = "src_ach_loose";
  r.is_upper_bound = true;
  r.theta = t_star;
  r.log_prob = clamp_log_prob(-e);
  return r;
}

BoundResult src_conv_spectrum(const JointDistribution& p, double log_m, const Conditioner& q) {
  Spectrum sp = relative_spectrum(p, q);
  // sup_gamma [P(Z > gamma) - M e^{-gamma}] equals the best limit
  // P(Z >= z_j) - M e^{-z_j} over step points (gamma >= 0).
  double best = 0.0, best_gamma = 0.0;
  for (std::size_t i = 0; i < sp.z.size(); ++i) {
    double g = sp.z[i];
    if (g < 0.0) continue;
    double v = sp.tail_ge[i] - std::exp(log_m - g);
    if (v > best) {
      best = v;
      best_gamma = g;
    }
  }
  BoundResult r;
  r.name = "src_conv_spectrum";
  r.is_upper_bound = false;
  r.gamma = best_gamma;
  r.log_prob = best > 0.0 ? std::log(std::min(best, 1.0)) : kNegInf;
  return r;
}

BoundResult src_conv_hypothesis(const JointDistribution& p, double log_m, const Conditioner& q) {
  struct Item {
    double profit;
    double cost;
  };
  std::vector<Item> items;
  for (std::size_t x = 0; x < p.nx(); ++x)
    for (std::size_t y = 0; y < p.ny(); ++y) {
      double mass = p.at(x, y);
      if (mass == 0.0) continue;
      items.push_back({mass, q[y]});
    }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    bool a_free = a.cost == 0.0, b_free = b.cost == 0.0;
    if (a_free != b_free) return a_free;
    if (a_free) return false;
    return a.profit * b.cost > b.profit * a.cost;
  });
  double budget = std::exp(log_m);
  double covered = 0.0;
  for (const Item& it : items) {
    if (it.cost == 0.0) {
      covered += it.profit;
      continue;
    }
    if (budget <= 0.0) break;
    double frac = std::min(1.0, budget / it.cost);
    covered += frac * it.profit;
    budget -= frac * it.cost;
  }
  double err = std::max(0.0, 1.0 - covered);
  BoundResult r;
  r.name = "src_conv_hypothesis";
  r.is_upper_bound = false;
  r.log_prob = err > 0.0 ? std::log(std::min(err, 1.0)) : kNegInf;
  return r;
}

namespace {

// Grid + Nelder-Mead minimization of f(s, theta~) over s > 0 and
// theta~ in (lo, hi); +inf marks infeasible points.
struct SaddleOpt {
  double value = std::numeric_limits<double>::infinity();
  double s = std::numeric_limits<double>::quiet_NaN();
  double theta_tilde = std::numeric_limits<double>::quiet_NaN();
  bool feasible = false;
};

SaddleOpt minimize_saddle(const std::function<double(double, double)>& f, double tt_lo,
                          double tt_hi) {
  SaddleOpt best;
  if (!(tt_hi > tt_lo)) return best;
  const int grid = 40;
  for (int i = 0; i < grid; ++i) {
    double s = std::exp(std::log(1e-3) + (std::log(10.0) - std::log(1e-3)) * i / (grid - 1));
    for (int j = 0; j < grid; ++j) {
      double tt = tt_lo + (tt_hi - tt_lo) * (j + 0.5) / grid;
      double v = f(s, tt);
      if (v < best.value) {
        best = {v, s, tt, true};
      }
    }
  }
  if (!best.feasible) return best;

  // Nelder-Mead in (log s, theta~), clipped to the feasible strip.
  auto eval = [&](double ls, double tt) {
    if (tt <= tt_lo || tt >= tt_hi) return std::numeric_limits<double>::infinity();
    return f(std::exp(ls), tt);
  };
  struct Pt {
    double ls, tt, v;
  };
  std::array<Pt, 3> simplex;
  double ls0 = std::log(best.s);
  double span = 0.1 * (tt_hi - tt_lo);
  simplex[0] = {ls0, best.theta_tilde, best.value};
  simplex[1] = {ls0 + 0.5, best.theta_tilde, eval(ls0 + 0.5, best.theta_tilde)};
  simplex[2] = {ls0, std::min(best.theta_tilde + span, tt_hi - 1e-12),
                eval(ls0, std::min(best.theta_tilde + span, tt_hi - 1e-12))};
  for (int it = 0; it < 200; ++it) {
    std::sort(simplex.begin(), simplex.end(), [](const Pt& a, const Pt& b) { return a.v < b.v; });
    if (simplex[2].v - simplex[0].v < 1e-12 * std::max(1.0, std::abs(simplex[0].v))) break;
    double cls = 0.5 * (simplex[0].ls + simplex[1].ls);
    double ctt = 0.5 * (simplex[0].tt + simplex[1].tt);
    double rls = cls + (cls - simplex[2].ls);
    double rtt = ctt + (ctt - simplex[2].tt);
    double rv = eval(rls, rtt);
    if (rv < simplex[0].v) {
      double els = cls + 2 * (cls - simplex[2].ls);
      double ett = ctt + 2 * (ctt - simplex[2].tt);
      double ev = eval(els, ett);
      simplex[2] = ev < rv ? Pt{els, ett, ev} : Pt{rls, rtt, rv};
    } else if (rv < simplex[1].v) {
      simplex[2] = {rls, rtt, rv};
    } else {
      double kls = cls + 0.5 * (simplex[2].ls - cls);
      double ktt = ctt + 0.5 * (simplex[2].tt - ctt);
      double kv = eval(kls, ktt);
      if (kv < simplex[2].v) {
        simplex[2] = {kls, ktt, kv};
      } else {
        for (int i = 1; i < 3; ++i) {
          simplex[i].ls = 0.5 * (simplex[i].ls + simplex[0].ls);
          simplex[i].tt = 0.5 * (simplex[i].tt + simplex[0].tt);
          simplex[i].v = eval(simplex[i].ls, simplex[i].tt);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), [](const Pt& a, const Pt& b) { return a.v < b.v; });
  if (simplex[0].v < best.value) {
    best = {simplex[0].v, std::exp(simplex[0].ls), simplex[0].tt, true};
  }
  return best;
}

}  // namespace

BoundResult src_conv_exponential(const JointDistribution& p, double log_m,
                                 const std::optional<Conditioner>& q) {
  const double rate = log_m;
  MeasureFamily fam = q ? MeasureFamily::from_joint(p, RenyiKind::relative(*q))
                        : MeasureFamily::from_joint(p, RenyiKind::upper());
  double a_star = a_of_R(fam, rate);
  double t_star = theta_of_a(fam, a_star);

  Conditioner cond = q ? *q : optimal_conditioner(p, t_star);
  auto h_rel = [&](double t) { return singleshot_renyi(p, RenyiKind::relative(cond), t); };
  double h_at_star = h_rel(t_star);

  auto objective = [&](double s, double tt) {
    double t2 = (1.0 + s) * tt;
    if (t2 <= -1.0 + kThetaEps) return std::numeric_limits<double>::infinity();
    double eps = (t_star - tt) * a_star - t_star * h_at_star + tt * h_rel(tt);
    double guard = 1.0 - 2.0 * std::exp(eps);
    if (!(guard > 0.0)) return std::numeric_limits<double>::infinity();
    double head = (1.0 + s) * tt * (h_rel(tt) - h_rel(t2));
    return (head - (1.0 + s) * std::log(guard)) / s;
  };
  SaddleOpt opt = minimize_saddle(objective, -1.0 + kThetaEps, t_star - 1e-9);

  BoundResult r;
  r.name = "src_conv_exponential";
  r.is_upper_bound = false;
  if (!opt.feasible) {
    r.vacuous = true;
    r.log_prob = kNegInf;
    return r;
  }
  r.s = opt.s;
  r.theta_tilde = opt.theta_tilde;
  r.theta = t_star;
  r.log_prob = clamp_log_prob(-opt.value);
  return r;
}

SourceTheorem source_theorem_from_string(const std::string& s) {
  if (s == "T5") return SourceTheorem::T5;
  if (s == "T6") return SourceTheorem::T6;
  if (s == "T7") return SourceTheorem::T7;
  if (s == "T8") return SourceTheorem::T8;
  throw DomainError("unknown source bound identifier: " + s);
}

std::string to_string(SourceTheorem t) {
  switch (t) {
    case SourceTheorem::T5: return "T5";
    case SourceTheorem::T6: return "T6";
    case SourceTheorem::T7: return "T7";
    case SourceTheorem::T8: return "T8";
  }
  return "?";
}

namespace {

// Maximize obj over theta in [lo, 0] on a log-spaced grid (dense near 0)
// refined by golden section.
std::pair<double, double> maximize_theta(const std::function<double(double)>& obj, double lo) {
  const int grid = 200;
  double best_t = -kThetaEps, best = obj(-kThetaEps);
  double lmin = std::log(kThetaEps), lmax = std::log(-lo);
  std::vector<double> ts;
  for (int i = 0; i < grid; ++i) {
    double t = -std::exp(lmin + (lmax - lmin) * i / (grid - 1));
    ts.push_back(t);
    double v = obj(t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  std::sort(ts.begin(), ts.end());
  auto it = std::lower_bound(ts.begin(), ts.end(), best_t);
  double bl = it == ts.begin() ? lo : *(it - 1);
  double bh = (it + 1) == ts.end() ? 0.0 : *(it + 1);
  double t_ref = golden_max(obj, bl, bh, 1e-12);
  double v_ref = obj(t_ref);
  if (v_ref > best) {
    best = v_ref;
    best_t = t_ref;
  }
  if (obj(0.0) > best) {
    best = obj(0.0);
    best_t = 0.0;
  }
  return {best_t, best};
}

BoundResult markov_converse(const MarkovSource& src, int n, double rate,
                            const TransitionKind& measure_kind, const MeasureFamily& fam,
                            const char* name) {
  double h = fam.entropy();
  if (!(rate > h)) throw OutOfRange(std::string(name) + ": rate at or below the entropy rate");
  double a_star = a_of_R(fam, rate);      // throws OutOfRange above the order-0 limit
  double t_star = theta_of_a(fam, a_star);

  const bool two_param = measure_kind.tag == TransitionKind::Tag::TwoParam;
  TransitionKind value_kind = two_param ? TransitionKind::two_param(t_star) : measure_kind;
  TransitionKind corr_kind = value_kind;

  auto h_val = [&](double t) { return transition_renyi(src, value_kind, t); };
  double h_star = two_param ? transition_renyi(src, TransitionKind::upper(), t_star)
                            : h_val(t_star);
  CorrectionPair corr_star = finite_corrections(src, corr_kind, t_star);

  auto objective = [&](double s, double tt) {
    double t2 = (1.0 + s) * tt;
    if (t2 <= -1.0 + kThetaEps) return std::numeric_limits<double>::infinity();
    CorrectionPair c_tt = finite_corrections(src, corr_kind, tt);
    CorrectionPair c_t2 = finite_corrections(src, corr_kind, t2);
    double h_tt = h_val(tt);
    double delta1 = (1.0 + s) * c_tt.upper - c_t2.lower;
    double delta2 = ((t_star - tt) * rate - (1.0 + tt) * corr_star.lower +
                     (1.0 + t_star) * c_tt.upper) /
                    (1.0 + t_star);
    double kernel = (t_star - tt) * a_star - t_star * h_star + tt * h_tt;
    double guard = 1.0 - 2.0 * std::exp((n - 1) * kernel + delta2);
    if (!(guard > 0.0)) return std::numeric_limits<double>::infinity();
    double head = (n - 1) * (1.0 + s) * tt * (h_tt - h_val(t2));
    return (head + delta1 - (1.0 + s) * std::log(guard)) / s;
  };
  SaddleOpt opt = minimize_saddle(objective, -1.0 + kThetaEps, t_star - 1e-9);

  BoundResult r;
  r.name = name;
  r.is_upper_bound = false;
  r.theta = t_star;
  if (!opt.feasible) {
    r.vacuous = true;
    r.log_prob = kNegInf;
    return r;
  }
  r.s = opt.s;
  r.theta_tilde = opt.theta_tilde;
  r.log_prob = std::min(0.0, -opt.value);
  return r;
}

}  // namespace

BoundResult src_markov_bound(const MarkovSource& src, int n, double rate, SourceTheorem which) {
  if (n < 1) throw DomainError("src_markov_bound: n must be >= 1");
  switch (which) {
    case SourceTheorem::T5: {
      auto obj = [&](double t) {
        double g = t * transition_renyi(src, TransitionKind::lower(), t);
        double corr = t == 0.0 ? 0.0 : finite_corrections(src, TransitionKind::lower(), t).lower;
        return -t * n * rate + (n - 1) * g + corr;
      };
      auto [t_star, e] = maximize_theta(obj, -1.0 + kThetaEps);
      BoundResult r;
      r.name = "T5";
      r.is_upper_bound = true;
      r.theta = t_star;
      r.log_prob = std::min(0.0, -std::max(0.0, e));
      return r;
    }
    case SourceTheorem::T7: {
      auto obj = [&](double t) {
        double g = t * transition_renyi(src, TransitionKind::upper(), t);
        double corr = t == 0.0 ? 0.0 : finite_corrections(src, TransitionKind::upper(), t).lower;
        return (-t * n * rate + (n - 1) * g) / (1.0 + t) + corr;
      };
      auto [t_star, e] = maximize_theta(obj, -0.5);
      BoundResult r;
      r.name = "T7";
      r.is_upper_bound = true;
      r.theta = t_star;
      r.log_prob = std::min(0.0, -std::max(0.0, e));
      return r;
    }
    case SourceTheorem::T6: {
      MeasureFamily fam = MeasureFamily::from_source(src, TransitionKind::lower());
      return markov_converse(src, n, rate, TransitionKind::lower(), fam, "T6");
    }
    case SourceTheorem::T8: {
      if (src.level() != AssumptionLevel::StronglyNonHidden) {
        throw AssumptionViolated("T8 needs the strongly non-hidden assumption");
      }
      MeasureFamily fam = MeasureFamily::from_source(src, TransitionKind::upper());
      return markov_converse(src, n, rate, TransitionKind::two_param(0.0), fam, "T8");
    }
  }
  throw DomainError("src_markov_bound: bad theorem");
}

ChannelBound channel_bound_from_string(const std::string& s) {
  if (s == "ach_T13") return ChannelBound::AchT13;
  if (s == "ach_T14") return ChannelBound::AchT14;
  if (s == "ach_T15_additive") return ChannelBound::AchT15Additive;
  if (s == "conv_T14c") return ChannelBound::ConvT14c;
  if (s == "conv_T16") return ChannelBound::ConvT16;
  if (s == "conv_spectrum_L24") return ChannelBound::ConvSpectrumL24;
  if (s == "conv_exp_T11") return ChannelBound::ConvExpT11;
  throw DomainError("unknown channel bound identifier: " + s);
}

std::string to_string(ChannelBound b) {
  switch (b) {
    case ChannelBound::AchT13: return "ach_T13";
    case ChannelBound::AchT14: return "ach_T14";
    case ChannelBound::AchT15Additive: return "ach_T15_additive";
    case ChannelBound::ConvT14c: return "conv_T14c";
    case ChannelBound::ConvT16: return "conv_T16";
    case ChannelBound::ConvSpectrumL24: return "conv_spectrum_L24";
    case ChannelBound::ConvExpT11: return "conv_exp_T11";
  }
  return "?";
}

BoundResult chan_bound(const MarkovSource& noise, const ChannelQuery& q, ChannelBound which,
                       std::size_t enumeration_cap) {
  const double rate = q.source_rate();
  auto rename = [&](BoundResult r, const char* name) {
    r.name = name;
    return r;
  };
  switch (which) {
    case ChannelBound::AchT13:
      return rename(src_markov_bound(noise, q.n, rate, SourceTheorem::T5), "ach_T13");
    case ChannelBound::AchT14:
      return rename(src_markov_bound(noise, q.n, rate, SourceTheorem::T7), "ach_T14");
    case ChannelBound::ConvT14c:
      return rename(src_markov_bound(noise, q.n, rate, SourceTheorem::T6), "conv_T14c");
    case ChannelBound::ConvT16:
      return rename(src_markov_bound(noise, q.n, rate, SourceTheorem::T8), "conv_T16");
    case ChannelBound::AchT15Additive: {
      if (noise.ny() != 1) {
        throw AssumptionViolated("additive achievability needs a singleton Y alphabet");
      }
      auto obj = [&](double t) {
        double g = t * transition_renyi(noise, TransitionKind::lower(), t);
        double corr =
            t == 0.0 ? 0.0 : finite_corrections(noise, TransitionKind::lower(), t).lower;
        return (-t * q.n * rate + (q.n - 1) * g + corr) / (1.0 + t);
      };
      auto [t_star, e] = maximize_theta(obj, -0.5);
      BoundResult r;
      r.name = "ach_T15_additive";
      r.is_upper_bound = true;
      r.theta = t_star;
      r.log_prob = std::min(0.0, -std::max(0.0, e));
      return r;
    }
    case ChannelBound::ConvSpectrumL24: {
      JointDistribution nj = brute_joint(noise, q.n, enumeration_cap).as_joint();
      Conditioner py(nj.marginal_y());
      return rename(src_conv_spectrum(nj, q.n * rate, py), "conv_spectrum_L24");
    }
    case ChannelBound::ConvExpT11: {
      JointDistribution nj = brute_joint(noise, q.n, enumeration_cap).as_joint();
      return rename(src_conv_exponential(nj, q.n * rate, std::nullopt), "conv_exp_T11");
    }
  }
  throw DomainError("chan_bound: bad identifier");
}

}  // namespace markovflb
