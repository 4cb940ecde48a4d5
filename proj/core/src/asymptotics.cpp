#include "markovflb/asymptotics.hpp"

#include <cmath>

#include "markovflb/numeric.hpp"
#include "markovflb/rate_inversion.hpp"

namespace markovflb {

namespace {

LdPair scaled_pair(const MeasureFamily& fam, double rate, bool clamp_half) {
  LdPair out;
  out.converse = exponent_scaled(fam, rate);
  out.achievability =
      exponent_scaled_grid(fam, rate, clamp_half ? -0.5 : fam.theta_min());
  if (!fam.degenerate()) {
    out.critical_rate = critical_rate(fam);
    out.tight = rate <= out.critical_rate + 1e-12;
  }
  return out;
}

}  // namespace

LdPair ld_source_exponents(const MarkovSource& src, double rate) {
  if (src.level() == AssumptionLevel::StronglyNonHidden) {
    MeasureFamily fam = MeasureFamily::from_source(src, TransitionKind::upper());
    return scaled_pair(fam, rate, /*clamp_half=*/true);
  }
  MeasureFamily fam = MeasureFamily::from_source(src, TransitionKind::lower());
  LdPair out;
  out.achievability = exponent_linear(fam, rate);
  out.converse = exponent_scaled(fam, rate);
  return out;
}

LdPair ld_channel_exponents(const MarkovSource& noise, double log_alphabet, double rate) {
  double source_rate = log_alphabet - rate;
  if (noise.ny() == 1) {
    MeasureFamily fam = MeasureFamily::from_source(noise, TransitionKind::lower());
    return scaled_pair(fam, source_rate, /*clamp_half=*/true);
  }
  return ld_source_exponents(noise, source_rate);
}

double moderate_deviation_coefficient(const MarkovSource& src, double delta) {
  double v = transition_varentropy(src);
  if (v < 1e-10) throw Degenerate("moderate deviation: varentropy rate vanishes");
  return delta * delta / (2.0 * v);
}

double second_order_source_log_m(const MarkovSource& src, long n, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("second order: eps must be in (0,1)");
  double h = transition_entropy(src);
  double v = transition_varentropy(src);
  if (v < 1e-10) throw Degenerate("second order: varentropy rate vanishes");
  return n * h + std::sqrt(n * v) * inverse_normal_cdf(1.0 - eps);
}

double second_order_channel_log_m(const MarkovSource& noise, double log_alphabet, long n,
                                  double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("second order: eps must be in (0,1)");
  double c = log_alphabet - transition_entropy(noise);
  double v = transition_varentropy(noise);
  if (v < 1e-10) throw Degenerate("second order: varentropy rate vanishes");
  return n * c + std::sqrt(n * v) * inverse_normal_cdf(eps);
}

}  // namespace markovflb
