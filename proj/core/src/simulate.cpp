#include "markovflb/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "markovflb/numeric.hpp"

namespace markovflb {

namespace {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed + kGoldenGamma) ^ mix64(stream * 0xD1B54A32D192ED03ULL + 1)) {}

std::uint64_t CounterRng::next_u64() {
  state_ += kGoldenGamma;
  return mix64(state_);
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::next_below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("next_below: zero bound");
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

namespace {

// Per-column CDFs for sampling transitions of the pair chain.
struct ChainSampler {
  std::size_t states;
  std::vector<double> initial_cdf;
  std::vector<double> column_cdf;  // states x states, column-major per source

  explicit ChainSampler(const MarkovSource& src) : states(src.w().states()) {
    initial_cdf.resize(states);
    double acc = 0.0;
    for (std::size_t z = 0; z < states; ++z) {
      acc += src.initial()[z];
      initial_cdf[z] = acc;
    }
    column_cdf.resize(states * states);
    for (std::size_t zp = 0; zp < states; ++zp) {
      acc = 0.0;
      for (std::size_t z = 0; z < states; ++z) {
        acc += src.w().matrix().at(z, zp);
        column_cdf[zp * states + z] = acc;
      }
    }
  }

  std::size_t draw_initial(CounterRng& rng) const {
    double u = rng.next_unit();
    return static_cast<std::size_t>(
        std::lower_bound(initial_cdf.begin(), initial_cdf.end(), u) - initial_cdf.begin());
  }
  std::size_t draw_step(CounterRng& rng, std::size_t zp) const {
    double u = rng.next_unit();
    auto begin = column_cdf.begin() + static_cast<long>(zp * states);
    return static_cast<std::size_t>(std::lower_bound(begin, begin + states, u) - begin);
  }
};

// Row-reduce an (n-k) x n matrix over Z_q and return a kernel basis.
std::vector<std::vector<int>> kernel_basis(std::vector<std::vector<int>> rows, int n, int q) {
  std::vector<int> inv(q, 0);
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (a * b % q == 1) inv[a] = b;

  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (int col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    int piv_inv = inv[rows[rank][col]];
    for (int j = 0; j < n; ++j) rows[rank][j] = rows[rank][j] * piv_inv % q;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      int factor = rows[r][col];
      for (int j = 0; j < n; ++j) {
        rows[r][j] = ((rows[r][j] - factor * rows[rank][j]) % q + q) % q;
      }
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<char> is_pivot(n, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<int>> basis;
  for (int free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<int> v(n, 0);
    v[free_col] = 1;
    for (std::size_t r = 0; r < rank; ++r) {
      v[pivot_col[r]] = (q - rows[r][free_col] % q) % q;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

SimResult mc_hash_coding(const MarkovSource& src, const SimConfig& cfg) {
  const int q = cfg.q;
  if (!is_prime(q)) throw InvalidPrime("mc_hash_coding: alphabet size must be prime");
  if (static_cast<int>(src.nx()) != q) {
    throw InvalidPrime("mc_hash_coding: source X alphabet must match the prime q");
  }
  const int n = cfg.n, k = cfg.k;
  if (k < 0 || k > n) throw DomainError("mc_hash_coding: need 0 <= k <= n");
  double coset_states = std::pow(static_cast<double>(q), k);
  if (coset_states > static_cast<double>(cfg.enumeration_cap)) {
    throw EnumerationTooLarge("mc_hash_coding: coset enumeration above cap");
  }

  ChainSampler sampler(src);
  const std::size_t ny = src.ny();
  // Log transition probabilities for scoring candidate noise sequences.
  auto log_initial = [&](std::size_t z) {
    double p = src.initial()[z];
    return p > 0.0 ? std::log(p) : kNegInf;
  };
  auto log_step = [&](std::size_t z, std::size_t zp) {
    double p = src.w().matrix().at(z, zp);
    return p > 0.0 ? std::log(p) : kNegInf;
  };

  std::atomic<long> errors{0};
  const unsigned workers = std::min<unsigned>(worker_count(), 64);
  auto run_range = [&](long lo, long hi) {
    long local = 0;
    std::vector<std::size_t> xs(n), ys(n);
    std::vector<std::vector<int>> rows(n - k, std::vector<int>(n));
    std::vector<int> cand(n), base_x(n);
    for (long trial = lo; trial < hi; ++trial) {
      CounterRng rng(cfg.seed, static_cast<std::uint64_t>(trial));
      // Draw the noise path.
      std::size_t z = sampler.draw_initial(rng);
      xs[0] = z / ny;
      ys[0] = z % ny;
      for (int i = 1; i < n; ++i) {
        z = sampler.draw_step(rng, z);
        xs[i] = z / ny;
        ys[i] = z % ny;
      }
      // Random parity-check matrix.
      for (int r = 0; r < n - k; ++r)
        for (int c = 0; c < n; ++c) rows[r][c] = static_cast<int>(rng.next_below(q));
      auto basis = kernel_basis(rows, n, q);

      // Score of the true sequence.
      double true_score = log_initial(xs[0] * ny + ys[0]);
      for (int i = 1; i < n; ++i) {
        true_score += log_step(xs[i] * ny + ys[i], xs[i - 1] * ny + ys[i - 1]);
      }
      for (int i = 0; i < n; ++i) base_x[i] = static_cast<int>(xs[i]);

      // Enumerate the coset x + span(basis) in Gray-less counter order.
      const std::size_t dim = basis.size();
      std::size_t combos = 1;
      bool overflow = false;
      for (std::size_t d = 0; d < dim; ++d) {
        if (combos > cfg.enumeration_cap / q) {
          overflow = true;
          break;
        }
        combos *= q;
      }
      if (overflow) throw EnumerationTooLarge("mc_hash_coding: kernel enumeration above cap");

      bool err = false;
      for (std::size_t idx = 1; idx < combos && !err; ++idx) {
        std::size_t rest = idx;
        for (int i = 0; i < n; ++i) cand[i] = base_x[i];
        for (std::size_t d = 0; d < dim; ++d) {
          int coef = static_cast<int>(rest % q);
          rest /= q;
          if (coef == 0) continue;
          for (int i = 0; i < n; ++i) cand[i] = (cand[i] + coef * basis[d][i]) % q;
        }
        double score = log_initial(static_cast<std::size_t>(cand[0]) * ny + ys[0]);
        for (int i = 1; i < n && score > kNegInf; ++i) {
          score += log_step(static_cast<std::size_t>(cand[i]) * ny + ys[i],
                            static_cast<std::size_t>(cand[i - 1]) * ny + ys[i - 1]);
        }
        if (score > true_score ||
            (cfg.tie == TieRule::Error && score == true_score && score > kNegInf)) {
          err = true;
        }
      }
      if (err) ++local;
    }
    errors += local;
  };

  if (workers <= 1 || cfg.trials < 256) {
    run_range(0, cfg.trials);
  } else {
    std::vector<std::thread> pool;
    long chunk = (cfg.trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      long lo = w * chunk, hi = std::min<long>(cfg.trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& t : pool) t.join();
  }

  SimResult out;
  out.trials = cfg.trials;
  out.errors = errors.load();
  out.mean = static_cast<double>(out.errors) / static_cast<double>(cfg.trials);
  out.stderr_ = std::sqrt(out.mean * (1.0 - out.mean) / static_cast<double>(cfg.trials));
  return out;
}

VarentropyEstimate empirical_varentropy_stats(const MarkovSource& src, int n, long trials,
                                              std::uint64_t seed) {
  ChainSampler sampler(src);
  const std::size_t ny = src.ny();
  const std::size_t states = src.w().states();

  // Forward filter weights for log P(y^n): alpha(x) = P(x, y_1..y_i).
  std::vector<double> log_w(states * states);
  for (std::size_t d = 0; d < states; ++d)
    for (std::size_t c = 0; c < states; ++c) {
      double p = src.w().matrix().at(d, c);
      log_w[d * states + c] = p > 0.0 ? std::log(p) : kNegInf;
    }

  std::vector<double> samples(static_cast<std::size_t>(trials));
  const unsigned workers = std::min<unsigned>(worker_count(), 64);
  auto run_range = [&](long lo, long hi) {
    std::vector<double> alpha(src.nx()), next(src.nx());
    for (long trial = lo; trial < hi; ++trial) {
      CounterRng rng(seed, static_cast<std::uint64_t>(trial));
      std::size_t z = sampler.draw_initial(rng);
      double log_joint = std::log(src.initial()[z]);
      // alpha over x for the forward filter at y_1.
      std::size_t y_prev = z % ny;
      for (std::size_t x = 0; x < src.nx(); ++x) {
        double p = src.initial()[x * ny + y_prev];
        alpha[x] = p > 0.0 ? std::log(p) : kNegInf;
      }
      std::size_t z_prev = z;
      for (int i = 1; i < n; ++i) {
        z = sampler.draw_step(rng, z_prev);
        log_joint += log_w[z * states + z_prev];
        std::size_t y = z % ny;
        for (std::size_t x = 0; x < src.nx(); ++x) {
          double acc = kNegInf;
          for (std::size_t xp = 0; xp < src.nx(); ++xp) {
            double step = log_w[(x * ny + y) * states + (xp * ny + y_prev)];
            if (step != kNegInf && alpha[xp] != kNegInf) {
              acc = log_sum_exp(acc, alpha[xp] + step);
            }
          }
          next[x] = acc;
        }
        alpha.swap(next);
        y_prev = y;
        z_prev = z;
      }
      double log_py = log_sum_exp(alpha);
      samples[static_cast<std::size_t>(trial)] = -(log_joint - log_py);
    }
  };
  if (workers <= 1 || trials < 256) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    long chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      long lo = w * chunk, hi = std::min<long>(trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& t : pool) t.join();
  }

  // Sample variance / n; standard error via the fourth central moment.
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(trials);
  double m2 = 0.0, m4 = 0.0;
  for (double s : samples) {
    double d = s - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(trials);
  m4 /= static_cast<double>(trials);
  VarentropyEstimate out;
  out.value = m2 / n;
  out.stderr_ = std::sqrt(std::max(0.0, m4 - m2 * m2) / static_cast<double>(trials)) / n;
  return out;
}

double empirical_varentropy(const MarkovSource& src, int n, long trials, std::uint64_t seed) {
  return empirical_varentropy_stats(src, n, trials, seed).value;
}

}  // namespace markovflb
