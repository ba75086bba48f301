#include "spincert/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spincert/rng.hpp"

namespace spincert {

namespace {

// Stream tags so the per-angle sampling and the bootstrap never share a
// random stream even under the same base seed.
constexpr std::uint64_t kAngleStream = 1;
constexpr std::uint64_t kBootstrapStream = 2;

std::vector<double> cdf_of(const RVec& probabilities) {
  const int d = static_cast<int>(probabilities.size());
  std::vector<double> cdf(static_cast<size_t>(d));
  double acc = 0.0;
  for (int i = 0; i < d; ++i) {
    const double p = probabilities(i);
    if (p < -1e-12)
      throw std::invalid_argument("negative probability " + std::to_string(p));
    acc += std::max(0.0, p);
    cdf[static_cast<size_t>(i)] = acc;
  }
  if (std::abs(acc - 1.0) > 1e-9)
    throw std::invalid_argument("probabilities must sum to 1, got " +
                                std::to_string(acc));
  return cdf;
}

}  // namespace

Histogram sample_shots(const RVec& probabilities, std::int64_t n, std::uint64_t seed) {
  const int d = static_cast<int>(probabilities.size());
  if (d < 1) throw std::invalid_argument("empty outcome distribution");
  if (n < 1) throw std::invalid_argument("shot count must be >= 1");
  const std::vector<double> cdf = cdf_of(probabilities);
  Xoshiro256pp rng(seed);
  Histogram hist(static_cast<size_t>(d), 0);
  for (std::int64_t s = 0; s < n; ++s)
    ++hist[static_cast<size_t>(sample_cdf(rng, cdf.data(), d))];
  return hist;
}

ShotRecord sample_protocol(const std::vector<ProtocolPoint>& points,
                           std::int64_t shots_per_angle, std::uint64_t seed) {
  if (points.empty()) throw std::invalid_argument("no protocol points to sample");
  ShotRecord record;
  record.shots_per_angle = shots_per_angle;
  record.seed = seed;
  record.counts.reserve(points.size());
  for (size_t k = 0; k < points.size(); ++k)
    record.counts.push_back(
        sample_shots(points[k].probabilities, shots_per_angle,
                     derive_seed(seed, {kAngleStream, static_cast<std::uint64_t>(k)})));
  return record;
}

ScoreEstimate estimate_score(const ShotRecord& record, int d, const Subspace& sub,
                             int n_bootstrap) {
  if (d < 2 || d % 2 != 0)
    throw UnsupportedDimension("score estimation needs even dimension, got " +
                               std::to_string(d));
  sub.validate(d);
  if (sub.size() % 2 != 0)
    throw UnsupportedDimension("score estimation needs an even subspace");
  if (record.counts.empty())
    throw std::invalid_argument("shot record covers no angles");
  if (record.shots_per_angle < 1)
    throw std::invalid_argument("shots_per_angle must be >= 1");
  if (n_bootstrap < 1)
    throw std::invalid_argument("n_bootstrap must be >= 1");

  const int K = static_cast<int>(record.counts.size());
  const std::int64_t n = record.shots_per_angle;
  const int pos_lo = sub.lo + sub.size() / 2;
  const int pos_hi = sub.hi;

  // Point estimate and the per-angle empirical CDFs the bootstrap draws from.
  double point = 0.0;
  std::vector<std::vector<double>> cdf(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) {
    const Histogram& h = record.counts[static_cast<size_t>(k)];
    if (static_cast<int>(h.size()) != d)
      throw std::invalid_argument("histogram length does not match dimension");
    std::int64_t total = 0;
    std::int64_t positive = 0;
    std::vector<double>& c = cdf[static_cast<size_t>(k)];
    c.resize(static_cast<size_t>(d));
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
      const std::int64_t cnt = h[static_cast<size_t>(i)];
      if (cnt < 0) throw std::invalid_argument("negative count in histogram");
      total += cnt;
      if (i >= pos_lo && i <= pos_hi) positive += cnt;
      acc += static_cast<double>(cnt) / static_cast<double>(n);
      c[static_cast<size_t>(i)] = acc;
    }
    if (total != n)
      throw std::invalid_argument("histogram sums to " + std::to_string(total) +
                                  ", expected " + std::to_string(n));
    point += static_cast<double>(positive) / static_cast<double>(n);
  }
  point /= K;

  // Histogram-level multinomial resamples; only the positive-window mass of
  // each resample matters, so the counts are tallied without materializing
  // the resampled histograms.
  std::vector<double> boot(static_cast<size_t>(n_bootstrap));
  for (int b = 0; b < n_bootstrap; ++b) {
    Xoshiro256pp rng(
        derive_seed(record.seed, {kBootstrapStream, static_cast<std::uint64_t>(b)}));
    double score = 0.0;
    for (int k = 0; k < K; ++k) {
      const double* c = cdf[static_cast<size_t>(k)].data();
      std::int64_t positive = 0;
      for (std::int64_t s = 0; s < n; ++s) {
        const int bin = sample_cdf(rng, c, d);
        if (bin >= pos_lo && bin <= pos_hi) ++positive;
      }
      score += static_cast<double>(positive) / static_cast<double>(n);
    }
    boot[static_cast<size_t>(b)] = score / K;
  }
  double mean = 0.0;
  for (double v : boot) mean += v;
  mean /= n_bootstrap;
  double var = 0.0;
  for (double v : boot) var += (v - mean) * (v - mean);
  var /= n_bootstrap;
  const double sigma = std::sqrt(var);

  ScoreEstimate est;
  est.point = point;
  est.ci_low = point - 2.0 * sigma;
  est.ci_high = point + 2.0 * sigma;
  est.n_bootstrap = n_bootstrap;
  est.shots_per_angle = n;
  est.seed = record.seed;
  return est;
}

ScoreEstimate estimate_score(const ShotRecord& record, int d) {
  return estimate_score(record, d, Subspace::full(d));
}

FidelityBound fidelity_lower_bound(double score, int K) {
  if (K < 3 || K % 2 == 0)
    throw UnsupportedRegime("fidelity bound needs odd K >= 3, got " +
                            std::to_string(K));
  // binom(K-1, (K-1)/2), exact in double for any practical K
  double binom = 1.0;
  const int half = (K - 1) / 2;
  for (int i = 1; i <= half; ++i)
    binom = binom * (half + i) / i;
  const double denom = std::pow(2.0, -(K - 1)) * binom;
  FidelityBound out;
  out.raw = (2.0 * score - 1.0) / denom;
  out.value = std::clamp(out.raw, 0.0, 1.0);
  return out;
}

ClassicalMcResult classical_mc(int K, std::int64_t n_samples, std::uint64_t seed) {
  if (K < 3 || K % 2 == 0)
    throw UnsupportedRegime("classical baseline needs odd K >= 3, got " +
                            std::to_string(K));
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");

  std::vector<double> grid(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) grid[static_cast<size_t>(k)] = 2.0 * kPi * k / K;
  const double half = kPi / (2.0 * K);

  Xoshiro256pp rng(seed);
  ClassicalMcResult out;
  out.n_samples = n_samples;
  out.seed = seed;
  out.score_histogram.assign(static_cast<size_t>(K + 1), 0);

  for (std::int64_t i = 0; i < n_samples; ++i) {
    const double phi0 = rng.uniform(0.0, 2.0 * kPi);
    int positive = 0;
    if (i % 2 == 0) {
      // the uniform grid itself (this is where the bound is attained)
      for (int k = 0; k < K; ++k)
        if (std::cos(phi0 + grid[static_cast<size_t>(k)]) >= 0.0) ++positive;
    } else {
      // a random admissible set: jitter each angle inside the box that
      // keeps every half-turn gap below pi
      for (int k = 0; k < K; ++k) {
        const double ang = grid[static_cast<size_t>(k)] + rng.uniform(-half, half);
        if (std::cos(phi0 + ang) >= 0.0) ++positive;
      }
    }
    ++out.score_histogram[static_cast<size_t>(positive)];
    const double score = static_cast<double>(positive) / K;
    if (score > out.max_score) out.max_score = score;
  }
  return out;
}

}  // namespace spincert
