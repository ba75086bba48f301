#pragma once

#include <cstdint>
#include <vector>

#include "spincert/pulse.hpp"
#include "spincert/types.hpp"

namespace spincert {

// Finite-shot statistics on top of the protocol distributions: multinomial
// sampling, bootstrap confidence intervals, the certified-fidelity bound,
// and the classical Monte Carlo baseline. Readout is modeled as an ideal
// projective z-basis measurement.

using Histogram = std::vector<std::int64_t>;

// One multinomial draw of n shots from a probability simplex (entries may
// dip to -1e-12 from rounding and are clamped; total mass must be 1 within
// 1e-9). Reproducible from the seed.
Histogram sample_shots(const RVec& probabilities, std::int64_t n, std::uint64_t seed);

struct ShotRecord {
  std::vector<Histogram> counts;  // angle index -> length-d outcome histogram
  std::int64_t shots_per_angle = 0;
  std::uint64_t seed = 0;  // base seed; per-angle streams are derived from it
};

// Sample every probing angle of a protocol run (one derived stream per angle).
ShotRecord sample_protocol(const std::vector<ProtocolPoint>& points,
                           std::int64_t shots_per_angle, std::uint64_t seed);

struct ScoreEstimate {
  double point = 0.0;
  double ci_low = 0.0;   // point - 2 sigma_boot
  double ci_high = 0.0;  // point + 2 sigma_boot
  int n_bootstrap = 0;
  std::int64_t shots_per_angle = 0;
  std::uint64_t seed = 0;
};

// Point estimate: mean over angles of the positive-outcome frequency, where
// the positive outcomes are the upper half of the subspace levels. The CI is
// +/- twice the standard deviation of `n_bootstrap` histogram-level
// multinomial resamples (per-resample derived streams).
ScoreEstimate estimate_score(const ShotRecord& record, int d, const Subspace& sub,
                             int n_bootstrap = 1000);
// Full-space convenience overload.
ScoreEstimate estimate_score(const ShotRecord& record, int d);

// Certified-fidelity lower bound implied by a score P at K angles:
//   raw = (2P - 1) / (2^{-(K-1)} binom(K-1, (K-1)/2)),
// reported clamped to [0, 1] with the raw value retained.
struct FidelityBound {
  double value = 0.0;
  double raw = 0.0;
};

FidelityBound fidelity_lower_bound(double score, int K);

struct ClassicalMcResult {
  double max_score = 0.0;
  // score_histogram[c] counts samples that scored c/K (c positive angles of K)
  std::vector<std::int64_t> score_histogram;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo over classical precessing angular momenta: random initial
// phases phi0 against admissible probing-angle sets (the uniform grid,
// alternating with box-jittered grids that stay within the admissibility
// box). The observed maximum is (1 + 1/K)/2, attained on the uniform set,
// and can never be exceeded.
ClassicalMcResult classical_mc(int K, std::int64_t n_samples, std::uint64_t seed);

}  // namespace spincert
