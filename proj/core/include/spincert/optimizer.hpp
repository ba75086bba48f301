#pragma once

#include <cstdint>
#include <vector>

#include "spincert/protocol.hpp"

namespace spincert {

// Gradient of the maximal quantum score (top eigenvalue of Q) with respect
// to each probing angle, by Hellmann-Feynman:
//   dP/dphi_k = Re <v| (i/2K) e^{-i phi_k I_z} [sgn I_x, I_z] e^{+i phi_k I_z} |v>.
// Requires a non-degenerate top eigenvalue (gap > 1e-8) and throws
// GradientUndefined otherwise -- except when Q is a multiple of the identity
// (d <= K regime), where the score is constant and the gradient is exactly
// zero.
RVec score_gradient(const SpinSystem& sys, const AngleSet& angles);

struct OptimizationRun {
  int d = 0;
  int K = 0;
  AngleSet initial_angles;
  AngleSet final_angles;  // raw box coordinates (|phi_k - 2pi k/K| <= pi/2K)
  double final_score = 0.0;
  QuditState final_state;  // top eigenvector of Q at final_angles
  int iterations = 0;
  bool converged = false;
  int start_index = 0;
};

// Projected gradient ascent over angle sets confined to the box
// |phi_k - 2pi k/K| <= pi/(2K) (which keeps the classical bound applicable),
// with backtracking line search (initial step 0.05 rad, shrink x0.5, accept
// on improvement) and multi-start initial points drawn uniformly inside the
// box from per-start derived streams. Deterministic for fixed (seed,
// n_starts); the best start wins, ties broken by lower start index.
OptimizationRun optimize_angles(const SpinSystem& sys, int K, int n_starts,
                                std::uint64_t seed);

// Reporting gauge: shift the median angle to zero and wrap everything into
// [-pi, pi), sorted. Because the score is invariant under common rotations
// and under full turns of any single angle, the representative is chosen
// canonically: among the anchorings that put an angle at the median-zero
// position, the one with mean closest to zero wins (so symmetric optima are
// reported in symmetric form). The overload also reports the common shift
// that was subtracted, so callers can rotate companion states into the same
// gauge (v -> R_z(-shift) v).
std::vector<double> median_zero_gauge(const std::vector<double>& angles,
                                      double* common_shift);
std::vector<double> median_zero_gauge(const std::vector<double>& angles);

}  // namespace spincert
