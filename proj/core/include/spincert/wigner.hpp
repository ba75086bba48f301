#pragma once

#include <vector>

#include "spincert/spin.hpp"
#include "spincert/types.hpp"

namespace spincert {

// Spherical (spin) Wigner function and the multipole machinery behind it.

// <j1 m1; j2 m2 | J M>, Condon-Shortley phase convention, computed with
// Racah's factorial sum (factorial arguments stay tiny at these spins, so
// double arithmetic is exact enough for 1e-12 agreement with references).
double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M);

// Orthonormal spherical tensor operator,
//   T_kq = sqrt((2k+1)/(2J+1)) sum_m <J m; k q | J m+q> |m+q><m|,
// normalized so Tr(T_kq^dag T_k'q') = delta delta. Requires 0 <= k <= 2J,
// |q| <= k.
Mat tensor_operator(const SpinSystem& sys, int k, int q);

// Y_kq(theta, phi) with the Condon-Shortley phase, evaluated by upward
// associated-Legendre recurrence in the degree (stable; max degree here is
// 2J = 7).
Complex spherical_harmonic(int k, int q, double theta, double phi);

// Expansion of a density matrix over the T_kq basis. Construction verifies
// basis orthonormality, the Hermiticity relation
// rho_{k,-q} = (-1)^q conj(rho_{kq}), and entrywise reconstruction of rho,
// all within 1e-10 (violations throw NumericalInconsistency).
class MultipoleDecomposition {
 public:
  explicit MultipoleDecomposition(const QuditState& state);

  int two_j() const { return two_j_; }
  // rho_kq for 0 <= k <= 2J, |q| <= k
  Complex coefficient(int k, int q) const;

 private:
  int two_j_;
  std::vector<Complex> coeff_;  // flat index k^2 + (q + k)
};

// W(theta, phi) = sqrt(2/pi) sum_kq rho_kq Y_kq(theta, phi). The result is
// real for Hermitian input; an imaginary residue above 1e-8 throws
// NumericalInconsistency.
double wigner_value(const QuditState& state, double theta, double phi);

// Decompose-once evaluator for grids and sweeps.
class WignerEvaluator {
 public:
  explicit WignerEvaluator(const QuditState& state) : decomp_(state) {}
  double operator()(double theta, double phi) const;

 private:
  MultipoleDecomposition decomp_;
};

struct WignerGrid {
  std::vector<double> theta;  // polar cell centers, length n_theta
  std::vector<double> phi;    // azimuth points, length n_phi
  RMat values;                // n_theta x n_phi
};

// Evaluate W on theta_i = (i + 1/2) pi / n_theta, phi_j = 2 pi j / n_phi.
WignerGrid wigner_grid(const QuditState& state, int n_theta = 100, int n_phi = 200);

// Extract the subspace block and renormalize to trace 1 (visualization
// helper; the result is not unitarily related to the input). Pure states
// stay pure. Near-zero subspace weight (trace <= 1e-12) throws
// DegenerateTruncation.
QuditState truncate_density(const QuditState& state, const Subspace& sub);

}  // namespace spincert
