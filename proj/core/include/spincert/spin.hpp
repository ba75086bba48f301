#pragma once

#include <optional>

#include "spincert/types.hpp"

namespace spincert {

// Spin-J operator algebra in the I_z eigenbasis, ordered ascending
// m = -J, -J+1, ..., +J (index 0 is m = -J). All rotations are active:
// R = exp(-i theta n.I).

struct SpinSystem {
  double J = 0.0;  // half-integer spin quantum number
  int d = 0;       // dimension 2J+1
  Mat Ix, Iy, Iz;

  // m value of basis index i
  double m(int i) const { return static_cast<double>(i) - J; }
};

// Builds the operator triple from the ladder formula
// <m+1|I+|m> = sqrt(J(J+1) - m(m+1)). Throws std::invalid_argument unless
// 2J is a positive integer.
SpinSystem spin_operators(double J);

class QuditState {
 public:
  enum class Kind { Pure, Density };

  // Pure state from an amplitude vector (must be normalized within 1e-12).
  static QuditState pure(Vec amplitudes);
  // Density matrix (Hermitian, trace 1 within 1e-12, eigenvalues >= -1e-10).
  static QuditState density(Mat rho);

  Kind kind() const { return kind_; }
  bool is_pure() const { return kind_ == Kind::Pure; }
  int dim() const { return dim_; }
  double J() const { return 0.5 * (dim_ - 1); }

  // Amplitudes of a pure state; throws std::logic_error on a density matrix.
  const Vec& amplitudes() const;
  // Density-matrix view (promotes a pure state to |psi><psi|).
  Mat density_matrix() const;

 private:
  QuditState(Kind kind, Vec amps, Mat rho, int dim)
      : kind_(kind), amps_(std::move(amps)), rho_(std::move(rho)), dim_(dim) {}
  Kind kind_;
  Vec amps_;
  Mat rho_;
  int dim_;
};

// Projector onto the positive-eigenvalue subspace of I_x,
// Pos = (1 + sgn(I_x))/2. Only defined for even d (no zero eigenvalue).
// The sign operator is retained because the score gradient needs it.
struct PosObservable {
  Mat matrix;  // the projector
  Mat sign;    // sgn(I_x)
};

PosObservable pos_operator(const SpinSystem& sys);

// exp(-i H t) for Hermitian H, via eigendecomposition (exact at these sizes).
Mat expm_herm(const Mat& H, double t = 1.0);

// Active rotation exp(-i angle * (axis . I)); axis must be unit length
// within 1e-9.
Mat rotation(const SpinSystem& sys, const Eigen::Vector3d& axis, double angle);

// R_z(phi) = exp(-i phi I_z): diagonal entries e^{-i m phi}.
Mat rz(const SpinSystem& sys, double phi);

// The basis change used before z-readout: a rotation by pi/2 around the
// -y axis, R = exp(+i (pi/2) I_y), which satisfies R I_x R^dag = I_z so that
// positive-m_x populations land on the upper half of the z basis.
Mat basis_rotation_x_to_z(const SpinSystem& sys);

// Coherent state: |J,J> rotated to polar angle theta, azimuth phi;
// satisfies <n.I> = J along (theta, phi).
QuditState spin_coherent_state(const SpinSystem& sys, double theta, double phi);

// (|-J_sub> + e^{i phase} |+J_sub>)/sqrt(2) embedded in the full system.
// Requires J_sub <= J with J - J_sub integer.
QuditState cat_state(const SpinSystem& sys, double subspace_J, double relative_phase);

// <psi|O|psi> or Tr(rho O). Throws NumericalInconsistency if the imaginary
// residue exceeds 1e-8; residues below are discarded.
double expectation(const QuditState& state, const Mat& observable);

// |<a|b>|^2 for pure states, Uhlmann fidelity for density matrices,
// <a|rho|b-like mixed pairs handled via the pure-state shortcut.
double fidelity(const QuditState& a, const QuditState& b);

// Hermitian eigendecomposition with a degeneracy flag on the top eigenvalue
// (gap below `degeneracy_tol`), so callers never rely on an arbitrary
// eigenvector out of a degenerate eigenspace.
struct EighResult {
  RVec values;  // ascending
  Mat vectors;  // columns match values
  double top_gap = 0.0;
  bool top_degenerate = false;
};

EighResult eigh(const Mat& hermitian, double degeneracy_tol = 1e-10);

}  // namespace spincert
