#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "spincert/spin.hpp"
#include "spincert/types.hpp"

namespace spincert {

// Ordered set of K probing angles. K must be odd and >= 3, angles sorted
// ascending with total span <= 2pi.
class AngleSet {
 public:
  static AngleSet uniform(int K, double offset = 0.0);
  static AngleSet from_angles(std::vector<double> angles);

  int K() const { return static_cast<int>(angles_.size()); }
  const std::vector<double>& angles() const { return angles_; }
  bool is_uniform() const { return uniform_; }
  double offset() const { return offset_; }

 private:
  AngleSet(std::vector<double> angles, bool uniform, double offset)
      : angles_(std::move(angles)), uniform_(uniform), offset_(offset) {}
  std::vector<double> angles_;
  bool uniform_;
  double offset_;  // phi0 for uniform sets, 0 otherwise
};

// (1 + 1/K)/2, the best average positivity of a classically precessing
// angular momentum over any admissible angle set.
double classical_bound(int K);

// (1/K) sum_k [cos(phi0 + phi_k) >= 0]; the tie at zero counts as positive.
double classical_score(double phi0, const AngleSet& angles);

// True iff every half-turn index-offset gap of the sorted angles is <= pi,
// the condition under which classical_bound applies.
bool check_angle_condition(const AngleSet& angles);

enum class QMethod { BruteForce, ClosedForm };

// Q = (1/K) sum_k e^{-i phi_k I_z} Pos(I_x) e^{+i phi_k I_z}.
// BruteForce conjugates the projector; ClosedForm evaluates the analytic
// matrix elements (nonzero sign part only for odd m'-m). Both agree < 1e-10.
Mat q_matrix(const SpinSystem& sys, const AngleSet& angles,
             QMethod method = QMethod::ClosedForm);

struct ScoreReport {
  double score = 0.0;
  double classical_bound = 0.0;
  std::optional<double> quantum_max;
  bool violation_flag = false;
  std::optional<QuditState> state_used;
};

// <state|Q|state> (or Tr(rho Q)) against the classical bound.
ScoreReport quantum_score(const QuditState& state, const AngleSet& angles);

struct MaxScoreResult {
  double value = 0.0;
  QuditState state;        // a top eigenvector
  bool degenerate = false; // top eigenvalue within 1e-10 of the next one
  double gap = 0.0;
};

// Top eigenvalue of Q and a maximizing state. When the top eigenvalue is
// degenerate the returned vector is an arbitrary basis choice and is flagged.
MaxScoreResult max_quantum_score(const SpinSystem& sys, const AngleSet& angles);

// Uniform-angle maximum from the m -> m+K coupling chain of Q: with chain
// couplings a = |Q(-J, -J+K)| and b = |Q(-J+K, -J+2K)| the top eigenvalue is
// 1/2 + sqrt(a^2 + b^2) and the maximizing chain state is
// (cos(lambda) |-J> - |-J+K> + sin(lambda) |-J+2K>)/sqrt(2), tan(lambda)=b/a.
// Valid for K < d <= 3K, even d. The state is returned in the gauge where
// those coefficients are real with the listed signs.
MaxScoreResult closed_form_max(const SpinSystem& sys, int K);

// Squared projection of `state` onto the top eigenspace of Q (all
// eigenvectors within `window` of the maximum). This is the right fidelity
// for comparisons against degenerate maxima.
double top_eigenspace_projection(const Mat& Q, const QuditState& state,
                                 double window = 1e-10);

// <Pos> on the physically precessed state e^{+i phi I_z}|psi> at n_points
// uniform phi in [0, 2pi).
std::vector<std::pair<double, double>> pos_sweep(const QuditState& state, int n_points);

}  // namespace spincert
