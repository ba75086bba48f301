#pragma once

#include <string>
#include <variant>
#include <vector>

#include "spincert/protocol.hpp"
#include "spincert/spin.hpp"
#include "spincert/types.hpp"

namespace spincert {

// Pulse-level model of the experiment. Transition i couples levels i and
// i+1 in the ascending-m ordering; there are d-1 = 2J transitions.

enum class YAxis { Plus, Minus };

// Two-level rotation on (transition, transition+1) with pulse area beta
// (beta = 2 theta, where theta is the amplitude mixing half-angle).
struct GivensStep {
  int transition = 0;
  double area = 0.0;  // in [0, 2pi)
  YAxis axis = YAxis::Plus;
};

// Virtual phase update: increment the reference-clock phase of transition i
// by delta_phi[i]. Applying the frame is the diagonal SNAP unitary with
// phases xi_0 = 0, xi_m = -sum_{i<m} delta_phi[i].
struct FrameShiftStep {
  std::vector<double> delta_phi;  // length d-1
};

// Rigid SU(2)-covariant rotation exp(-+ i angle I_y^(sub)) about +/- y,
// embedded in the full space on a contiguous even-size level range.
struct Su2Step {
  YAxis axis = YAxis::Minus;
  double angle = 0.0;
  Subspace sub;
};

using PulseStep = std::variant<GivensStep, FrameShiftStep, Su2Step>;

struct PulseSequence {
  std::vector<PulseStep> steps;
};

// Compile a pure target with real coefficients (relative phases 0 or pi
// only; a global phase is removed) into at most d-1 Givens rotations from
// the ground state |-J>. Pulse areas follow
//   theta_m = arccos(|c_m| / sqrt(sum_{i>=m} c_i^2)),  beta_m = 2 theta_m,
// and the axis flips to -y exactly when the next target coefficient is
// nonzero with sign opposite to the amplitude carried up the ladder.
PulseSequence ladder_compile(const QuditState& target);

// Unitary of one step in dimension d.
Mat step_unitary(const PulseStep& step, int d);

// SNAP phases xi implied by a frame shift (cumulative-sum rule).
std::vector<double> frame_phases(const FrameShiftStep& step);

QuditState apply_sequence(const QuditState& start, const PulseSequence& seq);

// Frame shift emulating R_z(phi) on a contiguous even-size subspace (all
// transition clocks inside the range advance by phi); equals the embedded
// subspace R_z up to a global phase.
FrameShiftStep virtual_rz(double phi, const Subspace& sub, int d);

Su2Step su2_pulse(YAxis axis, double angle, const Subspace& sub);

// Device configuration for time-domain evolution; values are metadata for
// the generalized-rotating-frame model.
struct DeviceParams {
  std::vector<double> f_nmr_mhz;   // one per transition, pairwise distinct
  std::vector<double> pi_time_ms;  // single-tone pi times
  std::vector<double> t2_star_ms;  // metadata only (no decoherence model)
  double b0_tesla = 0.0;
  double gamma_n_mhz_per_t = 0.0;
  double su2_pi_time_ms = 0.0;  // equal-amplitude multi-tone pi time

  void validate(int d) const;
};

// Built-in J=7/2 configuration.
DeviceParams default_device_params();
DeviceParams device_params_from_json(const std::string& path);

// One resonant tone per transition: B1 amplitude (tesla) and phase.
struct DriveTone {
  int transition = 0;
  double b1_tesla = 0.0;
  double phase = 0.0;
};

struct DriveSegment {
  std::vector<DriveTone> tones;
  double duration_ms = 0.0;
};

// Piecewise-constant evolution in the generalized rotating frame:
//   H = sum_i g_i (e^{i phase_i}|i><i+1| + h.c.),
//   g_i = -(gamma_n B_{1,i}/4) * sqrt(J(J+1) - m_i(m_i+1))   [MHz]
// and U = exp(-i 2pi 10^3 H t) per segment with t in ms (exact matrix
// exponential; sub-stepping a constant H would change nothing).
QuditState time_evolve(const QuditState& start, const std::vector<DriveSegment>& drives,
                       const DeviceParams& params);

// Full four-step protocol at each probing angle: ladder-compile and prepare
// the target, emulate the physical precession e^{+i phi_k I_z} via a frame
// shift, rotate the measurement basis with exp(+i (pi/2) I_y^(sub)), and
// report z-basis populations. The positive-outcome mass is the sum over the
// upper half of the subspace levels.
struct ProtocolPoint {
  double phi = 0.0;
  RVec probabilities;  // length d
};

std::vector<ProtocolPoint> run_protocol(const QuditState& target, const AngleSet& angles,
                                        const Subspace& sub);

double positive_probability(const ProtocolPoint& point, const Subspace& sub);

// Pulse sequence (de)serialization: JSON list of typed step objects.
std::string pulse_sequence_to_json(const PulseSequence& seq);
PulseSequence pulse_sequence_from_json(const std::string& text);

}  // namespace spincert
