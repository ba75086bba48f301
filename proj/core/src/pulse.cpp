#include "spincert/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace spincert {

namespace {

using nlohmann::json;

const char* axis_name(YAxis a) { return a == YAxis::Plus ? "+y" : "-y"; }

YAxis axis_from_name(const std::string& s) {
  if (s == "+y") return YAxis::Plus;
  if (s == "-y") return YAxis::Minus;
  throw std::invalid_argument("pulse axis must be \"+y\" or \"-y\", got \"" + s + "\"");
}

// I_+ matrix elements sqrt(J(J+1) - m(m+1)) for the d-1 transitions.
std::vector<double> ladder_elements(int d) {
  const double J = 0.5 * (d - 1);
  std::vector<double> lad(d - 1);
  for (int i = 0; i + 1 < d; ++i) {
    const double m = i - J;
    lad[i] = std::sqrt(J * (J + 1) - m * (m + 1));
  }
  return lad;
}

Mat embedded_iy(int d, const Subspace& sub) {
  const int dsub = sub.size();
  Mat M = Mat::Zero(d, d);
  if (dsub == 1) return M;  // trivial subspace has no generator
  SpinSystem sys = spin_operators(0.5 * (dsub - 1));
  M.block(sub.lo, sub.lo, dsub, dsub) = sys.Iy;
  return M;
}

}  // namespace

PulseSequence ladder_compile(const QuditState& target) {
  if (!target.is_pure())
    throw UnsupportedState("ladder compilation requires a pure target state");
  const int d = target.dim();
  Vec amps = target.amplitudes();

  // Gauge: divide out the phase of the first nonzero coefficient. The
  // compiler covers targets whose relative phases are all 0 or pi, i.e.
  // real coefficients in this gauge.
  int first = -1;
  for (int i = 0; i < d; ++i) {
    if (std::abs(amps(i)) > 1e-14) {
      first = i;
      break;
    }
  }
  if (first < 0) throw UnsupportedState("target state has no support");
  amps /= amps(first) / std::abs(amps(first));
  double imag_residue = 0.0;
  for (int i = 0; i < d; ++i)
    imag_residue = std::max(imag_residue, std::abs(amps(i).imag()));
  if (imag_residue > 1e-9)
    throw UnsupportedState(
        "target has relative phases other than 0 or pi (imaginary residue " +
        std::to_string(imag_residue) + " after removing the global phase)");

  RVec c = amps.real();

  PulseSequence seq;
  double carrier = 1.0;  // sign of the amplitude carried up the ladder
  for (int m = 0; m + 1 < d; ++m) {
    const double rem = c.segment(m, d - m).norm();
    if (rem < 1e-14) break;  // everything below m already placed
    const double theta = std::acos(std::min(1.0, std::abs(c(m)) / rem));
    const double beta = 2.0 * theta;
    if (beta < 1e-14) continue;
    // The transferred amplitude becomes level m+1's kept part at the next
    // step, so the carried sign must match sign(c[m+1]) when that target
    // coefficient is nonzero; a -y pulse flips the carried sign.
    double nxt = 0.0;
    if (std::abs(c(m + 1)) > 1e-14) nxt = c(m + 1) > 0 ? 1.0 : -1.0;
    const YAxis axis =
        (nxt == 0.0 || nxt == carrier) ? YAxis::Plus : YAxis::Minus;
    if (axis == YAxis::Minus) carrier = -carrier;
    seq.steps.push_back(GivensStep{m, beta, axis});
  }
  return seq;
}

Mat step_unitary(const PulseStep& step, int d) {
  if (d < 2) throw UnsupportedDimension("pulse steps need dimension >= 2");
  if (const auto* g = std::get_if<GivensStep>(&step)) {
    if (g->transition < 0 || g->transition >= d - 1)
      throw std::invalid_argument("givens transition " +
                                  std::to_string(g->transition) +
                                  " out of range for d=" + std::to_string(d));
    if (!(g->area >= 0.0 && g->area < 2.0 * kPi))
      throw std::invalid_argument("givens pulse area must lie in [0, 2pi)");
    Mat G = Mat::Identity(d, d);
    const int i = g->transition;
    const double c = std::cos(0.5 * g->area);
    const double s = std::sin(0.5 * g->area);
    if (g->axis == YAxis::Plus) {
      G(i, i) = c;
      G(i, i + 1) = -s;
      G(i + 1, i) = s;
      G(i + 1, i + 1) = c;
    } else {
      G(i, i) = c;
      G(i, i + 1) = s;
      G(i + 1, i) = -s;
      G(i + 1, i + 1) = c;
    }
    return G;
  }
  if (const auto* f = std::get_if<FrameShiftStep>(&step)) {
    if (static_cast<int>(f->delta_phi.size()) != d - 1)
      throw std::invalid_argument(
          "frame shift needs one clock increment per transition (d-1 = " +
          std::to_string(d - 1) + ")");
    const std::vector<double> xi = frame_phases(*f);
    Mat U = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i)
      U(i, i) = std::exp(Complex(0.0, xi[static_cast<size_t>(i)]));
    return U;
  }
  const auto& s = std::get<Su2Step>(step);
  s.sub.validate(d);
  const Mat M = embedded_iy(d, s.sub);
  const double t = s.axis == YAxis::Plus ? s.angle : -s.angle;
  return expm_herm(M, t);
}

std::vector<double> frame_phases(const FrameShiftStep& step) {
  std::vector<double> xi(step.delta_phi.size() + 1, 0.0);
  double acc = 0.0;
  for (size_t i = 0; i < step.delta_phi.size(); ++i) {
    acc += step.delta_phi[i];
    xi[i + 1] = -acc;
  }
  return xi;
}

QuditState apply_sequence(const QuditState& start, const PulseSequence& seq) {
  const int d = start.dim();
  if (start.is_pure()) {
    Vec st = start.amplitudes();
    for (const auto& step : seq.steps) st = step_unitary(step, d) * st;
    return QuditState::pure(std::move(st));
  }
  Mat rho = start.density_matrix();
  for (const auto& step : seq.steps) {
    const Mat U = step_unitary(step, d);
    rho = U * rho * U.adjoint();
  }
  return QuditState::density(std::move(rho));
}

FrameShiftStep virtual_rz(double phi, const Subspace& sub, int d) {
  sub.validate(d);
  if (sub.size() % 2 != 0)
    throw UnsupportedDimension("virtual R_z subspace must have even size, got " +
                               std::to_string(sub.size()));
  FrameShiftStep step;
  step.delta_phi.assign(static_cast<size_t>(d - 1), 0.0);
  // Transition i couples levels (i, i+1); the clocks strictly inside the
  // range are the ones that realize the subspace rotation.
  for (int i = sub.lo; i < sub.hi; ++i)
    step.delta_phi[static_cast<size_t>(i)] = phi;
  return step;
}

Su2Step su2_pulse(YAxis axis, double angle, const Subspace& sub) {
  if (sub.lo > sub.hi)
    throw std::invalid_argument("su2 pulse subspace is empty");
  if (sub.size() % 2 != 0)
    throw UnsupportedDimension("su2 pulse subspace must have even size, got " +
                               std::to_string(sub.size()));
  return Su2Step{axis, angle, sub};
}

void DeviceParams::validate(int d) const {
  const size_t nt = static_cast<size_t>(d - 1);
  if (f_nmr_mhz.size() != nt)
    throw std::invalid_argument("device needs " + std::to_string(nt) +
                                " transition frequencies, got " +
                                std::to_string(f_nmr_mhz.size()));
  if (pi_time_ms.size() != nt)
    throw std::invalid_argument("device needs " + std::to_string(nt) +
                                " pi times, got " +
                                std::to_string(pi_time_ms.size()));
  if (!t2_star_ms.empty() && t2_star_ms.size() != nt)
    throw std::invalid_argument("t2_star_ms must be empty or one per transition");
  // The measured frequencies are not monotonic in the transition index, so
  // the only structural demand is that all lines are resolvable (distinct).
  for (size_t i = 0; i < nt; ++i)
    for (size_t j = i + 1; j < nt; ++j)
      if (f_nmr_mhz[i] == f_nmr_mhz[j])
        throw std::invalid_argument("transition frequencies must be distinct");
  for (double t : pi_time_ms)
    if (!(t > 0.0)) throw std::invalid_argument("pi times must be positive");
  if (!(b0_tesla > 0.0)) throw std::invalid_argument("b0_tesla must be positive");
  if (!(gamma_n_mhz_per_t > 0.0))
    throw std::invalid_argument("gamma_n_mhz_per_t must be positive");
  if (!(su2_pi_time_ms > 0.0))
    throw std::invalid_argument("su2_pi_time_ms must be positive");
}

DeviceParams default_device_params() {
  DeviceParams p;
  p.f_nmr_mhz = {7.5963, 7.6246, 7.6529, 7.6812, 7.7095, 7.7739, 7.7664};
  p.pi_time_ms = {0.328, 0.254, 0.227, 0.220, 0.223, 0.251, 0.329};
  p.t2_star_ms = {27.77, 37.79, 80.18, 167.17, 85.43, 51.09, 28.37};
  p.b0_tesla = 1.384;
  p.gamma_n_mhz_per_t = 5.55;
  p.su2_pi_time_ms = 3.0;
  return p;
}

DeviceParams device_params_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open device config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("invalid device config JSON (" + path +
                                "): " + e.what());
  }
  DeviceParams defaults = default_device_params();
  DeviceParams p;
  try {
    p.f_nmr_mhz = j.at("f_nmr_mhz").get<std::vector<double>>();
    p.pi_time_ms = j.at("pi_time_ms").get<std::vector<double>>();
    p.t2_star_ms = j.value("t2_star_ms", std::vector<double>{});
    p.b0_tesla = j.value("b0_tesla", defaults.b0_tesla);
    p.gamma_n_mhz_per_t = j.value("gamma_n_mhz_per_t", defaults.gamma_n_mhz_per_t);
    p.su2_pi_time_ms = j.value("su2_pi_time_ms", defaults.su2_pi_time_ms);
  } catch (const json::exception& e) {
    throw std::invalid_argument("invalid device config (" + path +
                                "): " + e.what());
  }
  return p;
}

QuditState time_evolve(const QuditState& start,
                       const std::vector<DriveSegment>& drives,
                       const DeviceParams& params) {
  const int d = start.dim();
  params.validate(d);
  const std::vector<double> lad = ladder_elements(d);
  const double gamma = params.gamma_n_mhz_per_t;

  auto segment_unitary = [&](const DriveSegment& seg) {
    if (!(seg.duration_ms >= 0.0))
      throw std::invalid_argument("drive segment duration must be >= 0");
    Mat H = Mat::Zero(d, d);  // rotating-frame Hamiltonian, MHz
    for (const DriveTone& tone : seg.tones) {
      if (tone.transition < 0 || tone.transition >= d - 1)
        throw std::invalid_argument("drive tone transition " +
                                    std::to_string(tone.transition) +
                                    " out of range");
      const double g =
          -(gamma / 4.0) * tone.b1_tesla * lad[static_cast<size_t>(tone.transition)];
      const Complex phase = std::exp(Complex(0.0, tone.phase));
      H(tone.transition, tone.transition + 1) += g * phase;
      H(tone.transition + 1, tone.transition) += g * std::conj(phase);
    }
    // H is constant over the segment, so one exact exponential suffices;
    // MHz * ms leaves a factor 10^3 in the phase.
    return expm_herm(2.0 * kPi * 1e3 * H, seg.duration_ms);
  };

  if (start.is_pure()) {
    Vec st = start.amplitudes();
    for (const auto& seg : drives) st = segment_unitary(seg) * st;
    return QuditState::pure(std::move(st));
  }
  Mat rho = start.density_matrix();
  for (const auto& seg : drives) {
    const Mat U = segment_unitary(seg);
    rho = U * rho * U.adjoint();
  }
  return QuditState::density(std::move(rho));
}

std::vector<ProtocolPoint> run_protocol(const QuditState& target,
                                        const AngleSet& angles,
                                        const Subspace& sub) {
  const int d = target.dim();
  sub.validate(d);
  if (sub.size() % 2 != 0)
    throw UnsupportedDimension("protocol subspace must have even size, got " +
                               std::to_string(sub.size()));

  // Step 1: prepare the target from the ground state with the Givens ladder.
  const PulseSequence prep = ladder_compile(target);
  Vec ground = Vec::Zero(d);
  ground(0) = 1.0;
  const QuditState prepared = apply_sequence(QuditState::pure(std::move(ground)), prep);

  std::vector<ProtocolPoint> out;
  out.reserve(static_cast<size_t>(angles.K()));
  for (double phi : angles.angles()) {
    // Step 2: the physical precession e^{+i phi I_z} is a clock retardation,
    // i.e. a frame shift by -phi on the subspace transitions.
    // Step 3: rotate the measurement basis with exp(+i (pi/2) I_y^(sub)).
    PulseSequence rest;
    rest.steps.push_back(virtual_rz(-phi, sub, d));
    rest.steps.push_back(su2_pulse(YAxis::Minus, 0.5 * kPi, sub));
    const QuditState fin = apply_sequence(prepared, rest);
    // Step 4: z-basis readout populations.
    RVec probs = fin.is_pure() ? RVec(fin.amplitudes().cwiseAbs2())
                               : RVec(fin.density_matrix().diagonal().real());
    out.push_back(ProtocolPoint{phi, std::move(probs)});
  }
  return out;
}

double positive_probability(const ProtocolPoint& point, const Subspace& sub) {
  const int d = static_cast<int>(point.probabilities.size());
  sub.validate(d);
  if (sub.size() % 2 != 0)
    throw UnsupportedDimension("positive-outcome split needs an even subspace");
  double p = 0.0;
  for (int i = sub.lo + sub.size() / 2; i <= sub.hi; ++i)
    p += point.probabilities(i);
  return p;
}

std::string pulse_sequence_to_json(const PulseSequence& seq) {
  json arr = json::array();
  for (const auto& step : seq.steps) {
    if (const auto* g = std::get_if<GivensStep>(&step)) {
      arr.push_back({{"givens",
                      {{"transition", g->transition},
                       {"area", g->area},
                       {"axis", axis_name(g->axis)}}}});
    } else if (const auto* f = std::get_if<FrameShiftStep>(&step)) {
      arr.push_back({{"frame_shift", {{"delta_phi", f->delta_phi}}}});
    } else {
      const auto& s = std::get<Su2Step>(step);
      arr.push_back({{"su2",
                      {{"axis", axis_name(s.axis)},
                       {"angle", s.angle},
                       {"subspace", {s.sub.lo, s.sub.hi}}}}});
    }
  }
  return arr.dump(2) + "\n";
}

PulseSequence pulse_sequence_from_json(const std::string& text) {
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid pulse sequence JSON: ") +
                                e.what());
  }
  if (!arr.is_array())
    throw std::invalid_argument("pulse sequence JSON must be a list of steps");
  PulseSequence seq;
  try {
    for (const auto& item : arr) {
      if (!item.is_object() || item.size() != 1)
        throw std::invalid_argument(
            "each pulse step must be an object with exactly one step type");
      if (item.contains("givens")) {
        const auto& g = item.at("givens");
        GivensStep step;
        step.transition = g.at("transition").get<int>();
        step.area = g.at("area").get<double>();
        step.axis = axis_from_name(g.at("axis").get<std::string>());
        if (step.transition < 0)
          throw std::invalid_argument("givens transition must be >= 0");
        if (!(step.area >= 0.0 && step.area < 2.0 * kPi))
          throw std::invalid_argument("givens pulse area must lie in [0, 2pi)");
        seq.steps.push_back(step);
      } else if (item.contains("frame_shift")) {
        FrameShiftStep step;
        step.delta_phi =
            item.at("frame_shift").at("delta_phi").get<std::vector<double>>();
        seq.steps.push_back(step);
      } else if (item.contains("su2")) {
        const auto& s = item.at("su2");
        Su2Step step;
        step.axis = axis_from_name(s.at("axis").get<std::string>());
        step.angle = s.at("angle").get<double>();
        const auto range = s.at("subspace").get<std::vector<int>>();
        if (range.size() != 2)
          throw std::invalid_argument("su2 subspace must be [lo, hi]");
        step.sub = Subspace{range[0], range[1]};
        seq.steps.push_back(step);
      } else {
        throw std::invalid_argument("unknown pulse step type: " + item.dump());
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid pulse sequence JSON: ") +
                                e.what());
  }
  return seq;
}

}  // namespace spincert
