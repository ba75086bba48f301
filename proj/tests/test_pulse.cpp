#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <variant>

#include "spincert/protocol.hpp"
#include "spincert/pulse.hpp"
#include "spincert/spin.hpp"

using namespace spincert;

namespace {

double op_dist(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

QuditState ground(int d) {
  Vec v = Vec::Zero(d);
  v(0) = 1.0;
  return QuditState::pure(v);
}

// distance up to a global phase
double phase_free_dist(const Mat& a, const Mat& b) {
  const Complex tr = (a.adjoint() * b).trace();
  if (std::abs(tr) < 1e-15) return 1.0;
  return op_dist(a * (tr / std::abs(tr)), b);
}

}  // namespace

TEST_SUITE("pulse") {

TEST_CASE("cat compilation: pi/2 opener, pi ladder, one -y closer") {
  const SpinSystem sys = spin_operators(3.5);
  const PulseSequence seq = ladder_compile(cat_state(sys, 3.5, kPi));
  REQUIRE(seq.steps.size() == 7);
  for (size_t i = 0; i < seq.steps.size(); ++i) {
    const auto& g = std::get<GivensStep>(seq.steps[i]);
    CHECK(g.transition == static_cast<int>(i));
    CHECK(g.area == doctest::Approx(i == 0 ? 0.5 * kPi : kPi).epsilon(1e-12));
    CHECK(g.axis == (i == 6 ? YAxis::Minus : YAxis::Plus));
  }
}

TEST_CASE("compiled sequences reach their targets from the ground state") {
  const SpinSystem sys8 = spin_operators(3.5);
  for (int K : {3, 5, 7}) {
    const QuditState target = closed_form_max(sys8, K).state;
    const QuditState got = apply_sequence(ground(8), ladder_compile(target));
    CHECK(fidelity(got, target) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // a dense real vector with sign changes
  Vec v(6);
  v << 0.645, -0.119, -0.264, -0.264, -0.119, 0.645;
  v.normalize();
  const QuditState dense = QuditState::pure(v);
  CHECK(fidelity(apply_sequence(ground(6), ladder_compile(dense)), dense) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("compilation ignores a global phase and skips empty rotations") {
  const SpinSystem sys = spin_operators(3.5);
  const QuditState cat = cat_state(sys, 3.5, kPi);
  const QuditState negated =
      QuditState::pure(cat.amplitudes() * std::exp(Complex(0, 2.2)));
  const PulseSequence a = ladder_compile(cat);
  const PulseSequence b = ladder_compile(negated);
  REQUIRE(a.steps.size() == b.steps.size());
  for (size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(std::get<GivensStep>(a.steps[i]).area ==
          doctest::Approx(std::get<GivensStep>(b.steps[i]).area));
  }
  // a basis state needs no pulses at all
  CHECK(ladder_compile(ground(8)).steps.empty());
  // support starting above the ground level still compiles
  Vec mid = Vec::Zero(8);
  mid(1) = 1.0 / std::sqrt(2.0);
  mid(6) = -1.0 / std::sqrt(2.0);
  const QuditState sub = QuditState::pure(mid);
  CHECK(fidelity(apply_sequence(ground(8), ladder_compile(sub)), sub) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("states with genuine complex phases are rejected") {
  const SpinSystem sys = spin_operators(3.5);
  CHECK_THROWS_AS(ladder_compile(cat_state(sys, 3.5, 0.5 * kPi)),
                  UnsupportedState);
  CHECK_THROWS_AS(ladder_compile(spin_coherent_state(sys, 0.5 * kPi, 0.5 * kPi)),
                  UnsupportedState);
  CHECK_THROWS_AS(ladder_compile(QuditState::density(Mat::Identity(8, 8) / 8.0)),
                  UnsupportedState);
}

TEST_CASE("step unitaries: Givens structure, frame diagonal, su2 embedding") {
  const int d = 8;
  const GivensStep g{2, 1.1, YAxis::Plus};
  const Mat u = step_unitary(g, d);
  CHECK(op_dist(u * u.adjoint(), Mat::Identity(d, d)) < 1e-12);
  const double c = std::cos(0.55), s = std::sin(0.55);  // half the area
  CHECK(std::abs(u(2, 2).real() - c) < 1e-12);
  CHECK(std::abs(u(3, 2).real() - s) < 1e-12);
  CHECK(std::abs(u(2, 3).real() + s) < 1e-12);
  for (int i = 0; i < d; ++i)
    if (i != 2 && i != 3) CHECK(std::abs(u(i, i) - 1.0) < 1e-15);
  // -y reverses the mixing direction
  const Mat um = step_unitary(GivensStep{2, 1.1, YAxis::Minus}, d);
  CHECK(op_dist(um, u.adjoint()) < 1e-12);

  FrameShiftStep f;
  f.delta_phi = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  const Mat uf = step_unitary(f, d);
  const std::vector<double> xi = frame_phases(f);
  REQUIRE(xi.size() == 8);
  CHECK(xi[0] == 0.0);
  CHECK(xi[3] == doctest::Approx(-(0.1 + 0.2 + 0.3)).epsilon(1e-15));
  for (int i = 0; i < d; ++i)
    CHECK(std::abs(uf(i, i) - std::exp(Complex(0, xi[i]))) < 1e-14);

  const Su2Step su{YAxis::Minus, 0.5 * kPi, Subspace{0, 7}};
  const SpinSystem sys = spin_operators(3.5);
  CHECK(op_dist(step_unitary(su, d), expm_herm(sys.Iy, -0.5 * kPi)) < 1e-12);
}

TEST_CASE("step validation: area range, transition range, frame length") {
  CHECK_THROWS_AS(step_unitary(GivensStep{0, -0.1, YAxis::Plus}, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(step_unitary(GivensStep{0, 2.0 * kPi, YAxis::Plus}, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(step_unitary(GivensStep{3, 1.0, YAxis::Plus}, 4),
                  std::invalid_argument);
  FrameShiftStep f;
  f.delta_phi = {0.1, 0.2};
  CHECK_THROWS_AS(step_unitary(f, 4), std::invalid_argument);
  CHECK_THROWS_AS(step_unitary(Su2Step{YAxis::Plus, 1.0, Subspace{1, 4}}, 4),
                  std::invalid_argument);
  // the even-size rule is enforced where subspace pulses are made
  CHECK_THROWS_AS(su2_pulse(YAxis::Plus, 1.0, Subspace{1, 3}),
                  UnsupportedDimension);
  CHECK_THROWS_AS(virtual_rz(0.3, Subspace{0, 2}, 4), UnsupportedDimension);
}

TEST_CASE("virtual Rz equals the physical Rz up to a global phase") {
  const SpinSystem sys = spin_operators(3.5);
  const double phi = 0.73;
  const Mat uf = step_unitary(virtual_rz(phi, Subspace{0, 7}, 8), 8);
  CHECK(phase_free_dist(uf, rz(sys, phi)) < 1e-12);
  // on a subspace, against the embedded subsystem Rz
  const Mat ufs = step_unitary(virtual_rz(phi, Subspace{1, 6}, 8), 8);
  const SpinSystem sub = spin_operators(2.5);
  Mat embedded = Mat::Identity(8, 8);
  embedded.block(1, 1, 6, 6) = rz(sub, phi);
  // global phase only matters inside the active block, so compare blocks
  const Complex tr = (ufs.block(1, 1, 6, 6).adjoint() * rz(sub, phi)).trace();
  CHECK(op_dist(ufs.block(1, 1, 6, 6) * (tr / std::abs(tr)), rz(sub, phi)) <
        1e-12);
}

TEST_CASE("protocol run: the odd cat scores 0.65625 at every uniform angle") {
  const SpinSystem sys = spin_operators(3.5);
  const QuditState cat = cat_state(sys, 3.5, kPi);
  const auto points = run_protocol(cat, AngleSet::uniform(7), Subspace{0, 7});
  REQUIRE(points.size() == 7);
  for (const auto& pt : points) {
    CHECK(positive_probability(pt, Subspace{0, 7}) ==
          doctest::Approx(0.65625).epsilon(1e-12));
    double total = pt.probabilities.sum();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("protocol run on a subspace matches the truncated analytic score") {
  // a d=6 cat embedded on levels 1..6, probed only inside that window
  Vec v = Vec::Zero(8);
  v(1) = 1.0 / std::sqrt(2.0);
  v(6) = -1.0 / std::sqrt(2.0);
  const QuditState emb = QuditState::pure(v);
  const Subspace sub{1, 6};
  const auto points = run_protocol(emb, AngleSet::uniform(5, kPi / 5.0), sub);
  double mean = 0.0;
  for (const auto& pt : points) mean += positive_probability(pt, sub);
  mean /= 5.0;
  CHECK(mean == doctest::Approx(0.6875).epsilon(1e-9));
}

TEST_CASE("device parameters: defaults are self-consistent and validated") {
  const DeviceParams p = default_device_params();
  p.validate(8);
  CHECK(p.f_nmr_mhz.size() == 7);
  CHECK(p.f_nmr_mhz[0] == doctest::Approx(7.5963));
  CHECK(p.pi_time_ms[0] == doctest::Approx(0.328));
  CHECK(p.pi_time_ms[3] == doctest::Approx(0.220));
  CHECK(p.t2_star_ms[3] == doctest::Approx(167.17));
  CHECK(p.b0_tesla == doctest::Approx(1.384));
  CHECK(p.gamma_n_mhz_per_t == doctest::Approx(5.55));
  CHECK(p.su2_pi_time_ms == doctest::Approx(3.0));

  DeviceParams bad = p;
  bad.pi_time_ms.pop_back();
  CHECK_THROWS_AS(bad.validate(8), std::invalid_argument);
  bad = p;
  bad.f_nmr_mhz[1] = bad.f_nmr_mhz[0];
  CHECK_THROWS_AS(bad.validate(8), std::invalid_argument);
  bad = p;
  bad.pi_time_ms[2] = 0.0;
  CHECK_THROWS_AS(bad.validate(8), std::invalid_argument);
}

TEST_CASE("device parameters load from JSON with optional fields defaulted") {
  const char* path = "device_params_test.json";
  {
    std::ofstream out(path);
    out << "{\"f_nmr_mhz\": [1,2,3,4,5,6,7],"
        << " \"pi_time_ms\": [0.3,0.3,0.3,0.3,0.3,0.3,0.3]}";
  }
  const DeviceParams p = device_params_from_json(path);
  CHECK(p.f_nmr_mhz[6] == 7.0);
  CHECK(p.b0_tesla == doctest::Approx(1.384));  // defaulted
  std::remove(path);
  CHECK_THROWS_AS(device_params_from_json("no_such_file.json"),
                  std::invalid_argument);
  {
    std::ofstream out(path);
    out << "{\"pi_time_ms\": [0.3]}";  // missing frequencies
  }
  CHECK_THROWS_AS(device_params_from_json(path), std::invalid_argument);
  std::remove(path);
}

TEST_CASE("time evolution: a resonant single-tone pi pulse swaps one transition") {
  const SpinSystem sys = spin_operators(3.5);
  const DeviceParams p = default_device_params();
  const double lad0 = std::sqrt(sys.J * (sys.J + 1) - (-sys.J) * (-sys.J + 1));
  const double b1 = 1.0 / (p.gamma_n_mhz_per_t * lad0 * p.pi_time_ms[0] * 1e3);
  DriveSegment seg;
  seg.tones = {DriveTone{0, b1, 0.0}};
  seg.duration_ms = p.pi_time_ms[0];
  const QuditState out = time_evolve(ground(8), {seg}, p);
  CHECK(std::abs(out.amplitudes()(1)) == doctest::Approx(1.0).epsilon(1e-9));
  // half the duration leaves an equal superposition
  seg.duration_ms = 0.5 * p.pi_time_ms[0];
  const QuditState half = time_evolve(ground(8), {seg}, p);
  CHECK(std::abs(half.amplitudes()(0)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("time evolution: equal-amplitude seven-tone drive is a rigid rotation") {
  const SpinSystem sys = spin_operators(3.5);
  const DeviceParams p = default_device_params();
  const double b1 = 1.0 / (p.gamma_n_mhz_per_t * p.su2_pi_time_ms * 1e3);
  DriveSegment seg;
  for (int t = 0; t < 7; ++t)
    seg.tones.push_back(DriveTone{t, b1, 0.5 * kPi});
  // phases pi/2 make the tridiagonal Hamiltonian proportional to -I_y, so
  // half the pi time rotates by pi/2 about -y (the axis direction matters:
  // a half turn from the pole could not tell +-y apart)
  seg.duration_ms = 0.5 * p.su2_pi_time_ms;
  const QuditState out = time_evolve(spin_coherent_state(sys, 0, 0), {seg}, p);
  const Mat target = rotation(sys, Eigen::Vector3d(0, -1, 0), 0.5 * kPi);
  const Vec expect = target * spin_coherent_state(sys, 0, 0).amplitudes();
  CHECK(fidelity(out, QuditState::pure(expect)) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("time evolution validates drives") {
  const DeviceParams p = default_device_params();
  DriveSegment seg;
  seg.tones = {DriveTone{7, 1e-4, 0.0}};  // transition out of range for d=8
  seg.duration_ms = 1.0;
  CHECK_THROWS_AS(time_evolve(ground(8), {seg}, p), std::invalid_argument);
  seg.tones = {DriveTone{0, 1e-4, 0.0}};
  seg.duration_ms = -1.0;
  CHECK_THROWS_AS(time_evolve(ground(8), {seg}, p), std::invalid_argument);
}

TEST_CASE("pulse sequences survive a JSON round trip") {
  const SpinSystem sys = spin_operators(3.5);
  PulseSequence seq = ladder_compile(cat_state(sys, 3.5, kPi));
  seq.steps.push_back(virtual_rz(0.4, Subspace{0, 7}, 8));
  seq.steps.push_back(su2_pulse(YAxis::Minus, 0.5 * kPi, Subspace{0, 7}));
  const std::string text = pulse_sequence_to_json(seq);
  const PulseSequence back = pulse_sequence_from_json(text);
  REQUIRE(back.steps.size() == seq.steps.size());
  const QuditState a = apply_sequence(ground(8), seq);
  const QuditState b = apply_sequence(ground(8), back);
  CHECK(fidelity(a, b) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(pulse_sequence_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(pulse_sequence_from_json("[{\"nope\": {}}]"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      pulse_sequence_from_json(
          "[{\"givens\": {\"transition\": 0, \"area\": -1.0, \"axis\": \"+y\"}}]"),
      std::invalid_argument);
}

}  // TEST_SUITE
