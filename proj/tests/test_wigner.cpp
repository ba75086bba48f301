#include <doctest.h>

#include <cmath>
#include <complex>

#include "spincert/rng.hpp"
#include "spincert/spin.hpp"
#include "spincert/types.hpp"
#include "spincert/wigner.hpp"

using namespace spincert;

namespace {

QuditState random_pure(int d, std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  Vec v(d);
  for (int i = 0; i < d; ++i)
    v(i) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  return QuditState::pure(v.normalized());
}

}  // namespace

TEST_SUITE("wigner") {

TEST_CASE("Clebsch-Gordan: textbook values and selection rules") {
  const double r2 = 1.0 / std::sqrt(2.0);
  CHECK(clebsch_gordan(0.5, 0.5, 0.5, -0.5, 0, 0) == doctest::Approx(r2));
  CHECK(clebsch_gordan(0.5, -0.5, 0.5, 0.5, 0, 0) == doctest::Approx(-r2));
  CHECK(clebsch_gordan(0.5, 0.5, 0.5, -0.5, 1, 0) == doctest::Approx(r2));
  CHECK(clebsch_gordan(0.5, 0.5, 0.5, 0.5, 1, 1) == doctest::Approx(1.0));
  CHECK(clebsch_gordan(1, 1, 1, -1, 0, 0) ==
        doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(clebsch_gordan(1, 0, 1, 0, 2, 0) ==
        doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(clebsch_gordan(1, 0, 1, 0, 1, 0) == doctest::Approx(0.0));
  // violated selection rules give zero
  CHECK(clebsch_gordan(1, 1, 1, 1, 2, 1) == 0.0);   // M != m1+m2
  CHECK(clebsch_gordan(1, 1, 1, 0, 3, 1) == 0.0);   // J > j1+j2
  CHECK(clebsch_gordan(0.5, 0.5, 1, 0, 0, 0.5) == 0.0);
}

TEST_CASE("Clebsch-Gordan columns are orthonormal") {
  // fixed j1=j2=3/2: sum over m1, m2 of products is a delta in (J, M)
  const double j = 1.5;
  for (double J1 : {0.0, 1.0, 2.0, 3.0}) {
    for (double J2 : {0.0, 1.0, 2.0, 3.0}) {
      double acc = 0.0;
      for (double m1 = -j; m1 <= j; ++m1)
        for (double m2 = -j; m2 <= j; ++m2)
          acc += clebsch_gordan(j, m1, j, m2, J1, m1 + m2) *
                 clebsch_gordan(j, m1, j, m2, J2, m1 + m2) * (m1 + m2 == 0.0);
      CHECK(acc == doctest::Approx(J1 == J2 ? 1.0 : 0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("tensor operators are orthonormal and complete") {
  const SpinSystem sys = spin_operators(1.5);
  const Mat t00 = tensor_operator(sys, 0, 0);
  CHECK((t00 - Mat::Identity(4, 4) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
  for (int k = 0; k <= 3; ++k)
    for (int q = -k; q <= k; ++q) {
      const Mat t = tensor_operator(sys, k, q);
      CHECK(std::abs((t.adjoint() * t).trace().real() - 1.0) < 1e-12);
      // T_{k,-q} = (-1)^q T_kq^dagger
      const Mat tm = tensor_operator(sys, k, -q);
      const double sign = (q % 2 == 0) ? 1.0 : -1.0;
      CHECK((tm - sign * t.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
  CHECK_THROWS_AS(tensor_operator(sys, 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(tensor_operator(sys, 2, 3), std::invalid_argument);
}

TEST_CASE("spherical harmonics: low orders against explicit formulas") {
  const double th = 0.8, ph = 2.1;
  CHECK(std::abs(spherical_harmonic(0, 0, th, ph) -
                 Complex(1.0 / std::sqrt(4.0 * kPi))) < 1e-13);
  CHECK(std::abs(spherical_harmonic(1, 0, th, ph) -
                 Complex(std::sqrt(3.0 / (4.0 * kPi)) * std::cos(th))) < 1e-13);
  const Complex y11 = -std::sqrt(3.0 / (8.0 * kPi)) * std::sin(th) *
                      std::exp(Complex(0, ph));
  CHECK(std::abs(spherical_harmonic(1, 1, th, ph) - y11) < 1e-13);
  const Complex y2m1 = std::sqrt(15.0 / (8.0 * kPi)) * std::sin(th) *
                       std::cos(th) * std::exp(Complex(0, -ph));
  CHECK(std::abs(spherical_harmonic(2, -1, th, ph) - y2m1) < 1e-13);
  // conjugation identity across +-q up to high order
  for (int k = 0; k <= 7; ++k)
    for (int q = 0; q <= k; ++q) {
      const Complex plus = spherical_harmonic(k, q, th, ph);
      const Complex minus = spherical_harmonic(k, -q, th, ph);
      const double sign = (q % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::abs(minus - sign * std::conj(plus)) < 1e-12);
    }
}

TEST_CASE("spherical harmonics satisfy the addition theorem") {
  for (int k = 0; k <= 7; ++k) {
    double acc = 0.0;
    for (int q = -k; q <= k; ++q) acc += std::norm(spherical_harmonic(k, q, 1.234, 0.777));
    CHECK(acc == doctest::Approx((2.0 * k + 1.0) / (4.0 * kPi)).epsilon(1e-12));
  }
}

TEST_CASE("multipole decomposition reconstructs and obeys hermiticity") {
  const QuditState st = random_pure(8, 31);
  const MultipoleDecomposition dec(st);
  CHECK(dec.two_j() == 7);
  // rho_00 is fixed by the trace
  CHECK(std::abs(dec.coefficient(0, 0) - Complex(1.0 / std::sqrt(8.0))) < 1e-12);
  for (int k = 0; k <= 7; ++k)
    for (int q = 0; q <= k; ++q) {
      const Complex a = dec.coefficient(k, q);
      const Complex b = dec.coefficient(k, -q);
      const double sign = (q % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::abs(b - sign * std::conj(a)) < 1e-10);
    }
  CHECK_THROWS_AS(dec.coefficient(8, 0), std::invalid_argument);
}

TEST_CASE("the maximally mixed state is flat at 1/(sqrt(2 pi) sqrt(4 pi / d) d) etc.") {
  // all multipoles above k=0 vanish, so W is the constant
  // sqrt(2/pi) * Y_00 * rho_00 = sqrt(2/pi) / sqrt(4 pi) / sqrt(d)
  const QuditState mixed = QuditState::density(Mat::Identity(8, 8) / 8.0);
  const double expect = std::sqrt(2.0 / kPi) / std::sqrt(4.0 * kPi) / std::sqrt(8.0);
  CHECK(expect == doctest::Approx(0.079577471546).epsilon(1e-9));
  for (double th : {0.3, 1.2, 2.9})
    for (double ph : {0.0, 2.5})
      CHECK(wigner_value(mixed, th, ph) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("coherent states peak along their own direction") {
  const SpinSystem sys = spin_operators(3.5);
  const double th = 1.0, ph = 2.0;
  const QuditState st = spin_coherent_state(sys, th, ph);
  const WignerEvaluator w(st);
  const double at_peak = w(th, ph);
  Xoshiro256pp rng(8);
  for (int i = 0; i < 200; ++i) {
    const double t = std::acos(2.0 * rng.uniform() - 1.0);
    const double p = rng.uniform(0.0, 2.0 * kPi);
    CHECK(w(t, p) <= at_peak + 1e-12);
  }
  CHECK(at_peak > 0.5);  // sharply positive peak
}

TEST_CASE("rotation about z shifts the Wigner function in azimuth") {
  const QuditState st = random_pure(8, 5);
  const SpinSystem sys = spin_operators(3.5);
  const double alpha = 0.9;
  const QuditState rot = QuditState::pure(rz(sys, alpha) * st.amplitudes());
  const WignerEvaluator w0(st), w1(rot);
  for (double th : {0.5, 1.5, 2.5})
    for (double ph : {0.1, 1.3, 4.0})
      CHECK(w1(th, ph) == doctest::Approx(w0(th, ph - alpha)).epsilon(1e-10));
}

TEST_CASE("rotation about an arbitrary axis transports the Wigner function") {
  const SpinSystem sys = spin_operators(3.5);
  const QuditState st = random_pure(8, 17);
  const Eigen::Vector3d axis = Eigen::Vector3d(0.3, -0.8, 0.52).normalized();
  const double angle = 1.234;
  const Mat u = rotation(sys, axis, angle);
  const QuditState rot = QuditState::pure(u * st.amplitudes());
  const Eigen::Matrix3d r3 =
      Eigen::AngleAxisd(angle, axis).toRotationMatrix();
  const WignerEvaluator w0(st), w1(rot);
  Xoshiro256pp rng(21);
  for (int i = 0; i < 60; ++i) {
    const double t = std::acos(2.0 * rng.uniform() - 1.0);
    const double p = rng.uniform(0.0, 2.0 * kPi);
    const Eigen::Vector3d n(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p),
                            std::cos(t));
    const Eigen::Vector3d back = r3.transpose() * n;
    const double tb = std::acos(std::clamp(back.z(), -1.0, 1.0));
    const double pb = std::atan2(back.y(), back.x());
    CHECK(w1(t, p) == doctest::Approx(w0(tb, pb)).epsilon(1e-9));
  }
}

TEST_CASE("grid layout and normalization") {
  const QuditState mixed = QuditState::density(Mat::Identity(8, 8) / 8.0);
  const WignerGrid g = wigner_grid(mixed, 40, 80);
  REQUIRE(g.theta.size() == 40);
  REQUIRE(g.phi.size() == 80);
  REQUIRE(g.values.rows() == 40);
  REQUIRE(g.values.cols() == 80);
  CHECK(g.theta[0] == doctest::Approx(0.5 * kPi / 40.0));
  CHECK(g.phi[1] == doctest::Approx(2.0 * kPi / 80.0));
  // midpoint quadrature of W sin(theta) over the sphere: for d=8 the surface
  // integral is sqrt(8/d) = 1
  const QuditState st = random_pure(8, 77);
  const WignerGrid gs = wigner_grid(st, 100, 200);
  double integral = 0.0;
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 200; ++j)
      integral += gs.values(i, j) * std::sin(gs.theta[i]);
  integral *= (kPi / 100.0) * (2.0 * kPi / 200.0);
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
  CHECK_THROWS_AS(wigner_grid(mixed, 0, 10), std::invalid_argument);
}

TEST_CASE("equatorial fringes of a cat count 2J oscillations") {
  const SpinSystem sys = spin_operators(3.5);
  for (double jsub : {1.5, 2.5, 3.5}) {
    const QuditState cat = cat_state(sys, jsub, 0.0);
    const WignerEvaluator w(cat);
    const int n = 720;
    std::vector<double> ring(n);
    for (int i = 0; i < n; ++i) ring[i] = w(0.5 * kPi, 2.0 * kPi * i / n);
    int maxima = 0;
    for (int i = 0; i < n; ++i) {
      const double prev = ring[(i + n - 1) % n], next = ring[(i + 1) % n];
      if (ring[i] > prev && ring[i] > next) ++maxima;
    }
    CHECK(maxima == static_cast<int>(2 * jsub));
  }
}

TEST_CASE("subspace truncation: pure blocks, renormalization, diagnostics") {
  const SpinSystem sys = spin_operators(3.5);
  const QuditState emb = cat_state(sys, 2.5, kPi);  // lives on levels 1..6
  const QuditState cut = truncate_density(emb, Subspace{1, 6});
  CHECK(cut.dim() == 6);
  CHECK(cut.is_pure());
  CHECK(std::abs(cut.amplitudes()(0) - 1.0 / std::sqrt(2.0)) < 1e-12);
  // partial support gets renormalized, and purity is preserved for pure input
  const QuditState part = truncate_density(emb, Subspace{1, 2});
  CHECK(part.dim() == 2);
  CHECK(std::abs(part.density_matrix().trace().real() - 1.0) < 1e-12);
  // full-range truncation is the identity
  const QuditState same = truncate_density(emb, Subspace{0, 7});
  CHECK(fidelity(same, emb) == doctest::Approx(1.0));
  // no weight inside the window
  CHECK_THROWS_AS(truncate_density(emb, Subspace{2, 5}), DegenerateTruncation);
  CHECK_THROWS_AS(truncate_density(emb, Subspace{0, 9}), std::invalid_argument);
}

TEST_CASE("raw reconstruction of W is real to machine precision") {
  const QuditState st = random_pure(8, 404);
  const MultipoleDecomposition dec(st);
  Xoshiro256pp rng(405);
  for (int i = 0; i < 40; ++i) {
    const double th = std::acos(2.0 * rng.uniform() - 1.0);
    const double ph = rng.uniform(0.0, 2.0 * kPi);
    Complex acc = 0.0;
    for (int k = 0; k <= 7; ++k)
      for (int q = -k; q <= k; ++q)
        acc += dec.coefficient(k, q) * spherical_harmonic(k, q, th, ph);
    acc *= std::sqrt(2.0 / kPi);
    CHECK(std::abs(acc.imag()) < 1e-10);
    CHECK(std::abs(acc.real() - wigner_value(st, th, ph)) < 1e-12);
  }
}

}  // TEST_SUITE
