#include "spincert/wigner.hpp"

#include <cmath>
#include <string>

namespace spincert {

namespace {

double factorial_of(double x) {
  const long n = std::lround(x);
  if (std::abs(x - static_cast<double>(n)) > 1e-9 || n < 0)
    throw std::invalid_argument("factorial of a non-integer or negative value");
  double f = 1.0;
  for (long i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

int flat_index(int k, int q) { return k * k + (q + k); }

}  // namespace

double clebsch_gordan(double j1, double m1, double j2, double m2, double J,
                      double M) {
  if (std::abs(m1) > j1 + 1e-12 || std::abs(m2) > j2 + 1e-12 ||
      std::abs(M) > J + 1e-12)
    return 0.0;
  if (std::abs(m1 + m2 - M) > 1e-12) return 0.0;
  if (J < std::abs(j1 - j2) - 1e-12 || J > j1 + j2 + 1e-12) return 0.0;

  const auto f = factorial_of;
  double pref = (2.0 * J + 1.0) * f(J + j1 - j2) * f(J - j1 + j2) *
                f(j1 + j2 - J) / f(j1 + j2 + J + 1.0);
  pref *= f(J + M) * f(J - M) * f(j1 - m1) * f(j1 + m1) * f(j2 - m2) * f(j2 + m2);

  const long kmin = std::max(
      0L, std::max(std::lround(j2 - J - m1), std::lround(j1 - J + m2)));
  const long kmax = std::min(
      std::lround(j1 + j2 - J),
      std::min(std::lround(j1 - m1), std::lround(j2 + m2)));
  double s = 0.0;
  for (long k = kmin; k <= kmax; ++k) {
    const double kd = static_cast<double>(k);
    const double term = f(kd) * f(j1 + j2 - J - kd) * f(j1 - m1 - kd) *
                        f(j2 + m2 - kd) * f(J - j2 + m1 + kd) *
                        f(J - j1 - m2 + kd);
    s += (k % 2 == 0 ? 1.0 : -1.0) / term;
  }
  return std::sqrt(pref) * s;
}

Mat tensor_operator(const SpinSystem& sys, int k, int q) {
  const int two_j = sys.d - 1;
  if (k < 0 || k > two_j)
    throw std::invalid_argument("tensor rank k=" + std::to_string(k) +
                                " outside 0..2J");
  if (std::abs(q) > k)
    throw std::invalid_argument("tensor component |q| > k");
  const double J = sys.J;
  const double scale = std::sqrt((2.0 * k + 1.0) / sys.d);
  Mat T = Mat::Zero(sys.d, sys.d);
  for (int im = 0; im < sys.d; ++im) {
    const double m = sys.m(im);
    const int imp = im + q;
    if (imp < 0 || imp >= sys.d) continue;
    T(imp, im) = scale * clebsch_gordan(J, m, k, q, J, m + q);
  }
  return T;
}

Complex spherical_harmonic(int k, int q, double theta, double phi) {
  const int aq = std::abs(q);
  if (k < 0 || aq > k)
    throw std::invalid_argument("spherical harmonic needs 0 <= |q| <= k");
  const double x = std::cos(theta);
  const double st = std::sin(theta);

  // unsigned associated Legendre P_k^aq via upward recurrence in the degree
  double pmm = 1.0;
  for (int i = 1; i <= aq; ++i) pmm *= (2.0 * i - 1.0) * st;
  double p = pmm;
  if (k > aq) {
    double pm1 = pmm;
    p = x * (2.0 * aq + 1.0) * pmm;
    for (int l = aq + 2; l <= k; ++l) {
      const double next =
          ((2.0 * l - 1.0) * x * p - (l + aq - 1.0) * pm1) / (l - aq);
      pm1 = p;
      p = next;
    }
  }

  const double norm = std::sqrt((2.0 * k + 1.0) / (4.0 * kPi) *
                                std::exp(std::lgamma(k - aq + 1.0) -
                                         std::lgamma(k + aq + 1.0)));
  const Complex val = norm * p * std::exp(Complex(0.0, aq * phi));
  const double cs = (aq % 2 == 0) ? 1.0 : -1.0;  // Condon-Shortley for q > 0
  return q >= 0 ? cs * val : std::conj(val);
}

MultipoleDecomposition::MultipoleDecomposition(const QuditState& state) {
  const Mat rho = state.density_matrix();
  const int d = state.dim();
  two_j_ = d - 1;
  const SpinSystem sys = spin_operators(0.5 * two_j_);

  std::vector<Mat> basis;
  basis.reserve(static_cast<size_t>(d) * d);
  for (int k = 0; k <= two_j_; ++k)
    for (int q = -k; q <= k; ++q) basis.push_back(tensor_operator(sys, k, q));

  // The basis must be orthonormal under the trace inner product; anything
  // else means the CG machinery broke.
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = a; b < basis.size(); ++b) {
      const Complex ip = basis[a].conjugate().cwiseProduct(basis[b]).sum();
      const double expect = a == b ? 1.0 : 0.0;
      if (std::abs(ip - expect) > 1e-10)
        throw NumericalInconsistency("tensor basis lost orthonormality at pair " +
                                     std::to_string(a) + "," + std::to_string(b));
    }

  coeff_.resize(basis.size());
  for (size_t i = 0; i < basis.size(); ++i)
    coeff_[i] = basis[i].conjugate().cwiseProduct(rho).sum();  // Tr(T^dag rho)

  for (int k = 0; k <= two_j_; ++k)
    for (int q = 0; q <= k; ++q) {
      const Complex lhs = coeff_[static_cast<size_t>(flat_index(k, -q))];
      const Complex rhs = (q % 2 == 0 ? 1.0 : -1.0) *
                          std::conj(coeff_[static_cast<size_t>(flat_index(k, q))]);
      if (std::abs(lhs - rhs) > 1e-10)
        throw NumericalInconsistency("multipole coefficients violate Hermiticity");
    }

  Mat recon = Mat::Zero(d, d);
  for (size_t i = 0; i < basis.size(); ++i) recon += coeff_[i] * basis[i];
  if ((recon - rho).cwiseAbs().maxCoeff() > 1e-10)
    throw NumericalInconsistency("multipole expansion fails to rebuild the state");
}

Complex MultipoleDecomposition::coefficient(int k, int q) const {
  if (k < 0 || k > two_j_ || std::abs(q) > k)
    throw std::invalid_argument("multipole index (k=" + std::to_string(k) +
                                ", q=" + std::to_string(q) + ") out of range");
  return coeff_[static_cast<size_t>(flat_index(k, q))];
}

double WignerEvaluator::operator()(double theta, double phi) const {
  Complex acc = 0.0;
  for (int k = 0; k <= decomp_.two_j(); ++k)
    for (int q = -k; q <= k; ++q)
      acc += decomp_.coefficient(k, q) * spherical_harmonic(k, q, theta, phi);
  const Complex w = std::sqrt(2.0 / kPi) * acc;
  if (std::abs(w.imag()) > 1e-8)
    throw NumericalInconsistency("Wigner value has imaginary residue " +
                                 std::to_string(w.imag()));
  return w.real();
}

double wigner_value(const QuditState& state, double theta, double phi) {
  return WignerEvaluator(state)(theta, phi);
}

WignerGrid wigner_grid(const QuditState& state, int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1)
    throw std::invalid_argument("Wigner grid needs at least one point per axis");
  WignerEvaluator eval(state);
  WignerGrid grid;
  grid.theta.resize(static_cast<size_t>(n_theta));
  grid.phi.resize(static_cast<size_t>(n_phi));
  for (int i = 0; i < n_theta; ++i)
    grid.theta[static_cast<size_t>(i)] = (i + 0.5) * kPi / n_theta;
  for (int j = 0; j < n_phi; ++j)
    grid.phi[static_cast<size_t>(j)] = 2.0 * kPi * j / n_phi;
  grid.values.resize(n_theta, n_phi);
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j)
      grid.values(i, j) = eval(grid.theta[static_cast<size_t>(i)],
                               grid.phi[static_cast<size_t>(j)]);
  return grid;
}

QuditState truncate_density(const QuditState& state, const Subspace& sub) {
  const int d = state.dim();
  sub.validate(d);
  if (sub.lo == 0 && sub.hi == d - 1) return state;
  const int n = sub.size();
  if (state.is_pure()) {
    Vec block = state.amplitudes().segment(sub.lo, n);
    const double weight = block.squaredNorm();
    if (weight <= 1e-12)
      throw DegenerateTruncation("subspace carries weight " +
                                 std::to_string(weight) +
                                 "; nothing to renormalize");
    return QuditState::pure(block / std::sqrt(weight));
  }
  Mat block = state.density_matrix().block(sub.lo, sub.lo, n, n);
  const double weight = block.trace().real();
  if (weight <= 1e-12)
    throw DegenerateTruncation("subspace carries weight " +
                               std::to_string(weight) +
                               "; nothing to renormalize");
  return QuditState::density(block / weight);
}

}  // namespace spincert
