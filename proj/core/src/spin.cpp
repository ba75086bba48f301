#include "spincert/spin.hpp"

#include <cmath>
#include <limits>

namespace spincert {

namespace {
constexpr Complex kI{0.0, 1.0};
}

SpinSystem spin_operators(double J) {
  const double two_j = 2.0 * J;
  if (J <= 0.0 || std::abs(two_j - std::round(two_j)) > 1e-12)
    throw std::invalid_argument("J must be a positive half-integer");
  const int d = static_cast<int>(std::round(two_j)) + 1;

  SpinSystem sys;
  sys.J = J;
  sys.d = d;
  sys.Iz = Mat::Zero(d, d);
  Mat Ip = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double m = i - J;
    sys.Iz(i, i) = m;
    if (i + 1 < d) Ip(i + 1, i) = std::sqrt(J * (J + 1.0) - m * (m + 1.0));
  }
  const Mat Im = Ip.adjoint();
  sys.Ix = 0.5 * (Ip + Im);
  sys.Iy = (Ip - Im) / (2.0 * kI);
  return sys;
}

QuditState QuditState::pure(Vec amplitudes) {
  const int d = static_cast<int>(amplitudes.size());
  if (d < 2) throw std::invalid_argument("state needs dimension >= 2");
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("pure state not normalized (|norm-1| = " +
                                std::to_string(std::abs(norm - 1.0)) + ")");
  return QuditState(Kind::Pure, std::move(amplitudes), Mat(), d);
}

QuditState QuditState::density(Mat rho) {
  const int d = static_cast<int>(rho.rows());
  if (d < 2 || rho.cols() != d) throw std::invalid_argument("density matrix must be square, d >= 2");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("density matrix not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-12 || std::abs(rho.trace().imag()) > 1e-12)
    throw std::invalid_argument("density matrix trace != 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("density matrix has negative eigenvalues");
  return QuditState(Kind::Density, Vec(), std::move(rho), d);
}

const Vec& QuditState::amplitudes() const {
  if (kind_ != Kind::Pure) throw std::logic_error("amplitudes() called on a density matrix");
  return amps_;
}

Mat QuditState::density_matrix() const {
  if (kind_ == Kind::Density) return rho_;
  return amps_ * amps_.adjoint();
}

PosObservable pos_operator(const SpinSystem& sys) {
  if (sys.d % 2 != 0)
    throw UnsupportedDimension("Pos(I_x) requires even d: sgn(0) is undefined for integer spin");
  Eigen::SelfAdjointEigenSolver<Mat> es(sys.Ix);
  if (es.eigenvalues().cwiseAbs().minCoeff() < 1e-9)
    throw UnsupportedDimension("I_x has a (near-)zero eigenvalue");
  Mat sgn = Mat::Zero(sys.d, sys.d);
  for (int i = 0; i < sys.d; ++i) {
    const double s = es.eigenvalues()(i) > 0.0 ? 1.0 : -1.0;
    sgn += s * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  PosObservable pos;
  pos.sign = sgn;
  pos.matrix = 0.5 * (Mat::Identity(sys.d, sys.d) + sgn);
  return pos;
}

Mat expm_herm(const Mat& H, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  Vec phases(H.rows());
  for (int i = 0; i < H.rows(); ++i)
    phases(i) = std::exp(-kI * es.eigenvalues()(i) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Mat rotation(const SpinSystem& sys, const Eigen::Vector3d& axis, double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("rotation axis must be a unit vector");
  const Mat gen = axis.x() * sys.Ix + axis.y() * sys.Iy + axis.z() * sys.Iz;
  return expm_herm(gen, angle);
}

Mat rz(const SpinSystem& sys, double phi) {
  Mat R = Mat::Zero(sys.d, sys.d);
  for (int i = 0; i < sys.d; ++i) R(i, i) = std::exp(-kI * sys.m(i) * phi);
  return R;
}

Mat basis_rotation_x_to_z(const SpinSystem& sys) {
  return rotation(sys, Eigen::Vector3d(0.0, -1.0, 0.0), kPi / 2.0);
}

QuditState spin_coherent_state(const SpinSystem& sys, double theta, double phi) {
  Vec stretched = Vec::Zero(sys.d);
  stretched(sys.d - 1) = 1.0;  // |J, +J>
  const Mat U = rz(sys, phi) * expm_herm(sys.Iy, theta) * rz(sys, -phi);
  Vec amps = U * stretched;
  amps /= amps.norm();
  return QuditState::pure(std::move(amps));
}

QuditState cat_state(const SpinSystem& sys, double subspace_J, double relative_phase) {
  const double two_sub = 2.0 * subspace_J;
  const double off_d = sys.J - subspace_J;
  if (subspace_J <= 0.0 || std::abs(two_sub - std::round(two_sub)) > 1e-12 ||
      off_d < -1e-12 || std::abs(off_d - std::round(off_d)) > 1e-12)
    throw std::invalid_argument("cat subspace spin must satisfy J_sub <= J with J - J_sub integer");
  const int off = static_cast<int>(std::round(off_d));
  Vec amps = Vec::Zero(sys.d);
  amps(off) = 1.0 / std::sqrt(2.0);
  amps(sys.d - 1 - off) = std::exp(kI * relative_phase) / std::sqrt(2.0);
  return QuditState::pure(std::move(amps));
}

double expectation(const QuditState& state, const Mat& observable) {
  if (observable.rows() != state.dim() || observable.cols() != state.dim())
    throw std::invalid_argument("observable dimension mismatch");
  Complex val;
  if (state.is_pure()) {
    const Vec& v = state.amplitudes();
    val = v.dot(observable * v);  // Eigen::dot conjugates the left factor
  } else {
    val = (state.density_matrix() * observable).trace();
  }
  if (std::abs(val.imag()) > 1e-8)
    throw NumericalInconsistency("expectation has imaginary part " + std::to_string(val.imag()));
  return val.real();
}

namespace {

Mat mat_sqrt_psd(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  Vec roots(rho.rows());
  for (int i = 0; i < rho.rows(); ++i)
    roots(i) = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const QuditState& a, const QuditState& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  if (a.is_pure() && b.is_pure()) {
    const Complex ip = a.amplitudes().dot(b.amplitudes());
    return std::norm(ip);
  }
  if (a.is_pure()) return expectation(a, b.density_matrix());
  if (b.is_pure()) return expectation(b, a.density_matrix());
  // Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
  const Mat root = mat_sqrt_psd(a.density_matrix());
  const Mat inner = root * b.density_matrix() * root;
  Eigen::SelfAdjointEigenSolver<Mat> es(inner, Eigen::EigenvaluesOnly);
  double tr = 0.0;
  for (int i = 0; i < inner.rows(); ++i)
    tr += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  return tr * tr;
}

EighResult eigh(const Mat& hermitian, double degeneracy_tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian);
  EighResult out;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  const int n = static_cast<int>(out.values.size());
  out.top_gap = n >= 2 ? out.values(n - 1) - out.values(n - 2) : std::numeric_limits<double>::infinity();
  out.top_degenerate = out.top_gap < degeneracy_tol;
  return out;
}

}  // namespace spincert
