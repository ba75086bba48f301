#include "spincert/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace spincert {

namespace {
constexpr Complex kI{0.0, 1.0};

void require_odd_k(int K) {
  if (K < 3 || K % 2 == 0)
    throw std::invalid_argument("K must be odd and >= 3, got " + std::to_string(K));
}

// binom(2*floor(n/2), floor(n/2))
double half_binom(double n) {
  const int h = static_cast<int>(std::floor(n / 2.0 + 1e-12));
  double b = 1.0;
  for (int i = 1; i <= h; ++i) b = b * (h + i) / i;
  return b;
}

// n^(n mod 2) with 0^0 = 1
double odd_factor(double n) {
  const int ni = static_cast<int>(std::round(n));
  return (ni % 2 == 1) ? n : 1.0;
}

}  // namespace

AngleSet AngleSet::uniform(int K, double offset) {
  require_odd_k(K);
  std::vector<double> a(K);
  for (int k = 0; k < K; ++k) a[k] = offset + 2.0 * kPi * k / K;
  return AngleSet(std::move(a), true, offset);
}

AngleSet AngleSet::from_angles(std::vector<double> angles) {
  require_odd_k(static_cast<int>(angles.size()));
  std::sort(angles.begin(), angles.end());
  if (angles.back() - angles.front() > 2.0 * kPi + 1e-12)
    throw std::invalid_argument("angle set spans more than 2pi");
  return AngleSet(std::move(angles), false, 0.0);
}

double classical_bound(int K) {
  require_odd_k(K);
  return 0.5 * (1.0 + 1.0 / K);
}

double classical_score(double phi0, const AngleSet& angles) {
  int hits = 0;
  for (double a : angles.angles())
    if (std::cos(phi0 + a) >= 0.0) ++hits;
  return static_cast<double>(hits) / angles.K();
}

bool check_angle_condition(const AngleSet& angles) {
  const int K = angles.K();
  std::vector<double> a = angles.angles();
  for (double& x : a) {
    x = std::fmod(x, 2.0 * kPi);
    if (x < 0.0) x += 2.0 * kPi;
  }
  std::sort(a.begin(), a.end());
  // every angle must reach its (K-1)/2-th successor within half a turn
  for (int k = 0; k < K; ++k) {
    const int j = (k + (K - 1) / 2) % K;
    double gap = a[j] - a[k];
    gap = std::fmod(gap, 2.0 * kPi);
    if (gap < 0.0) gap += 2.0 * kPi;
    if (gap > kPi + 1e-12) return false;
  }
  return true;
}

namespace {

Mat q_brute(const SpinSystem& sys, const AngleSet& angles) {
  const Mat pos = pos_operator(sys).matrix;
  const int d = sys.d;
  Mat Q = Mat::Zero(d, d);
  for (double ph : angles.angles()) {
    Vec u(d);
    for (int i = 0; i < d; ++i) u(i) = std::exp(-kI * sys.m(i) * ph);
    // e^{-i ph Iz} P e^{+i ph Iz} applied entrywise: u_i P_ij conj(u_j)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) Q(i, j) += u(i) * pos(i, j) * std::conj(u(j));
  }
  return Q / static_cast<double>(angles.K());
}

Mat q_closed(const SpinSystem& sys, const AngleSet& angles) {
  const int d = sys.d;
  const double J = sys.J;
  const int K = angles.K();
  Mat Q = Mat::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const double ma = sys.m(a), mb = sys.m(b);  // row m, column m'
      Complex val = (a == b) ? 0.5 : 0.0;
      const int idm = static_cast<int>(std::round(mb - ma));
      if (idm % 2 != 0) {  // the sign part only couples odd m'-m
        const int adm = std::abs(idm);
        const double sgn_phase = ((adm - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        // the sign-operator element is symmetric in m <-> m', so the
        // denominator is |m' - m|
        double amp = sgn_phase * std::pow(2.0, -(2.0 * J - 1.0)) / adm;
        amp *= std::sqrt(half_binom(J + ma) * half_binom(J - ma) *
                         half_binom(J + mb) * half_binom(J - mb));
        amp *= std::sqrt(odd_factor(J + ma) * odd_factor(J - ma) *
                         odd_factor(J + mb) * odd_factor(J - mb));
        Complex phase = 0.0;
        for (double ph : angles.angles()) phase += std::exp(-kI * ph * (ma - mb));
        val += 0.5 * amp * phase / static_cast<double>(K);
      }
      Q(a, b) = val;
    }
  }
  return Q;
}

}  // namespace

Mat q_matrix(const SpinSystem& sys, const AngleSet& angles, QMethod method) {
  if (sys.d % 2 != 0)
    throw UnsupportedDimension("Q matrix requires even d (Pos undefined for odd d)");
  return method == QMethod::BruteForce ? q_brute(sys, angles) : q_closed(sys, angles);
}

ScoreReport quantum_score(const QuditState& state, const AngleSet& angles) {
  const SpinSystem sys = spin_operators(state.J());
  const Mat Q = q_matrix(sys, angles);
  ScoreReport rep;
  rep.score = expectation(state, Q);
  rep.classical_bound = classical_bound(angles.K());
  rep.violation_flag = rep.score > rep.classical_bound;
  return rep;
}

MaxScoreResult max_quantum_score(const SpinSystem& sys, const AngleSet& angles) {
  const Mat Q = q_matrix(sys, angles);
  const EighResult es = eigh(Q);
  MaxScoreResult out{es.values(sys.d - 1),
                     QuditState::pure(es.vectors.col(sys.d - 1).normalized()),
                     es.top_degenerate, es.top_gap};
  return out;
}

MaxScoreResult closed_form_max(const SpinSystem& sys, int K) {
  require_odd_k(K);
  const int d = sys.d;
  if (d % 2 != 0) throw UnsupportedDimension("closed form requires even d");
  if (!(K < d && d <= 3 * K))
    throw UnsupportedRegime("closed form requires K < d <= 3K, got d=" +
                            std::to_string(d) + " K=" + std::to_string(K));

  // Gauge in which the listed coefficient signs hold: phi0 = 0 when (K-1)/2
  // is odd (K = 3, 7, ...), phi0 = pi/K when it is even (K = 5, ...).
  const double phi0 = (((K - 1) / 2) % 2 == 1) ? 0.0 : kPi / K;
  const Mat Q = q_matrix(sys, AngleSet::uniform(K, phi0));

  // Uniform angles leave only the m -> m+K couplings of Q, so it splits into
  // independent chains {s, s+K, s+2K} (residues mod K). Evaluate every
  // chain's top eigenvalue and take the best; ties across distinct chains
  // (mirror pairs m -> -m) make the maximum degenerate.
  double best = 0.5;
  int best_s = 0;
  double best_a = 0.0, best_b = 0.0;
  int multiplicity = 0;
  for (int s = 0; s < K && s < d; ++s) {
    const double a = (s + K <= d - 1) ? std::abs(Q(s, s + K)) : 0.0;
    const double b = (s + 2 * K <= d - 1) ? std::abs(Q(s + K, s + 2 * K)) : 0.0;
    const double top = 0.5 + std::sqrt(a * a + b * b);
    if (top > best + 1e-12) {
      best = top;
      best_s = s;
      best_a = a;
      best_b = b;
      multiplicity = 1;
    } else if (top > best - 1e-12) {
      ++multiplicity;
    }
  }
  const double lambda = std::atan2(best_b, best_a);

  Vec st = Vec::Zero(d);
  st(best_s) = std::cos(lambda) / std::sqrt(2.0);
  st(best_s + K) = -1.0 / std::sqrt(2.0);
  if (best_s + 2 * K <= d - 1) st(best_s + 2 * K) = std::sin(lambda) / std::sqrt(2.0);

  const EighResult es = eigh(Q);
  return MaxScoreResult{best, QuditState::pure(st.normalized()), multiplicity > 1, es.top_gap};
}

double top_eigenspace_projection(const Mat& Q, const QuditState& state, double window) {
  const EighResult es = eigh(Q);
  const int n = static_cast<int>(es.values.size());
  const double top = es.values(n - 1);
  double proj = 0.0;
  const Vec& v = state.amplitudes();
  for (int i = 0; i < n; ++i)
    if (es.values(i) > top - window) proj += std::norm(es.vectors.col(i).dot(v));
  return proj;
}

std::vector<std::pair<double, double>> pos_sweep(const QuditState& state, int n_points) {
  if (n_points < 2) throw std::invalid_argument("pos_sweep needs n_points >= 2");
  const SpinSystem sys = spin_operators(state.J());
  const Mat pos = pos_operator(sys).matrix;
  std::vector<std::pair<double, double>> out;
  out.reserve(n_points);
  const Mat rho = state.density_matrix();
  for (int p = 0; p < n_points; ++p) {
    const double phi = 2.0 * kPi * p / n_points;
    // physical precession e^{+i phi I_z} = rz(-phi)
    const Mat U = rz(sys, -phi);
    const double val = ((U * rho * U.adjoint()) * pos).trace().real();
    out.emplace_back(phi, val);
  }
  return out;
}

}  // namespace spincert
