#include "spincert/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "spincert/rng.hpp"

namespace spincert {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr double kDegenerateGap = 1e-8;

struct GradientContext {
  Mat pos;
  Mat comm;  // [sgn(I_x), I_z]
  RVec mvals;
};

GradientContext make_context(const SpinSystem& sys) {
  GradientContext ctx;
  ctx.pos = pos_operator(sys).matrix;
  const Mat sgn = 2.0 * ctx.pos - Mat::Identity(sys.d, sys.d);
  ctx.comm = sgn * sys.Iz - sys.Iz * sgn;
  ctx.mvals.resize(sys.d);
  for (int i = 0; i < sys.d; ++i) ctx.mvals(i) = sys.m(i);
  return ctx;
}

Mat q_of(const GradientContext& ctx, const std::vector<double>& angles) {
  const int d = static_cast<int>(ctx.mvals.size());
  Mat Q = Mat::Zero(d, d);
  for (double ph : angles) {
    Vec u(d);
    for (int i = 0; i < d; ++i) u(i) = std::exp(-kI * ctx.mvals(i) * ph);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) Q(i, j) += u(i) * ctx.pos(i, j) * std::conj(u(j));
  }
  return Q / static_cast<double>(angles.size());
}

struct EigPoint {
  double value;
  Vec vector;
  double gap;
};

EigPoint eig_top(const GradientContext& ctx, const std::vector<double>& angles) {
  const EighResult es = eigh(q_of(ctx, angles));
  const int n = static_cast<int>(es.values.size());
  return EigPoint{es.values(n - 1), es.vectors.col(n - 1), es.top_gap};
}

RVec gradient_at(const GradientContext& ctx, const std::vector<double>& angles,
                 const Vec& vec) {
  const int K = static_cast<int>(angles.size());
  const int d = static_cast<int>(ctx.mvals.size());
  RVec g(K);
  Vec w(d);
  for (int k = 0; k < K; ++k) {
    // w = e^{+i phi_k I_z} v, so <v| U comm U^dag |v> = <w|comm|w>
    for (int i = 0; i < d; ++i)
      w(i) = std::exp(kI * ctx.mvals(i) * angles[k]) * vec(i);
    const Complex val = w.dot(ctx.comm * w);
    g(k) = (kI * val / (2.0 * K)).real();
  }
  return g;
}

}  // namespace

RVec score_gradient(const SpinSystem& sys, const AngleSet& angles) {
  const GradientContext ctx = make_context(sys);
  const Mat Q = q_of(ctx, angles.angles());
  const EighResult es = eigh(Q);
  const int n = sys.d;
  if (es.top_gap < kDegenerateGap) {
    // Constant-score regime (Q == I/2, e.g. d <= K): gradient is exactly 0.
    if ((Q - 0.5 * Mat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12)
      return RVec::Zero(angles.K());
    throw GradientUndefined("top eigenvalue degenerate (gap " +
                            std::to_string(es.top_gap) + "); perturb the angles");
  }
  return gradient_at(ctx, angles.angles(), es.vectors.col(n - 1));
}

OptimizationRun optimize_angles(const SpinSystem& sys, int K, int n_starts,
                                std::uint64_t seed) {
  if (n_starts < 1) throw std::invalid_argument("n_starts must be >= 1");
  const GradientContext ctx = make_context(sys);
  const int max_iter = 10000;

  std::vector<double> lo(K), hi(K);
  for (int k = 0; k < K; ++k) {
    const double center = 2.0 * kPi * k / K;
    lo[k] = center - kPi / (2.0 * K);
    hi[k] = center + kPi / (2.0 * K);
  }
  const auto clip = [&](std::vector<double>& x) {
    for (int k = 0; k < K; ++k) x[k] = std::clamp(x[k], lo[k], hi[k]);
  };

  bool have_best = false;
  double best_score = 0.0;
  std::vector<double> best_x, best_x0;
  Vec best_vec;
  int best_iters = 0, best_start = 0;
  bool best_conv = false;

  for (int s = 0; s < n_starts; ++s) {
    Xoshiro256pp rng(derive_seed(seed, {static_cast<std::uint64_t>(s)}));
    std::vector<double> x(K);
    for (int k = 0; k < K; ++k) x[k] = rng.uniform(lo[k], hi[k]);
    const std::vector<double> x0 = x;

    EigPoint pt = eig_top(ctx, x);
    int iters = 0;
    bool converged = false;
    while (iters < max_iter) {
      ++iters;
      if (pt.gap < kDegenerateGap) {
        // the eigenvalue gradient is set-valued here; nudge off the crossing
        for (int k = 0; k < K; ++k) x[k] += rng.uniform(-1e-6, 1e-6);
        clip(x);
        pt = eig_top(ctx, x);
        continue;
      }
      RVec g = gradient_at(ctx, x, pt.vector);
      // projected gradient: drop components pushing into an active wall
      for (int k = 0; k < K; ++k) {
        if (x[k] >= hi[k] - 1e-15 && g(k) > 0.0) g(k) = 0.0;
        if (x[k] <= lo[k] + 1e-15 && g(k) < 0.0) g(k) = 0.0;
      }
      const double gnorm = g.norm();
      if (gnorm < 1e-9) {
        converged = true;
        break;
      }
      bool accepted = false;
      for (double alpha = 0.05; alpha > 1e-14; alpha *= 0.5) {
        std::vector<double> xt(K);
        for (int k = 0; k < K; ++k) xt[k] = x[k] + alpha * g(k) / gnorm;
        clip(xt);
        const EigPoint cand = eig_top(ctx, xt);
        if (cand.value > pt.value) {
          x = std::move(xt);
          pt = cand;
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        converged = true;  // no ascent step at machine precision
        break;
      }
    }

    if (!have_best || pt.value > best_score) {
      have_best = true;
      best_score = pt.value;
      best_x = x;
      best_x0 = x0;
      best_vec = pt.vector;
      best_iters = iters;
      best_start = s;
      best_conv = converged;
    }
  }

  return OptimizationRun{sys.d,
                         K,
                         AngleSet::from_angles(best_x0),
                         AngleSet::from_angles(best_x),
                         best_score,
                         QuditState::pure(best_vec.normalized()),
                         best_iters,
                         best_conv,
                         best_start};
}

namespace {

double wrap_pm_pi(double x) {
  x = std::fmod(x + kPi, 2.0 * kPi);
  if (x < 0.0) x += 2.0 * kPi;
  return x - kPi;
}

}  // namespace

std::vector<double> median_zero_gauge(const std::vector<double>& angles,
                                      double* common_shift) {
  // The score is invariant under a common rotation of all angles and under
  // full turns of any single angle, so one equivalence class has many
  // median-zero representatives (re-wrapping moves the median). Anchor each
  // angle at zero in turn and keep the balanced representative: the one
  // whose mean is closest to zero (ties broken lexicographically). Symmetric
  // optima then come out in their symmetric form regardless of which
  // representative the search landed on.
  const size_t K = angles.size();
  std::vector<double> best;
  double best_shift = 0.0;
  double best_mean = 0.0;
  for (size_t k = 0; k < K; ++k) {
    std::vector<double> rep(K);
    for (size_t i = 0; i < K; ++i) rep[i] = wrap_pm_pi(angles[i] - angles[k]);
    std::sort(rep.begin(), rep.end());
    if (std::abs(rep[K / 2]) > 1e-12) continue;  // anchor must be the median
    double mean = 0.0;
    for (double x : rep) mean += x;
    mean /= static_cast<double>(K);
    const bool better =
        best.empty() || std::abs(mean) < std::abs(best_mean) - 1e-12 ||
        (std::abs(mean) <= std::abs(best_mean) + 1e-12 &&
         std::lexicographical_compare(rep.begin(), rep.end(), best.begin(),
                                      best.end()));
    if (better) {
      best = std::move(rep);
      best_shift = angles[k];
      best_mean = mean;
    }
  }
  if (best.empty()) {
    // no anchor is its own median (possible for spread-out sets): plain
    // wrap-and-shift fallback
    std::vector<double> a = angles;
    for (double& x : a) x = wrap_pm_pi(x);
    std::sort(a.begin(), a.end());
    const double med = a[a.size() / 2];
    for (double& x : a) x = wrap_pm_pi(x - med);
    std::sort(a.begin(), a.end());
    if (common_shift) *common_shift = med;
    return a;
  }
  if (common_shift) *common_shift = best_shift;
  return best;
}

std::vector<double> median_zero_gauge(const std::vector<double>& angles) {
  return median_zero_gauge(angles, nullptr);
}

}  // namespace spincert
