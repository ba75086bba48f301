#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spincert {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// Error taxonomy. Argument/domain problems derive from std::invalid_argument,
// runtime numerical problems from std::runtime_error; callers (and the CLI
// exit-code mapping) rely on that split.
struct UnsupportedDimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedRegime : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedState : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NumericalInconsistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GradientUndefined : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateTruncation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Contiguous range of z-basis levels, inclusive on both ends, in the
// ascending-m index convention (level 0 is m = -J).
struct Subspace {
  int lo = 0;
  int hi = 0;

  int size() const { return hi - lo + 1; }
  bool contains(int level) const { return level >= lo && level <= hi; }
  static Subspace full(int d) { return Subspace{0, d - 1}; }

  void validate(int d) const {
    if (lo < 0 || hi >= d || lo > hi)
      throw std::invalid_argument("subspace [" + std::to_string(lo) + "," +
                                  std::to_string(hi) + "] out of range for d=" +
                                  std::to_string(d));
  }
};

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace spincert
