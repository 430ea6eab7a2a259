#pragma once

// Independent oracles shared by the unit tests.

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "lieharm/builtins.hpp"
#include "lieharm/fourier.hpp"

namespace testing {

using lieharm::cd;
constexpr double kPi = 3.14159265358979323846;

// Spin-l matrices in the basis m = l, l-1, ..., -l built from ladder operators.
struct SpinMatrices {
  Eigen::MatrixXcd jz, jy;
};

inline SpinMatrices spin_matrices(int two_l) {
  const int d = two_l + 1;
  const double l = two_l / 2.0;
  Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(d, d), jp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double m = l - i;
    jz(i, i) = m;
    // J+ |m> = sqrt(l(l+1) - m(m+1)) |m+1>; |m+1> sits at row i-1.
    if (i > 0) jp(i - 1, i) = std::sqrt(l * (l + 1) - m * (m + 1));
  }
  const Eigen::MatrixXcd jm = jp.adjoint();
  return {jz, (jp - jm) / cd(0, 2)};
}

// D^l(alpha, beta, gamma) = exp(-i alpha Jz) exp(-i beta Jy) exp(-i gamma Jz).
inline Eigen::MatrixXcd wigner_D_oracle(int two_l, double alpha, double beta, double gamma) {
  const auto s = spin_matrices(two_l);
  const Eigen::MatrixXcd a = (cd(0, -alpha) * s.jz).exp();
  const Eigen::MatrixXcd b = (cd(0, -beta) * s.jy).exp();
  const Eigen::MatrixXcd c = (cd(0, -gamma) * s.jz).exp();
  return a * b * c;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing
