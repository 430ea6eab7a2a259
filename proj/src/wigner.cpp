#include "lieharm/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace lieharm {

namespace {

double log_factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(1024);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::lgamma(static_cast<double>(i) + 1.0);
    return t;
  }();
  if (n >= 0 && static_cast<std::size_t>(n) < table.size()) return table[static_cast<std::size_t>(n)];
  return std::lgamma(n + 1.0);
}

}  // namespace

double wigner_small_d_entry(int two_l, int two_mp, int two_m, double beta) {
  if (std::abs(two_mp) > two_l || std::abs(two_m) > two_l) return 0.0;
  const int jpmp = (two_l + two_mp) / 2;
  const int jmmp = (two_l - two_mp) / 2;
  const int jpm = (two_l + two_m) / 2;
  const int jmm = (two_l - two_m) / 2;
  const int mdiff = (two_mp - two_m) / 2;  // m' - m

  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  const double log_norm =
      0.5 * (log_factorial(jpmp) + log_factorial(jmmp) + log_factorial(jpm) + log_factorial(jmm));
  const double log_c = std::log(std::abs(c));
  const double log_s = std::log(std::abs(s));
  const int k_lo = std::max(0, -mdiff);
  const int k_hi = std::min(jpm, jmmp);
  double sum = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const int c_exp = two_l - 2 * k - mdiff;
    const int s_exp = 2 * k + mdiff;
    if ((c_exp > 0 && c == 0.0) || (s_exp > 0 && s == 0.0)) continue;
    double log_mag = log_norm - log_factorial(jpm - k) - log_factorial(k) - log_factorial(jmmp - k) -
                     log_factorial(k + mdiff);
    double sign = ((k + mdiff) % 2 == 0) ? 1.0 : -1.0;
    if (c_exp > 0) {
      log_mag += c_exp * log_c;
      if (c < 0.0 && (c_exp % 2 == 1)) sign = -sign;
    }
    if (s_exp > 0) {
      log_mag += s_exp * log_s;
      if (s < 0.0 && (s_exp % 2 == 1)) sign = -sign;
    }
    sum += sign * std::exp(log_mag);
  }
  return sum;
}

std::vector<Eigen::MatrixXd> wigner_small_d_all(int two_l_max, double beta) {
  std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(two_l_max + 1));
  for (int two_l = 0; two_l <= two_l_max; ++two_l) {
    out[static_cast<std::size_t>(two_l)] = Eigen::MatrixXd::Zero(two_l + 1, two_l + 1);
  }
  const double cb = std::cos(beta);
  // One recursion in l per (m', m) pair of equal parity.
  for (int two_mp = -two_l_max; two_mp <= two_l_max; ++two_mp) {
    for (int two_m = -two_l_max; two_m <= two_l_max; ++two_m) {
      if ((two_mp - two_m) % 2 != 0) continue;
      const int two_j0 = std::max(std::abs(two_mp), std::abs(two_m));
      if ((two_j0 - two_mp) % 2 != 0) continue;
      const double mp = 0.5 * two_mp;
      const double m = 0.5 * two_m;
      double prev = 0.0;
      double cur = wigner_small_d_entry(two_j0, two_mp, two_m, beta);
      for (int two_j = two_j0;; two_j += 2) {
        const int row = (two_j - two_mp) / 2;
        const int col = (two_j - two_m) / 2;
        out[static_cast<std::size_t>(two_j)](row, col) = cur;
        if (two_j + 2 > two_l_max) break;
        const double j = 0.5 * two_j;
        const double j1 = j + 1.0;
        const double denom = std::sqrt((j1 * j1 - mp * mp) * (j1 * j1 - m * m));
        double next;
        if (two_j == 0) {
          next = cb * cur;  // d^1_{00} = cos(beta)
        } else {
          const double a = j1 * (2.0 * j + 1.0) / denom;
          const double b = j1 * std::sqrt((j * j - mp * mp) * (j * j - m * m)) / (j * denom);
          next = a * (cb - mp * m / (j * j1)) * cur - b * prev;
        }
        prev = cur;
        cur = next;
      }
    }
  }
  return out;
}

Eigen::MatrixXd wigner_small_d(int two_l, double beta) {
  return wigner_small_d_all(two_l, beta)[static_cast<std::size_t>(two_l)];
}

}  // namespace lieharm
