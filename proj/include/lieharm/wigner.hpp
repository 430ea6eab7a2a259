#pragma once

#include <vector>

#include <Eigen/Dense>

namespace lieharm {

/// Wigner small-d matrix d^l(beta), l = two_l / 2, entry (i, j) =
/// d^l_{m' m}(beta) with m' = l - i, m = l - j. Convention:
/// d^l_{m'm}(beta) = <l m'| exp(-i beta J_y) |l m>.
Eigen::MatrixXd wigner_small_d(int two_l, double beta);

/// d^l(beta) for every two_l = 0..two_l_max, from one three-term recursion
/// in l per (m', m) pair.
std::vector<Eigen::MatrixXd> wigner_small_d_all(int two_l_max, double beta);

/// Single entry from the closed-form sum (used for recursion seeds).
double wigner_small_d_entry(int two_l, int two_mp, int two_m, double beta);

}  // namespace lieharm
