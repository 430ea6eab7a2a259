#pragma once

// Concrete compact groups: the tori T^1, T^2 (period-2pi angle coordinates)
// and SU(2) (ZYZ Euler angles alpha in [0, 2pi), beta in [0, pi],
// gamma in [0, 4pi)).
//
// Metric normalisation: Casimir eigenvalues are |k|^2 on T^d and l(l+1) on
// SU(2). The SU(2) Lie algebra basis used for finite differences is
// X_k = -i sigma_k / 2.

#include <array>
#include <complex>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lieharm {

using cd = std::complex<double>;

enum class GroupKind { torus1, torus2, su2 };

/// "t1", "t2", "su2".
GroupKind parse_group(const std::string& name);
std::string group_name(GroupKind g);
/// Manifold dimension n.
int group_dimension(GroupKind g);

/// Torus: angle vector in coords[0..d). SU(2): (alpha, beta, gamma).
struct GroupElement {
  std::array<double, 3> coords{};
};

/// Label of an irreducible unitary representation.
/// Torus: label = (k1, k2) (k2 = 0 on T^1). SU(2): label[0] = 2l, label[1] = 0.
struct DualIndex {
  std::array<int, 2> label{};
  int dim = 1;
  double casimir = 0.0;

  int twice_spin() const noexcept { return label[0]; }
  bool operator==(const DualIndex& o) const noexcept { return label == o.label; }
};

std::string dual_label_string(GroupKind g, const DualIndex& xi);
/// Builds the index (dimension, Casimir) from its label.
DualIndex make_dual_index(GroupKind g, std::array<int, 2> label);
/// Smallest band limit L for which enumerate_dual(g, L) contains xi.
int dual_bandlimit(GroupKind g, const DualIndex& xi);

/// Torus: all k with |k_i| <= L (lexicographic). SU(2): 2l = 0..2L.
std::vector<DualIndex> enumerate_dual(GroupKind g, int bandlimit);

/// The unitary matrix xi(x). Torus: [e^{i k.x}]. SU(2): Wigner D^l(alpha,
/// beta, gamma), rows/columns ordered m = l, l-1, ..., -l.
Eigen::MatrixXcd matrix_coefficients(GroupKind g, const DualIndex& xi, const GroupElement& x);

/// xi(x) for every xi in enumerate_dual(g, bandlimit), in that order. For su2
/// the small-d matrices are shared across blocks, so this is much cheaper than
/// calling matrix_coefficients per block.
std::vector<Eigen::MatrixXcd> matrix_coefficients_all(GroupKind g, int bandlimit, const GroupElement& x);

GroupElement identity_element(GroupKind g);
GroupElement multiply(GroupKind g, const GroupElement& x, const GroupElement& y);
GroupElement inverse(GroupKind g, const GroupElement& x);
/// Throws DomainError for coordinates outside the chart (beta outside [0, pi],
/// non-finite values).
void validate_element(GroupKind g, const GroupElement& x);
/// exp(t X_axis) for an orthonormal Lie algebra basis {X_axis}.
GroupElement exp_basis(GroupKind g, int axis, double t);
/// Haar-distributed random element.
GroupElement random_element(GroupKind g, std::mt19937_64& rng);

/// Unit quaternion (w, x, y, z) <-> SU(2) matrix w I - i (x sigma_x + y sigma_y + z sigma_z).
struct Quaternion {
  double w = 1, x = 0, y = 0, z = 0;
};
Quaternion quaternion_from_euler(const GroupElement& x);
GroupElement euler_from_quaternion(const Quaternion& q);
Quaternion operator*(const Quaternion& a, const Quaternion& b);

/// Product quadrature for the normalised Haar measure.
struct QuadratureGrid {
  GroupKind group = GroupKind::torus1;
  int bandlimit = 0;
  std::vector<GroupElement> nodes;
  std::vector<double> weights;

  // Torus: N = 2L + 2 uniform points per axis, node index i1 * N + i2.
  int points_per_axis = 0;
  // SU(2): node index (a * n_beta + b) * n_gamma + c.
  int n_alpha = 0, n_beta = 0, n_gamma = 0;
  std::vector<double> beta_nodes;    // arccos of Gauss-Legendre nodes
  std::vector<double> beta_weights;  // Gauss-Legendre weights / 2 (sum to 1)

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Exact for products of matrix coefficients of band limit <= L each.
/// Torus: N = 2L+2 uniform points per axis. SU(2): 2B uniform alpha, B
/// Gauss-Legendre nodes in cos(beta), 2B uniform gamma, B = 2L+2.
QuadratureGrid haar_quadrature(GroupKind g, int bandlimit);
/// Process-wide cached grid, shared read-only.
std::shared_ptr<const QuadratureGrid> shared_quadrature(GroupKind g, int bandlimit);

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct WeylRow {
  int bandlimit;
  double partial_sum;
};

/// S(L') = sum over the dual within band limit L' of d^2 (1 + lambda)^{-alpha},
/// for L' = 1..L.
std::vector<WeylRow> weyl_summability(GroupKind g, double alpha, int bandlimit);

}  // namespace lieharm
