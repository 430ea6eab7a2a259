#pragma once

// Group Fourier transform on the truncated dual.
//
//   F f(xi)  = int f(x) xi(x) dx                      (d_xi x d_xi, per C^m slice)
//   f(x)     = sum_xi d_xi Tr[xi(x)^* F f(xi)]
//   ||f||^2  = sum_xi d_xi ||F f(xi)||_HS^2
//   F(chi * f)(xi) = F chi(xi) o F f(xi)

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lieharm/group.hpp"

namespace lieharm {

/// Samples of f: G -> C^m on a quadrature grid; values[node * m + c].
struct GridFunction {
  std::shared_ptr<const QuadratureGrid> grid;
  int value_dim = 1;
  std::vector<cd> values;

  GroupKind group() const { return grid->group; }
  std::size_t nodes() const { return grid->size(); }
  cd& at(std::size_t node, int c) { return values[node * static_cast<std::size_t>(value_dim) + static_cast<std::size_t>(c)]; }
  cd at(std::size_t node, int c) const {
    return values[node * static_cast<std::size_t>(value_dim) + static_cast<std::size_t>(c)];
  }
  Eigen::VectorXcd value(std::size_t node) const;

  static GridFunction zeros(std::shared_ptr<const QuadratureGrid> grid, int value_dim);
  /// Samples `fn` (returning an m-vector) at every node.
  static GridFunction sample(std::shared_ptr<const QuadratureGrid> grid, int value_dim,
                             const std::function<Eigen::VectorXcd(const GroupElement&)>& fn);
};

/// One dual index with its m slices (slice-major storage).
struct CoefficientBlock {
  DualIndex xi;
  std::vector<Eigen::MatrixXcd> slices;

  /// max over slices of the Hilbert-Schmidt norm.
  double hs_norm() const;
};

struct FourierCoefficients {
  GroupKind group = GroupKind::torus1;
  int bandlimit = 0;
  int value_dim = 1;
  std::vector<CoefficientBlock> blocks;  // enumerate_dual order

  static FourierCoefficients zeros(GroupKind g, int bandlimit, int value_dim);

  /// Block position of a label, or -1.
  int index_of(std::array<int, 2> label) const;
  const CoefficientBlock& at(std::array<int, 2> label) const;
  CoefficientBlock& at(std::array<int, 2> label);
};

/// Hilbert-Schmidt norms (max over slices), aligned with T.blocks.
std::vector<double> hs_norm_table(const FourierCoefficients& T);

/// Forward transform onto band limit L. Throws PreconditionError when the
/// grid of f is not exact to L.
FourierCoefficients forward(const GridFunction& f, int bandlimit);
/// Forward transform at the grid's own band limit.
FourierCoefficients forward(const GridFunction& f);

/// Inverse transform sampled on `grid` (must be exact to T.bandlimit).
GridFunction inverse(const FourierCoefficients& T, std::shared_ptr<const QuadratureGrid> grid);
/// Inverse transform on the shared grid of band limit T.bandlimit.
GridFunction inverse(const FourierCoefficients& T);

/// Pointwise evaluation of the (finite) Fourier series at x.
Eigen::VectorXcd evaluate(const FourierCoefficients& T, const GroupElement& x);

/// Coefficient-wise helpers.
FourierCoefficients add(const FourierCoefficients& a, const FourierCoefficients& b, cd scale_b = 1.0);
FourierCoefficients scale(const FourierCoefficients& a, cd c);
/// max over blocks of the HS distance (max over slices).
double hs_distance(const FourierCoefficients& a, const FourierCoefficients& b);
/// Restriction / zero extension to another band limit.
FourierCoefficients rebandlimit(const FourierCoefficients& T, int bandlimit);

/// sup over nodes and components |f - g|.
double sup_distance(const GridFunction& f, const GridFunction& g);
double sup_norm(const GridFunction& f);
/// Quadrature L^2 norm squared, summed over components.
double l2_norm_squared(const GridFunction& f);

/// |‖f‖² − Σ d ‖F f‖²_HS| / max(‖f‖², tiny), slices summed.
double parseval_defect(const GridFunction& f);

/// L^2 mass of f not captured by its projection onto band limit L
/// (clamped at zero); measured on f's grid.
double projection_tail(const GridFunction& f, int bandlimit);

/// chi * f through the coefficients: F chi(xi) composed with every slice.
/// chi must be scalar (UnsupportedError otherwise).
GridFunction convolve(const GridFunction& chi, const GridFunction& f);
/// Same in the coefficient domain.
FourierCoefficients compose(const FourierCoefficients& chi, const FourierCoefficients& f);

/// Direct nested quadrature (chi * f)(x) = sum_y w_y chi(y) f(y^{-1} x).
/// Quadratic in the grid size. `f` is evaluated at arbitrary points.
GridFunction convolve_by_quadrature(const GridFunction& chi, int value_dim,
                                    const std::function<Eigen::VectorXcd(const GroupElement&)>& f);
/// Same, with f interpolated by its band-limited Fourier series.
GridFunction convolve_by_quadrature(const GridFunction& chi, const GridFunction& f);

/// max_xi ‖F(nested-quadrature chi * f)(xi) − F chi(xi) F f(xi)‖_HS.
double conv_theorem_defect(const GridFunction& chi, const GridFunction& f);

/// psi*(x) = conj(psi(x^{-1})). Grid reindexing on tori; on SU(2) the inverse
/// points are off-grid and psi is evaluated through its Fourier series.
GridFunction involution(const GridFunction& psi);

/// Mutation hook for the verification suite: while enabled, compose() negates
/// its result. Never enable outside of self-tests.
void set_convolution_sign_fault(bool enabled);
bool convolution_sign_fault();

}  // namespace lieharm
