#pragma once

// Strong factorization f = g * f' on the truncated dual, its vector form for
// finite-dimensional representations, and the compactly supported variant on
// the circle built from a Gevrey partition of unity.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lieharm/fourier.hpp"
#include "lieharm/weights.hpp"

namespace lieharm {

/// pi(x) = basis * blockdiag(xi_i(x)) * basis^dagger on C^m, m = sum d_xi.
struct FiniteRep {
  GroupKind group = GroupKind::torus1;
  std::vector<DualIndex> blocks;
  Eigen::MatrixXcd basis;  // unitary, m x m

  static FiniteRep from_labels(GroupKind g, const std::vector<std::array<int, 2>>& labels);
  int dim() const;
  int bandlimit() const;
  Eigen::MatrixXcd operator()(const GroupElement& x) const;
};

/// "0,1,2" (su2 twice-spins, or t1 characters); t2 uses "1:0,0:-2".
FiniteRep parse_rep(GroupKind g, const std::string& spec);

/// x -> pi(x) v sampled on `grid` (default: shared grid of the rep's band limit).
GridFunction orbit_map(const FiniteRep& rep, const Eigen::VectorXcd& v,
                       std::shared_ptr<const QuadratureGrid> grid = nullptr);

/// Pi(chi) v = sum_nodes w chi(x) pi(x) v.
Eigen::VectorXcd induced_action(const FiniteRep& rep, const GridFunction& chi, const Eigen::VectorXcd& v);

struct FactorizationResult {
  FourierCoefficients f_hat;    // F f on the truncated dual
  FourierCoefficients g;        // C_xi^{-1} Id
  FourierCoefficients f_prime;  // C_xi F f(xi)
  std::vector<double> multipliers;  // C_xi, aligned with the blocks
  WeightFunction weight = WeightFunction::log1p();
  double h = 0, h_prime = 0;
  double residual = 0;            // sup_grid |f - F^{-1}(g o f')|
  double coefficient_defect = 0;  // max_xi ||g o f' - F f||_HS
  double decay_f = 0;             // decay seminorm of F f at h
  double shifted_h = 0;           // (1/h - 1/h')^{-1}
  double decay_f_prime = 0;       // decay seminorm of f' at shifted_h
  std::vector<double> margins;    // decay_f - ||f'_xi|| e^{(1/h - 1/h') omega}
  double min_margin = 0;
  std::string worst_label;
};

/// Throws ParameterError unless h' > h > 0.
FactorizationResult strong_factorize(const GridFunction& f, const WeightFunction& w, double h, double h_prime);

struct SetFactorization {
  FourierCoefficients g;
  std::vector<double> multipliers;
  std::vector<FactorizationResult> members;
  double max_residual = 0;
  double sup_shifted_seminorm = 0;  // sup_i decay seminorm of f'_i at the shifted h
  double min_margin = 0;
};

/// One g for the whole family (common grid required).
SetFactorization bounded_factorize_set(const std::vector<GridFunction>& fs, const WeightFunction& w, double h,
                                       double h_prime);

struct VectorFactorization {
  FactorizationResult inner;  // factorization of the orbit gamma_v
  GridFunction g_check;       // x -> g(x^{-1})
  Eigen::VectorXcd v_tilde;   // f'_v(e)
  double residual = 0;        // |v - Pi(g_check) v_tilde|_inf
  double orbit_defect = 0;    // sup |gamma_{v_tilde} - f'_v|
};

VectorFactorization factorize_vector(const FiniteRep& rep, const Eigen::VectorXcd& v, const WeightFunction& w,
                                     double h, double h_prime);

/// exp(-(1 - u^2)^{-1/(s-1)}) with u = (x - center)/halfwidth (circle
/// distance), zero for |u| >= 1. torus(1) only.
GridFunction gevrey_bump(double s, double center, double halfwidth, std::shared_ptr<const QuadratureGrid> grid);

/// ceil(2 pi / (delta/2)) + 1 pieces of width delta/2.
int default_pieces(double delta);

struct Partition {
  double halfwidth = 0;  // of W = (-delta/2, delta/2)
  std::vector<double> centers;
  std::vector<GridFunction> chi;  // chi_j = bump_j / sum bumps
  std::vector<GridFunction> psi;  // chi_j * kernel
  GridFunction kernel;            // F^{-1}(e^{-omega/(2h')} Id)
  double chi_sum_defect = 0;      // sup |sum chi_j - 1|
  double psi_sum_defect = 0;      // sup |sum psi_j - kernel|
};

/// Partition of the circle into k translates of W = (-delta/2, delta/2),
/// sampled on `grid`; the kernel has band limit `bandlimit`.
/// Throws CoverageError when k translates cannot cover the circle.
Partition build_partition(double delta, int k, double s, const WeightFunction& w, double h_prime, int bandlimit,
                          std::shared_ptr<const QuadratureGrid> grid);

struct SupportedFactorizationResult {
  GridFunction g;                   // band-limited projection of sum psi_j^* * psi_j
  std::vector<double> S;            // S_k = sum_j |psi_j^(k)|^2 (1x1 blocks)
  std::vector<double> mu;           // smallest eigenvalue per block
  std::vector<double> mu_bound;     // e^{-omega(|k|)/h'} / k
  FourierCoefficients f_prime;      // S^{-1} F f
  int k = 0;
  double delta = 0;
  double residual = 0;              // sup_grid |f - F^{-1}(S f')|
  double outside_support_mass = 0;  // sup_{|x|>=delta} |g| / sup |g|
  double min_mu_margin = 0;         // min_k (mu_k - mu_bound_k)
  bool all_positive = false;
  double psi_sum_defect = 0;
  double min_eigenvalue = 0;
};

/// torus(1) only; w must be non-quasianalytic and s > 1 (QuasianalyticError),
/// h' > h (ParameterError). k = 0 selects default_pieces(delta). Throws
/// ConditioningError when some S_k falls below 1e-13.
SupportedFactorizationResult supported_factorize(const GridFunction& f, double delta, const WeightFunction& w,
                                                 double h, double h_prime, int k, double s);

}  // namespace lieharm
