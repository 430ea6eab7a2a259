#pragma once

// Spectral calculus of the Laplace-Beltrami operator: Delta acts on the xi
// block as multiplication by -lambda_xi.

#include <functional>
#include <vector>

#include "lieharm/fourier.hpp"
#include "lieharm/weights.hpp"

namespace lieharm {

/// Which operator is iterated: Delta itself or the shifted 1 - Delta
/// (eigenvalue 1 + lambda), the operator behind the two-sided estimates.
enum class IterateOperator { laplacian, shifted };

/// Multiplies each block by mult(lambda_xi).
FourierCoefficients apply_spectral_multiplier(const FourierCoefficients& T,
                                              const std::function<cd(double)>& mult);

FourierCoefficients apply_laplacian(const FourierCoefficients& T);

/// max_ij |Delta xi_ij(x) + lambda_xi xi_ij(x)| with Delta replaced by the
/// central second difference along an orthonormal Lie algebra basis.
double laplacian_fd_defect(GroupKind g, const DualIndex& xi, const GroupElement& x, double step);

/// log ||P^j f||_inf for j = 0..j_max (P = Delta or 1 - Delta); -inf marks an
/// exact zero. Computed from the coefficients of f on its own grid.
std::vector<double> iterate_log_supnorms(const GridFunction& f, int j_max,
                                         IterateOperator op = IterateOperator::laplacian);
/// Same from exact coefficients, sampled on `grid`. Sampled inputs carry
/// transform round-off of order 1e-16 at every frequency, which Delta^j
/// amplifies by lambda_max^j; this overload avoids that.
std::vector<double> iterate_log_supnorms(const FourierCoefficients& T, std::shared_ptr<const QuadratureGrid> grid,
                                         int j_max, IterateOperator op = IterateOperator::laplacian);

/// ||Delta^j f||_inf for j = 0..j_max; overflowing entries are +inf.
std::vector<double> iterate_supnorms(const GridFunction& f, int j_max,
                                     IterateOperator op = IterateOperator::laplacian);
std::vector<double> iterate_supnorms(const FourierCoefficients& T, std::shared_ptr<const QuadratureGrid> grid,
                                     int j_max, IterateOperator op = IterateOperator::laplacian);

struct SeminormOptions {
  int j_max = 40;
  bool early_stop = true;       // stop after `patience` small terms
  int patience = 3;
  double small_ratio = 1e-3;    // relative to the running sup
};

struct SeminormReport {
  WeightFunction weight = WeightFunction::log1p();
  double h = 0;
  std::vector<double> supnorms;      // ||Delta^j f||_inf (may be +inf)
  std::vector<double> log_supnorms;
  std::vector<double> log_weighted;  // log ||Delta^j f|| - (1/h) phi*(2jh)
  double value = 0;                  // p_{omega,h}(f)
  double log_value = 0;
  int argmax_j = 0;
  int j_computed = 0;                // last j evaluated
  bool early_stopped = false;
  bool saturated = false;            // value or some entry overflowed

  /// CSV: j,supnorm,weighted
  std::string to_csv() const;
};

SeminormReport iterate_seminorm(const GridFunction& f, const WeightFunction& w, double h,
                                const SeminormOptions& opts = {});

struct IteratesDecayRow {
  DualIndex xi;
  double hs_norm = 0;
  double coefficient_bound = 0;  // inf_j (1+lambda)^{n-j} ||(1-Delta)^j f||_inf
};

struct IteratesDecayReport {
  double c1 = 0;  // smallest C1 with ||F f(xi)||_HS <= C1 inf_j (1+lambda)^{n-j} ||(1-Delta)^j f||
  double c2 = 0;  // smallest C2 with ||(1-Delta)^j f|| <= C2 sup_xi (1+lambda)^{j+n} ||F f(xi)||_HS
  double lhs = 0;        // sup_xi ||F f(xi)||_HS e^{omega(sqrt lambda)/h}
  double rhs_bound = 0;  // C1 sup_xi e^{omega(sqrt lambda)/h} coefficient_bound(xi)
  bool consistent = false;
  int j_max = 0;
  std::vector<IteratesDecayRow> rows;
};

/// Fits the constants of the two-sided sup/HS estimates on the truncated dual
/// (iterating 1 - Delta for j = 0..j_max) and reports whether both stay below
/// max_constant.
IteratesDecayReport iterates_vs_decay_check(const GridFunction& f, const WeightFunction& w, double h,
                                            int j_max = 40, double max_constant = 1e4);

}  // namespace lieharm
