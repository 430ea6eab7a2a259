#pragma once

// Decay diagnostics for Fourier coefficient families: the seminorms
//   sup_xi ||T_xi||_HS exp(omega(sqrt(lambda_xi)) / h),
// regression estimates of the critical h and the Gevrey order, and the
// explicit weight fitted from the decay of T.

#include <string>
#include <vector>

#include "lieharm/fourier.hpp"
#include "lieharm/weights.hpp"

namespace lieharm {

/// HS norms below this are treated as exact zeros.
inline constexpr double kHsZero = 1e-300;

double decay_seminorm(const FourierCoefficients& T, const WeightFunction& w, double h);
/// Same, returned as a logarithm (-inf for T = 0); never overflows.
double log_decay_seminorm(const FourierCoefficients& T, const WeightFunction& w, double h);

struct DecayPoint {
  double sqrt_lambda;
  double omega;
  double log_hsnorm;
  double fitted;  // c - omega / h*
};

struct HSweepRow {
  double h;
  double log_seminorm;
};

struct DecayReport {
  WeightFunction weight = WeightFunction::log1p();
  std::vector<HSweepRow> sweep;
  std::vector<DecayPoint> points;
  double slope = 0;      // d log||T|| / d omega
  double intercept = 0;
  double residual = 0;   // RMS of the fit
  double h_star = 0;     // -1/slope, +inf when slope >= 0
  double lower_slope = 0, upper_slope = 0;  // fits on the lower / upper half in omega
  bool super_weight_decay = false;          // upper half decays markedly faster

  std::string to_csv() const;  // sqrt_lambda,log_hsnorm,fitted
};

/// Least-squares fit log||T_xi|| ~ c - omega(sqrt lambda_xi)/h* over the
/// nonzero blocks with omega > 0. `h_grid` empty selects 2^{k/2}, k = -6..6.
/// Throws InsufficientDataError with fewer than two distinct lambda values.
DecayReport estimate_critical_h(const FourierCoefficients& T, const WeightFunction& w,
                                const std::vector<double>& h_grid = {});

struct WeightFit {
  WeightFunction weight = WeightFunction::log1p();
  int n_max = 0;
  std::vector<double> log_C;  // log C_n, n = 0..n_max
  /// ||T_xi||_HS <= scale * exp(-g(sqrt lambda_xi)) on every block, scale = max(1, C_0).
  double scale = 1;
};

/// g(t) = max_{n <= min(t, n_max)} n log(1+t) - log C_n with
/// C_n = sup_xi ||T_xi||_HS (1+lambda_xi)^n, clipped to max(0, g) and to 0 on
/// [0, 1], tabulated at t = sqrt(lambda_xi). n_max is the last n whose sup is
/// attained strictly inside the truncated dual. Throws PreconditionError when
/// not even n = 1 is reliable.
WeightFit fit_weight_details(const FourierCoefficients& T);
WeightFunction fit_weight_from_decay(const FourierCoefficients& T);

struct GevreyOrderFit {
  double s = 0;
  double intercept = 0;
  double residual = 0;
  int points = 0;
  bool outside_weight_range = false;  // s clearly above 1: faster than any admissible weight
};

/// Fit log(-log(||T_xi|| / max ||T||)) ~ s log sqrt(lambda_xi) + c on the
/// decreasing envelope of the HS norms.
GevreyOrderFit gevrey_order_fit(const FourierCoefficients& T);
double gevrey_order_estimate(const FourierCoefficients& T);

}  // namespace lieharm
