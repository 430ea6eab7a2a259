#pragma once

// Weight functions omega: [0, inf) -> [0, inf), their Young conjugates and
// empirical checks of the weight axioms.
//
// Axioms checked by check_weight_axioms (all asymptotic, so only witnessed):
//   (alpha)  omega(2t) = O(omega(t))
//   (beta)   omega(t) = O(t)          (beta0: omega(t) = o(t))
//   (gamma)  log t = o(omega(t))
//   (delta)  u -> omega(e^u) is convex

#include <string>
#include <utility>
#include <vector>

namespace lieharm {

class WeightFunction {
 public:
  enum class Kind { gevrey, log1p, tabulated };

  struct Knot {
    double t;
    double omega;
  };

  /// omega(t) = max{0, t^s - 1}; requires 0 < s <= 1.
  static WeightFunction gevrey(double s);
  /// omega(t) = log(1 + t). Borderline weight for the C^infinity case.
  static WeightFunction log1p();
  /// Piecewise linear through `knots` (sorted by t, first knot at t = 0),
  /// extrapolated beyond the last knot with the slope of the last segment.
  static WeightFunction tabulated(std::vector<Knot> knots,
                                  bool satisfies_beta0 = false,
                                  bool non_quasianalytic = false);

  Kind kind() const noexcept { return kind_; }
  double gevrey_order() const noexcept { return s_; }
  const std::vector<Knot>& knots() const noexcept { return knots_; }
  bool satisfies_beta0() const noexcept { return beta0_; }
  /// int_0^inf omega(t) / t^2 dt < inf.
  bool non_quasianalytic() const noexcept { return non_quasianalytic_; }

  /// omega(t); throws DomainError for t < 0.
  double operator()(double t) const;

  /// Canonical spec string ("gevrey:s=0.5", "log1p", "table:<n knots>").
  std::string describe() const;

 private:
  WeightFunction() = default;

  Kind kind_ = Kind::gevrey;
  double s_ = 1.0;
  std::vector<Knot> knots_;
  bool beta0_ = false;
  bool non_quasianalytic_ = false;
};

/// Parses "gevrey:s=0.5", "log1p" or "table:path.csv" (CSV columns t,omega
/// with a header line).
WeightFunction parse_weight_spec(const std::string& spec);

inline double eval_weight(const WeightFunction& w, double t) { return w(t); }

/// Default u-grid spacing used by the numeric conjugate.
inline constexpr double kDefaultConjugateResolution = 1e-3;

/// Scaled Young conjugate (1/h) phi*(h t) with phi*(t) = sup_{u>=0} {tu - omega(e^u)}.
/// Closed form for Gevrey weights, grid maximisation otherwise. Returns +inf
/// when the supremum is unbounded (log1p with h t > 1).
double young_conjugate(const WeightFunction& w, double h, double t,
                       double resolution = kDefaultConjugateResolution);

/// Same quantity, always by grid maximisation (used to cross-check the closed form).
double young_conjugate_numeric(const WeightFunction& w, double h, double t,
                               double resolution = kDefaultConjugateResolution);

/// Closed form for omega_s: 1/h + (t/s) log(h t / (s e)) when h t >= s, else 0.
double gevrey_young_conjugate_closed_form(double s, double h, double t);

/// A YoungConjugate bound to one weight and one h.
class YoungConjugate {
 public:
  YoungConjugate(WeightFunction w, double h,
                 double resolution = kDefaultConjugateResolution);
  double operator()(double t) const { return young_conjugate(w_, h_, t, resolution_); }
  const WeightFunction& weight() const noexcept { return w_; }
  double h() const noexcept { return h_; }

 private:
  WeightFunction w_;
  double h_;
  double resolution_;
};

struct AxiomReport {
  double alpha_constant = 0;        // sup omega(2t)/omega(t)
  double beta_constant = 0;         // sup omega(t)/t
  double beta0_tail_ratio = 0;      // omega(t_max)/t_max
  bool beta0_tail_decreasing = false;
  double gamma_tail_min_ratio = 0;  // min over the tail of omega(t)/log t
  double gamma_tail_last_ratio = 0;
  bool gamma_tail_increasing = false;
  double delta_convexity_defect = 0;  // max of -(second difference) of omega(e^u)
};

/// Empirical witnesses for the weight axioms on samples in (1, t_max]; the
/// tail is [t_max/2, t_max]. Requires t_max >= 10.
AxiomReport check_weight_axioms(const WeightFunction& w, double t_max, int samples);

struct YoungWitness {
  double h_prime = 0;
  double C = 0;
  double max_defect = 0;
};

/// Searches h' = h * 0.9^i and the smallest C >= 1 with
///   (1/h) omega(t) <= sup_k [k log t - (1/h') phi*(k h')] + log C   on t_grid.
/// Throws SearchFailure when no h' in the sweep admits C <= max_C.
YoungWitness young_inequality_witness(const WeightFunction& w, double h,
                                      const std::vector<double>& t_grid,
                                      double max_C = 1e12);

}  // namespace lieharm
