#include "lieharm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lieharm/error.hpp"

namespace lieharm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_log(double v) { return v > 0 ? std::log(v) : kNegInf; }

double eigen_of(IterateOperator op, double lambda) {
  return op == IterateOperator::laplacian ? -lambda : 1.0 + lambda;
}

}  // namespace

FourierCoefficients apply_spectral_multiplier(const FourierCoefficients& T,
                                              const std::function<cd(double)>& mult) {
  FourierCoefficients out = T;
  for (auto& blk : out.blocks) {
    const cd c = mult(blk.xi.casimir);
    for (auto& s : blk.slices) s *= c;
  }
  return out;
}

FourierCoefficients apply_laplacian(const FourierCoefficients& T) {
  return apply_spectral_multiplier(T, [](double lambda) { return cd(-lambda); });
}

double laplacian_fd_defect(GroupKind g, const DualIndex& xi, const GroupElement& x, double step) {
  if (!(step > 0)) throw DomainError("finite-difference step must be positive");
  validate_element(g, x);
  const Eigen::MatrixXcd f0 = matrix_coefficients(g, xi, x);
  Eigen::MatrixXcd lap = Eigen::MatrixXcd::Zero(f0.rows(), f0.cols());
  for (int axis = 0; axis < group_dimension(g); ++axis) {
    const auto xp = multiply(g, x, exp_basis(g, axis, step));
    const auto xm = multiply(g, x, exp_basis(g, axis, -step));
    lap += (matrix_coefficients(g, xi, xp) - 2.0 * f0 + matrix_coefficients(g, xi, xm)) / (step * step);
  }
  return (lap + xi.casimir * f0).cwiseAbs().maxCoeff();
}

std::vector<double> iterate_log_supnorms(const GridFunction& f, int j_max, IterateOperator op) {
  return iterate_log_supnorms(forward(f), f.grid, j_max, op);
}

std::vector<double> iterate_log_supnorms(const FourierCoefficients& T, std::shared_ptr<const QuadratureGrid> grid,
                                         int j_max, IterateOperator op) {
  if (j_max < 0) throw ParameterError("j_max must be nonnegative");
  double mu_max = 0;
  for (const auto& blk : T.blocks)
    if (blk.hs_norm() > 0) mu_max = std::max(mu_max, std::abs(eigen_of(op, blk.xi.casimir)));

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(j_max) + 1);
  for (int j = 0; j <= j_max; ++j) {
    if (mu_max == 0) {
      out.push_back(j == 0 ? safe_log(sup_norm(inverse(T, grid))) : kNegInf);
      continue;
    }
    // Normalise by mu_max^j so the inverse transform never overflows.
    const auto Tj = apply_spectral_multiplier(
        T, [&](double lambda) { return cd(std::pow(eigen_of(op, lambda) / mu_max, j)); });
    out.push_back(j * std::log(mu_max) + safe_log(sup_norm(inverse(Tj, grid))));
  }
  return out;
}

std::vector<double> iterate_supnorms(const GridFunction& f, int j_max, IterateOperator op) {
  auto logs = iterate_log_supnorms(f, j_max, op);
  for (auto& v : logs) v = std::exp(v);  // overflow -> +inf, -inf -> 0
  return logs;
}

std::vector<double> iterate_supnorms(const FourierCoefficients& T, std::shared_ptr<const QuadratureGrid> grid,
                                     int j_max, IterateOperator op) {
  auto logs = iterate_log_supnorms(T, std::move(grid), j_max, op);
  for (auto& v : logs) v = std::exp(v);
  return logs;
}

std::string SeminormReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "j,supnorm,weighted\n";
  for (std::size_t j = 0; j < supnorms.size(); ++j)
    os << j << "," << supnorms[j] << "," << std::exp(log_weighted[j]) << "\n";
  return os.str();
}

SeminormReport iterate_seminorm(const GridFunction& f, const WeightFunction& w, double h,
                                const SeminormOptions& opts) {
  if (!(h > 0)) throw DomainError("h must be positive");
  SeminormReport rep;
  rep.weight = w;
  rep.h = h;
  const auto logs = iterate_log_supnorms(f, opts.j_max, IterateOperator::laplacian);
  double best = kNegInf;
  int small_run = 0;
  for (int j = 0; j <= opts.j_max; ++j) {
    const double ls = logs[static_cast<std::size_t>(j)];
    const double term = ls - young_conjugate(w, h, 2.0 * j);
    rep.log_supnorms.push_back(ls);
    rep.supnorms.push_back(std::exp(ls));
    rep.log_weighted.push_back(term);
    if (!std::isfinite(rep.supnorms.back())) rep.saturated = true;
    rep.j_computed = j;
    if (term > best) {
      best = term;
      rep.argmax_j = j;
      small_run = 0;
    } else if (term < best + std::log(opts.small_ratio)) {
      if (++small_run >= opts.patience && opts.early_stop) {
        rep.early_stopped = true;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  rep.log_value = best;
  rep.value = std::exp(best);
  if (!std::isfinite(rep.value) && best > 0) rep.saturated = true;
  return rep;
}

IteratesDecayReport iterates_vs_decay_check(const GridFunction& f, const WeightFunction& w, double h,
                                            int j_max, double max_constant) {
  if (!(h > 0)) throw DomainError("h must be positive");
  IteratesDecayReport rep;
  rep.j_max = j_max;
  const int n = group_dimension(f.group());
  const auto T = forward(f);
  const auto logS = iterate_log_supnorms(f, j_max, IterateOperator::shifted);

  double log_c1 = kNegInf, log_lhs = kNegInf, log_rhs = kNegInf;
  for (const auto& blk : T.blocks) {
    IteratesDecayRow row;
    row.xi = blk.xi;
    row.hs_norm = blk.hs_norm();
    const double lmu = std::log1p(blk.xi.casimir);
    double lb = kInf;
    for (int j = 0; j <= j_max; ++j) lb = std::min(lb, (n - j) * lmu + logS[static_cast<std::size_t>(j)]);
    row.coefficient_bound = std::exp(lb);
    const double lw = w(std::sqrt(blk.xi.casimir)) / h;
    if (row.hs_norm > 1e-300) {
      log_c1 = std::max(log_c1, std::log(row.hs_norm) - lb);
      log_lhs = std::max(log_lhs, std::log(row.hs_norm) + lw);
    }
    if (std::isfinite(lb)) log_rhs = std::max(log_rhs, lb + lw);
    rep.rows.push_back(row);
  }
  double log_c2 = kNegInf;
  for (int j = 0; j <= j_max; ++j) {
    double lr = kNegInf;
    for (const auto& blk : T.blocks) {
      const double hs = blk.hs_norm();
      if (hs > 1e-300) lr = std::max(lr, (j + n) * std::log1p(blk.xi.casimir) + std::log(hs));
    }
    const double ls = logS[static_cast<std::size_t>(j)];
    if (std::isfinite(ls)) log_c2 = std::max(log_c2, ls - lr);
  }
  rep.c1 = std::exp(log_c1);
  rep.c2 = std::exp(log_c2);
  rep.lhs = std::exp(log_lhs);
  rep.rhs_bound = std::exp(log_c1 + log_rhs);
  if (log_c1 == kNegInf) rep.rhs_bound = 0;
  rep.consistent = rep.c1 <= max_constant && rep.c2 <= max_constant && rep.lhs <= rep.rhs_bound * (1 + 1e-12);
  return rep;
}

}  // namespace lieharm
