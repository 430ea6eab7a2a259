#include "lieharm/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lieharm/classify.hpp"
#include "lieharm/error.hpp"

namespace lieharm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_h_pair(double h, double h_prime) {
  if (!(h > 0)) throw ParameterError("h must be positive");
  if (!(h_prime > h)) throw ParameterError("h' must exceed h");
}

std::vector<double> multipliers_for(const FourierCoefficients& T, const WeightFunction& w, double h_prime) {
  std::vector<double> c;
  c.reserve(T.blocks.size());
  for (const auto& blk : T.blocks) c.push_back(std::exp(w(std::sqrt(blk.xi.casimir)) / h_prime));
  return c;
}

FourierCoefficients multiplier_family(GroupKind g, int L, const std::vector<double>& c, bool inverse_values) {
  auto T = FourierCoefficients::zeros(g, L, 1);
  for (std::size_t i = 0; i < T.blocks.size(); ++i) {
    const double v = inverse_values ? 1.0 / c[i] : c[i];
    T.blocks[i].slices[0] = v * Eigen::MatrixXcd::Identity(T.blocks[i].xi.dim, T.blocks[i].xi.dim);
  }
  return T;
}

FactorizationResult factorize_with(const GridFunction& f, const FourierCoefficients& g, const std::vector<double>& c,
                                   const WeightFunction& w, double h, double h_prime) {
  FactorizationResult r;
  r.weight = w;
  r.h = h;
  r.h_prime = h_prime;
  r.multipliers = c;
  r.g = g;
  r.f_hat = forward(f);
  r.f_prime = r.f_hat;
  for (std::size_t i = 0; i < r.f_prime.blocks.size(); ++i)
    for (auto& s : r.f_prime.blocks[i].slices) s *= c[i];

  // Check in the coefficient domain: f' is huge where C is, and a grid
  // round trip would cost digits proportional to log C.
  const auto composed = compose(r.g, r.f_prime);
  r.coefficient_defect = hs_distance(composed, r.f_hat);
  r.residual = sup_distance(f, inverse(composed, f.grid));

  r.decay_f = decay_seminorm(r.f_hat, w, h);
  const double shift = 1.0 / h - 1.0 / h_prime;
  r.shifted_h = 1.0 / shift;
  r.decay_f_prime = decay_seminorm(r.f_prime, w, r.shifted_h);
  r.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& blk : r.f_prime.blocks) {
    const double m = r.decay_f - blk.hs_norm() * std::exp(shift * w(std::sqrt(blk.xi.casimir)));
    r.margins.push_back(m);
    if (m < r.min_margin) {
      r.min_margin = m;
      r.worst_label = dual_label_string(r.f_prime.group, blk.xi);
    }
  }
  return r;
}

double circle_offset(double x, double center) { return std::remainder(x - center, kTwoPi); }

}  // namespace

FiniteRep FiniteRep::from_labels(GroupKind g, const std::vector<std::array<int, 2>>& labels) {
  if (labels.empty()) throw ParameterError("a representation needs at least one block");
  FiniteRep rep;
  rep.group = g;
  for (const auto& l : labels) rep.blocks.push_back(make_dual_index(g, l));
  rep.basis = Eigen::MatrixXcd::Identity(rep.dim(), rep.dim());
  return rep;
}

int FiniteRep::dim() const {
  int m = 0;
  for (const auto& b : blocks) m += b.dim;
  return m;
}

int FiniteRep::bandlimit() const {
  int L = 0;
  for (const auto& b : blocks) L = std::max(L, dual_bandlimit(group, b));
  return L;
}

Eigen::MatrixXcd FiniteRep::operator()(const GroupElement& x) const {
  const int m = dim();
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(m, m);
  int off = 0;
  for (const auto& b : blocks) {
    d.block(off, off, b.dim, b.dim) = matrix_coefficients(group, b, x);
    off += b.dim;
  }
  return basis * d * basis.adjoint();
}

FiniteRep parse_rep(GroupKind g, const std::string& spec) {
  std::vector<std::array<int, 2>> labels;
  std::stringstream ss(spec);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto colon = item.find(':');
      if (colon == std::string::npos) {
        labels.push_back({std::stoi(item), 0});
      } else {
        labels.push_back({std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
      }
    }
  } catch (const std::logic_error&) {
    throw ParameterError("malformed representation spec '" + spec + "'");
  }
  try {
    return FiniteRep::from_labels(g, labels);
  } catch (const DomainError& e) {
    throw ParameterError("representation spec '" + spec + "': " + e.what());
  }
}

GridFunction orbit_map(const FiniteRep& rep, const Eigen::VectorXcd& v, std::shared_ptr<const QuadratureGrid> grid) {
  if (v.size() != rep.dim()) throw ParameterError("vector dimension does not match the representation");
  if (!grid) grid = shared_quadrature(rep.group, rep.bandlimit());
  return GridFunction::sample(grid, rep.dim(), [&](const GroupElement& x) -> Eigen::VectorXcd { return rep(x) * v; });
}

Eigen::VectorXcd induced_action(const FiniteRep& rep, const GridFunction& chi, const Eigen::VectorXcd& v) {
  if (v.size() != rep.dim()) throw ParameterError("vector dimension does not match the representation");
  if (chi.value_dim != 1) throw UnsupportedError("induced action needs a scalar function");
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(rep.dim());
  for (std::size_t i = 0; i < chi.nodes(); ++i) {
    const cd c = chi.values[i];
    if (c == cd(0)) continue;
    acc += (chi.grid->weights[i] * c) * (rep(chi.grid->nodes[i]) * v);
  }
  return acc;
}

FactorizationResult strong_factorize(const GridFunction& f, const WeightFunction& w, double h, double h_prime) {
  check_h_pair(h, h_prime);
  const int L = f.grid->bandlimit;
  const auto probe = FourierCoefficients::zeros(f.group(), L, 1);
  const auto c = multipliers_for(probe, w, h_prime);
  return factorize_with(f, multiplier_family(f.group(), L, c, true), c, w, h, h_prime);
}

SetFactorization bounded_factorize_set(const std::vector<GridFunction>& fs, const WeightFunction& w, double h,
                                       double h_prime) {
  check_h_pair(h, h_prime);
  if (fs.empty()) throw ParameterError("empty family");
  const auto grid = fs.front().grid;
  for (const auto& f : fs)
    if (f.grid->group != grid->group || f.grid->bandlimit != grid->bandlimit)
      throw ParameterError("family members must share one grid");
  const int L = grid->bandlimit;
  SetFactorization out;
  out.multipliers = multipliers_for(FourierCoefficients::zeros(grid->group, L, 1), w, h_prime);
  out.g = multiplier_family(grid->group, L, out.multipliers, true);
  out.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& f : fs) {
    out.members.push_back(factorize_with(f, out.g, out.multipliers, w, h, h_prime));
    const auto& r = out.members.back();
    out.max_residual = std::max(out.max_residual, r.residual);
    out.sup_shifted_seminorm = std::max(out.sup_shifted_seminorm, r.decay_f_prime);
    out.min_margin = std::min(out.min_margin, r.min_margin);
  }
  return out;
}

VectorFactorization factorize_vector(const FiniteRep& rep, const Eigen::VectorXcd& v, const WeightFunction& w,
                                     double h, double h_prime) {
  check_h_pair(h, h_prime);
  if (v.size() != rep.dim()) throw ParameterError("vector dimension does not match the representation");
  VectorFactorization out;
  const auto gamma_v = orbit_map(rep, v);
  out.inner = strong_factorize(gamma_v, w, h, h_prime);
  const GroupKind g = rep.group;
  out.v_tilde = evaluate(out.inner.f_prime, identity_element(g));

  out.g_check = GridFunction::zeros(gamma_v.grid, 1);
  for (std::size_t i = 0; i < out.g_check.nodes(); ++i)
    out.g_check.values[i] = evaluate(out.inner.g, inverse(g, gamma_v.grid->nodes[i]))(0);

  const Eigen::VectorXcd back = induced_action(rep, out.g_check, out.v_tilde);
  out.residual = (v - back).cwiseAbs().maxCoeff();
  const auto lhs = orbit_map(rep, out.v_tilde, gamma_v.grid);
  out.orbit_defect = sup_distance(lhs, inverse(out.inner.f_prime, gamma_v.grid));
  return out;
}

GridFunction gevrey_bump(double s, double center, double halfwidth, std::shared_ptr<const QuadratureGrid> grid) {
  if (!(s > 1)) throw QuasianalyticError("bump order must exceed 1: Gevrey classes of order <= 1 are quasianalytic");
  if (grid->group != GroupKind::torus1) throw UnsupportedError("bumps are implemented on the circle only");
  if (!(halfwidth > 0 && halfwidth < std::numbers::pi)) throw DomainError("bump halfwidth must lie in (0, pi)");
  const double expo = -1.0 / (s - 1.0);
  return GridFunction::sample(grid, 1, [&](const GroupElement& x) {
    Eigen::VectorXcd v(1);
    const double u = circle_offset(x.coords[0], center) / halfwidth;
    v(0) = std::abs(u) < 1.0 ? std::exp(-std::pow(1.0 - u * u, expo)) : 0.0;
    return v;
  });
}

int default_pieces(double delta) {
  if (!(delta > 0)) throw DomainError("support radius must be positive");
  return static_cast<int>(std::ceil(kTwoPi / (0.5 * delta))) + 1;
}

Partition build_partition(double delta, int k, double s, const WeightFunction& w, double h_prime, int bandlimit,
                          std::shared_ptr<const QuadratureGrid> grid) {
  if (!(delta > 0)) throw DomainError("support radius must be positive");
  Partition p;
  p.halfwidth = 0.5 * delta;
  if (!(p.halfwidth < std::numbers::pi)) throw DomainError("support radius too large for the circle");
  if (k < 1 || !(kTwoPi / k < 2.0 * p.halfwidth)) {
    const int need = static_cast<int>(std::floor(kTwoPi / (2.0 * p.halfwidth))) + 1;
    throw CoverageError(std::to_string(k) + " translates of a width-" + std::to_string(2.0 * p.halfwidth) +
                        " interval cannot cover the circle (need at least " + std::to_string(need) + ")");
  }
  std::vector<GridFunction> bumps;
  for (int j = 0; j < k; ++j) {
    p.centers.push_back(kTwoPi * j / k);
    bumps.push_back(gevrey_bump(s, p.centers.back(), p.halfwidth, grid));
  }
  GridFunction total = GridFunction::zeros(grid, 1);
  for (const auto& b : bumps)
    for (std::size_t i = 0; i < total.nodes(); ++i) total.values[i] += b.values[i];

  auto kc = FourierCoefficients::zeros(GroupKind::torus1, bandlimit, 1);
  for (auto& blk : kc.blocks) blk.slices[0](0, 0) = std::exp(-w(std::sqrt(blk.xi.casimir)) / (2.0 * h_prime));
  p.kernel = inverse(kc, grid);

  GridFunction chi_sum = GridFunction::zeros(grid, 1), psi_sum = GridFunction::zeros(grid, 1);
  for (const auto& b : bumps) {
    GridFunction chi = GridFunction::zeros(grid, 1), psi = GridFunction::zeros(grid, 1);
    for (std::size_t i = 0; i < chi.nodes(); ++i) {
      chi.values[i] = b.values[i] / total.values[i];
      psi.values[i] = chi.values[i] * p.kernel.values[i];
      chi_sum.values[i] += chi.values[i];
      psi_sum.values[i] += psi.values[i];
    }
    p.chi.push_back(std::move(chi));
    p.psi.push_back(std::move(psi));
  }
  for (std::size_t i = 0; i < chi_sum.nodes(); ++i) {
    p.chi_sum_defect = std::max(p.chi_sum_defect, std::abs(chi_sum.values[i] - 1.0));
    p.psi_sum_defect = std::max(p.psi_sum_defect, std::abs(psi_sum.values[i] - p.kernel.values[i]));
  }
  return p;
}

SupportedFactorizationResult supported_factorize(const GridFunction& f, double delta, const WeightFunction& w,
                                                 double h, double h_prime, int k, double s) {
  if (f.group() != GroupKind::torus1) throw UnsupportedError("supported factorization is implemented on the circle only");
  if (!(s > 1)) throw QuasianalyticError("bump order must exceed 1");
  if (!w.non_quasianalytic())
    throw QuasianalyticError("weight " + w.describe() + " is quasianalytic: no compactly supported factors");
  check_h_pair(h, h_prime);
  if (k == 0) k = default_pieces(delta);

  SupportedFactorizationResult r;
  r.k = k;
  r.delta = delta;
  const int L = f.grid->bandlimit;
  // The pieces are not band-limited; sample them finely so the transforms
  // below L carry negligible aliasing.
  const auto fine = shared_quadrature(GroupKind::torus1, 4 * L + 1);
  const Partition part = build_partition(delta, k, s, w, h_prime, L, fine);
  r.psi_sum_defect = part.psi_sum_defect;

  auto S = FourierCoefficients::zeros(GroupKind::torus1, L, 1);
  for (const auto& psi : part.psi) {
    const auto ph = forward(psi, L);
    for (std::size_t i = 0; i < S.blocks.size(); ++i) {
      const auto& A = ph.blocks[i].slices[0];
      S.blocks[i].slices[0] += A.adjoint() * A;
    }
  }
  r.all_positive = true;
  r.min_mu_margin = std::numeric_limits<double>::infinity();
  r.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& blk : S.blocks) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blk.slices[0]);
    const double mu = es.eigenvalues().minCoeff();
    const double bound = std::exp(-w(std::sqrt(blk.xi.casimir)) / h_prime) / k;
    r.S.push_back(blk.slices[0](0, 0).real());
    r.mu.push_back(mu);
    r.mu_bound.push_back(bound);
    r.min_mu_margin = std::min(r.min_mu_margin, mu - bound);
    r.min_eigenvalue = std::min(r.min_eigenvalue, mu);
    if (!(mu > 0)) r.all_positive = false;
    if (!(mu >= 1e-13))
      throw ConditioningError("S is numerically singular (smallest eigenvalue " + std::to_string(mu) + ")",
                              dual_label_string(GroupKind::torus1, blk.xi));
  }

  const auto fh = forward(f);
  r.f_prime = fh;
  for (std::size_t i = 0; i < r.f_prime.blocks.size(); ++i) {
    const Eigen::MatrixXcd Sinv = S.blocks[i].slices[0].inverse();
    for (auto& sl : r.f_prime.blocks[i].slices) sl = Sinv * sl;
  }
  r.residual = sup_distance(f, inverse(compose(S, r.f_prime), f.grid));

  r.g = inverse(S, f.grid);
  double inside = 0, outside = 0;
  for (std::size_t i = 0; i < r.g.nodes(); ++i) {
    const double a = std::abs(r.g.values[i]);
    inside = std::max(inside, a);
    if (std::abs(circle_offset(f.grid->nodes[i].coords[0], 0.0)) >= delta) outside = std::max(outside, a);
  }
  r.outside_support_mass = inside > 0 ? outside / inside : 0.0;
  return r;
}

}  // namespace lieharm
