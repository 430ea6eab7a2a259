#include "lieharm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "lieharm/builtins.hpp"
#include "lieharm/classify.hpp"
#include "lieharm/error.hpp"
#include "lieharm/factorize.hpp"
#include "lieharm/spectral.hpp"

namespace lieharm {

namespace {

class Suite {
 public:
  explicit Suite(const VerifyOptions& o) : opts_(o), rng_(o.seed) {}

  // defect <= tol
  void check(const std::string& module, const std::string& name, double defect, double tol) {
    report_.properties.push_back({module, name, defect, tol, std::isfinite(defect) && defect <= tol});
  }

  std::uint64_t next_seed() { return rng_(); }
  std::mt19937_64& rng() { return rng_; }
  int samples() const { return opts_.samples; }
  VerifyReport take() { return std::move(report_); }

 private:
  VerifyOptions opts_;
  std::mt19937_64 rng_;
  VerifyReport report_;
};

cd inner(const GridFunction& f, const GridFunction& g) {
  cd s = 0;
  for (std::size_t n = 0; n < f.nodes(); ++n)
    for (int c = 0; c < f.value_dim; ++c) s += f.grid->weights[n] * f.at(n, c) * std::conj(g.at(n, c));
  return s;
}

void weights_properties(Suite& S) {
  double worst = 0;
  for (double s : {0.5, 1.0})
    for (double h : {0.5, 1.0, 2.0})
      for (int t = 0; t <= 50; t += 5) {
        const double a = young_conjugate_numeric(WeightFunction::gevrey(s), h, t);
        const double b = gevrey_young_conjugate_closed_form(s, h, t);
        worst = std::max(worst, std::abs(a - b) / (std::abs(b) + 1e-6));
      }
  S.check("weights", "young_conjugate_closed_form", worst, 1e-6);

  const auto w = WeightFunction::gevrey(0.5);
  double sup_defect = 0;
  for (double t1 = 0; t1 <= 10; t1 += 0.5)
    for (double t2 = 0; t2 <= 10; t2 += 0.5)
      sup_defect = std::max(sup_defect, young_conjugate(w, 1.0, t1) + young_conjugate(w, 1.0, t2) -
                                            young_conjugate(w, 1.0, t1 + t2));
  S.check("weights", "young_conjugate_superadditive", std::max(0.0, sup_defect), 1e-12);

  std::uniform_real_distribution<double> u(0.0, 100.0);
  double mono = 0;
  for (const auto& wf : {WeightFunction::gevrey(0.5), WeightFunction::gevrey(1.0), WeightFunction::log1p()})
    for (int i = 0; i < 200; ++i) {
      double a = u(S.rng()), b = u(S.rng());
      if (a > b) std::swap(a, b);
      mono = std::max(mono, wf(a) - wf(b));
    }
  S.check("weights", "weight_nondecreasing", mono, 0.0);
}

void group_properties(Suite& S) {
  double hom = 0;
  for (GroupKind g : {GroupKind::torus1, GroupKind::torus2, GroupKind::su2})
    for (int i = 0; i < 5 * S.samples(); ++i) {
      const auto x = random_element(g, S.rng());
      const auto y = random_element(g, S.rng());
      const auto xy = multiply(g, x, y);
      for (const auto& xi : enumerate_dual(g, 3))
        hom = std::max(hom, (matrix_coefficients(g, xi, xy) -
                             matrix_coefficients(g, xi, x) * matrix_coefficients(g, xi, y))
                                .norm());
    }
  S.check("group", "homomorphism", hom, 1e-10);

  double uni = 0;
  for (GroupKind g : {GroupKind::torus2, GroupKind::su2}) {
    const auto grid = shared_quadrature(g, 3);
    for (const auto& x : grid->nodes)
      for (const auto& M : matrix_coefficients_all(g, 3, x))
        uni = std::max(uni, (M.adjoint() * M - Eigen::MatrixXcd::Identity(M.rows(), M.cols())).norm());
  }
  S.check("group", "unitarity_at_nodes", uni, 1e-12);
}

void fourier_properties(Suite& S) {
  double rt = 0, pars = 0, lin = 0;
  for (auto [g, L] : {std::pair{GroupKind::torus1, 32}, {GroupKind::torus2, 8}, {GroupKind::su2, 6}})
    for (int i = 0; i < S.samples(); ++i) {
      const auto f = random_function(g, L, 2, S.next_seed());
      const auto f2 = random_function(g, L, 2, S.next_seed());
      const auto T = forward(f);
      rt = std::max(rt, sup_distance(inverse(T, f.grid), f));
      pars = std::max(pars, parseval_defect(f));
      // forward(a f + b f2) = a F f + b F f2
      const cd a(0.3, -1.1), b(-2.0, 0.5);
      auto comb = f;
      for (std::size_t k = 0; k < comb.values.size(); ++k) comb.values[k] = a * f.values[k] + b * f2.values[k];
      const auto lhs = forward(comb);
      const auto rhs = add(scale(T, a), forward(f2), b);
      lin = std::max(lin, hs_distance(lhs, rhs));
      lin = std::max(lin, sup_distance(inverse(rhs, f.grid), comb) / sup_norm(comb));
    }
  S.check("fourier", "roundtrip", rt, 1e-9);
  S.check("fourier", "parseval", pars, 1e-9);
  S.check("fourier", "linearity", lin, 1e-12);

  double conv = 0, assoc = 0;
  for (auto [g, L] : {std::pair{GroupKind::torus1, 8}, {GroupKind::su2, 1}}) {
    const auto chi = random_function(g, L, 1, S.next_seed());
    const auto chi2 = random_function(g, L, 1, S.next_seed());
    const auto f = random_function(g, L, 2, S.next_seed());
    conv = std::max(conv, conv_theorem_defect(chi, f));
    const auto lhs = forward(convolve(convolve(chi, chi2), f));
    const auto rhs = compose(forward(chi), compose(forward(chi2), forward(f)));
    assoc = std::max(assoc, hs_distance(lhs, rhs));
  }
  S.check("fourier", "convolution_theorem", conv, 1e-8);
  S.check("fourier", "convolution_associativity", assoc, 1e-9);
}

void spectral_properties(Suite& S) {
  double fd = 0;
  for (GroupKind g : {GroupKind::torus1, GroupKind::torus2, GroupKind::su2})
    for (const auto& xi : enumerate_dual(g, 4)) {
      if (xi.casimir > 20) continue;
      fd = std::max(fd, laplacian_fd_defect(g, xi, random_element(g, S.rng()), 1e-3));
    }
  S.check("spectral", "eigenvalue_identity_fd", fd, 1e-3);

  // Delta by finite differences on a fine t2 grid vs spectral multiplication.
  {
    const auto T = random_coefficients(GroupKind::torus2, 4, 1, S.next_seed(), 0.5);
    const auto lapT = apply_laplacian(T);
    const double step = 1e-3;
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      const auto x = random_element(GroupKind::torus2, S.rng());
      cd lap = 0;
      for (int axis = 0; axis < 2; ++axis) {
        lap += (evaluate(T, multiply(GroupKind::torus2, x, exp_basis(GroupKind::torus2, axis, step)))(0) -
                2.0 * evaluate(T, x)(0) +
                evaluate(T, multiply(GroupKind::torus2, x, exp_basis(GroupKind::torus2, axis, -step)))(0)) /
               (step * step);
      }
      worst = std::max(worst, std::abs(lap - evaluate(lapT, x)(0)));
    }
    S.check("spectral", "laplacian_commutes_with_forward", worst, 1e-4);
  }

  double sa = 0, nsd = -1e300;
  for (auto [g, L] : {std::pair{GroupKind::torus1, 16}, {GroupKind::torus2, 6}, {GroupKind::su2, 4}})
    for (int i = 0; i < S.samples(); ++i) {
      const auto Tf = random_coefficients(g, L, 1, S.next_seed());
      const auto Tg = random_coefficients(g, L, 1, S.next_seed());
      const auto grid = shared_quadrature(g, L);
      const auto f = inverse(Tf, grid), gg = inverse(Tg, grid);
      const auto lf = inverse(apply_laplacian(Tf), grid), lg = inverse(apply_laplacian(Tg), grid);
      const cd a = inner(lf, gg), b = inner(f, lg);
      sa = std::max(sa, std::abs(a - b) / std::max(1.0, std::abs(a)));
      nsd = std::max(nsd, inner(lf, f).real());
    }
  S.check("spectral", "self_adjoint", sa, 1e-9);
  S.check("spectral", "negative_semidefinite", std::max(0.0, nsd), 1e-12);

  // Eigenfunction: entries grow geometrically with ratio lambda.
  double geo = 0;
  for (auto [g, lab] : {std::pair{GroupKind::torus1, std::array<int, 2>{3, 0}}, {GroupKind::su2, {4, 0}}}) {
    const int L = std::max(lab[0], 2);
    auto T = FourierCoefficients::zeros(g, L, 1);
    auto& blk = T.at(lab);
    blk.slices[0] = Eigen::MatrixXcd::Identity(blk.xi.dim, blk.xi.dim);
    const auto s = iterate_supnorms(inverse(T, shared_quadrature(g, L)), 8);
    for (std::size_t j = 1; j < s.size(); ++j) geo = std::max(geo, std::abs(s[j] / s[j - 1] / blk.xi.casimir - 1));
  }
  S.check("spectral", "eigenfunction_geometric_growth", geo, 1e-9);
}

void classify_properties(Suite& S) {
  const auto w = WeightFunction::gevrey(1.0);
  double mono = 0, scal = 0;
  for (int i = 0; i < S.samples(); ++i) {
    const auto T = random_coefficients(GroupKind::su2, 8, 1, S.next_seed(), 1.0);
    for (double h1 : {0.25, 0.5, 1.0})
      mono = std::max(mono, decay_seminorm(T, w, 2 * h1) - decay_seminorm(T, w, h1));
    const cd c(-1.7, 0.4);
    scal = std::max(scal, std::abs(decay_seminorm(scale(T, c), w, 0.7) / (std::abs(c) * decay_seminorm(T, w, 0.7)) - 1));
  }
  S.check("classify", "seminorm_monotone_in_h", std::max(0.0, mono), 0.0);
  S.check("classify", "seminorm_scaling", scal, 1e-14);

  double shape = 0;
  {
    const auto fit = fit_weight_details(poisson_coefficients(GroupKind::torus1, 64, 1.0));
    double prev = 0;
    for (double t = 0; t <= 70; t += 0.25) {
      const double v = fit.weight(t);
      if (t <= 1) shape = std::max(shape, std::abs(v));
      shape = std::max(shape, prev - v);
      prev = v;
    }
  }
  S.check("classify", "fitted_weight_shape", shape, 0.0);

  {
    auto T = FourierCoefficients::zeros(GroupKind::torus1, 64, 1);
    for (auto& blk : T.blocks) blk.slices[0](0, 0) = std::exp(-2.0 * w(std::sqrt(blk.xi.casimir)));
    const auto rep = estimate_critical_h(T, w);
    const double err = rep.residual < 1e-10 ? std::abs(rep.h_star / 0.5 - 1) : 1.0;
    S.check("classify", "critical_h_exact_exponential", err, 1e-2);
  }
}

void factorize_properties(Suite& S) {
  const auto w = WeightFunction::gevrey(1.0);
  double exact = 0, transfer = -1e300, resid = 0;
  // Decay faster than 1/h keeps the seminorm O(1). The band limit is kept
  // low enough that transform round-off (~1e-16) times e^{omega/h} stays
  // small, so an absolute margin is meaningful.
  for (auto [g, L] : {std::pair{GroupKind::torus1, 16}, {GroupKind::su2, 6}})
    for (int i = 0; i < S.samples(); ++i) {
      const auto f = random_function(g, L, 1, S.next_seed(), 2.5);
      const auto r = strong_factorize(f, w, 0.5, 1.0);
      exact = std::max(exact, r.coefficient_defect);
      resid = std::max(resid, r.residual);
      transfer = std::max(transfer, -r.min_margin);
    }
  S.check("factorize", "strong_exactness", exact, 1e-12);
  S.check("factorize", "strong_residual", resid, 1e-10);
  S.check("factorize", "decay_transfer", std::max(0.0, transfer), 1e-10);

  {
    const auto f = builtin_function(parse_builtin("poisson:1"), GroupKind::torus1, 64);
    const auto r = supported_factorize(f, 1.0, WeightFunction::gevrey(0.5), 0.5, 1.0, 0, 2.0);
    S.check("factorize", "supported_psd", std::max(0.0, -r.min_eigenvalue), 1e-12);
  }

  const auto rep = FiniteRep::from_labels(GroupKind::su2, {{0, 0}, {1, 0}, {2, 0}});
  std::normal_distribution<double> n;
  double vec = 0, orbit = 0, equi = 0;
  for (int i = 0; i < S.samples(); ++i) {
    Eigen::VectorXcd v(rep.dim());
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = cd(n(S.rng()), n(S.rng()));
    const auto r = factorize_vector(rep, v, w, 0.5, 1.0);
    vec = std::max(vec, r.residual);
    orbit = std::max(orbit, r.orbit_defect);

    const auto gamma = orbit_map(rep, v);
    const auto F = forward(gamma);
    const auto x = random_element(GroupKind::su2, S.rng());
    const Eigen::MatrixXcd P = rep(x);
    for (const auto& blk : F.blocks) {
      const Eigen::MatrixXcd xs = matrix_coefficients(GroupKind::su2, blk.xi, x).adjoint();
      for (int c = 0; c < F.value_dim; ++c) {
        Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Zero(blk.xi.dim, blk.xi.dim);
        for (int c2 = 0; c2 < F.value_dim; ++c2) lhs += P(c, c2) * blk.slices[static_cast<std::size_t>(c2)];
        equi = std::max(equi, (lhs - xs * blk.slices[static_cast<std::size_t>(c)]).norm());
      }
    }
  }
  S.check("factorize", "vector_reconstruction", vec, 1e-9);
  S.check("factorize", "vector_orbit_consistency", orbit, 1e-9);
  S.check("factorize", "orbit_equivariance", equi, 1e-9);
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.pass; });
}

std::vector<std::string> VerifyReport::failing() const {
  std::vector<std::string> out;
  for (const auto& p : properties)
    if (!p.pass) out.push_back(p.module + "." + p.name);
  return out;
}

std::string VerifyReport::table() const {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10s %-34s %12s %10s  %s\n", "module", "property", "defect", "tol", "result");
  os << buf;
  for (const auto& p : properties) {
    std::snprintf(buf, sizeof buf, "%-10s %-34s %12.3e %10.1e  %s\n", p.module.c_str(), p.name.c_str(), p.value,
                  p.tolerance, p.pass ? "PASS" : "FAIL");
    os << buf;
  }
  return os.str();
}

VerifyReport run_verification(const VerifyOptions& opts) {
  Suite S(opts);
  weights_properties(S);
  group_properties(S);
  fourier_properties(S);
  spectral_properties(S);
  classify_properties(S);
  factorize_properties(S);
  return S.take();
}

}  // namespace lieharm
