#include <doctest.h>

#include <cmath>
#include <random>

#include "lieharm/builtins.hpp"
#include "lieharm/classify.hpp"
#include "lieharm/error.hpp"
#include "lieharm/factorize.hpp"
#include "support.hpp"

using namespace lieharm;
using testing::kPi;
using testing::max_abs;

namespace {

GridFunction constant(std::shared_ptr<const QuadratureGrid> grid, cd c) {
  return GridFunction::sample(grid, 1, [c](const GroupElement&) {
    Eigen::VectorXcd v(1);
    v(0) = c;
    return v;
  });
}

double circle_distance(double x) {
  const double r = std::fmod(std::abs(x), 2 * kPi);
  return std::min(r, 2 * kPi - r);
}

}  // namespace

TEST_CASE("representation spec strings") {
  const auto r = parse_rep(GroupKind::su2, "0,1,2");
  CHECK(r.dim() == 6);
  CHECK(r.bandlimit() == 1);
  CHECK(parse_rep(GroupKind::torus2, "1:0,0:-2").dim() == 2);
  CHECK_THROWS_AS(parse_rep(GroupKind::su2, "0,x"), ParameterError);
  CHECK_THROWS_AS(parse_rep(GroupKind::su2, ""), ParameterError);
  CHECK_THROWS_AS(parse_rep(GroupKind::su2, "-1"), ParameterError);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto x = random_element(GroupKind::su2, rng), y = random_element(GroupKind::su2, rng);
    CHECK(max_abs(r(multiply(GroupKind::su2, x, y)) - r(x) * r(y)) <= 1e-12);
    CHECK(max_abs(r(x) * r(x).adjoint() - Eigen::MatrixXcd::Identity(6, 6)) <= 1e-12);
  }
}

TEST_CASE("orbit maps") {
  const auto r1 = parse_rep(GroupKind::torus1, "1,2");
  const auto zero = orbit_map(r1, Eigen::VectorXcd::Zero(2));
  CHECK(sup_norm(zero) == 0.0);

  const auto triv = parse_rep(GroupKind::su2, "0");
  Eigen::VectorXcd c(1);
  c(0) = cd(2, 1);
  const auto t = orbit_map(triv, c);
  for (std::size_t n = 0; n < t.nodes(); ++n) CHECK(std::abs(t.at(n, 0) - c(0)) <= 1e-15);

  // x -> diag(e^{ix}, e^{2ix}) v: coefficients sit at k = -1 and k = -2.
  Eigen::VectorXcd v(2);
  v << 1.0, cd(0, 1);
  const auto g = orbit_map(r1, v, shared_quadrature(GroupKind::torus1, 4));
  const auto F = forward(g, 4);
  for (const auto& b : F.blocks) {
    const int k = b.xi.label[0];
    const double expect0 = k == -1 ? 1.0 : 0.0, expect1 = k == -2 ? 1.0 : 0.0;
    CHECK(std::abs(std::abs(b.slices[0](0, 0)) - expect0) <= 1e-14);
    CHECK(std::abs(std::abs(b.slices[1](0, 0)) - expect1) <= 1e-14);
  }
}

TEST_CASE("induced action") {
  const auto r = parse_rep(GroupKind::su2, "0,1");
  const auto grid = shared_quadrature(GroupKind::su2, 3);
  Eigen::VectorXcd v(3);
  v << cd(1, 2), 3.0, cd(0, -1);
  // Pi(1) is the projection onto invariant vectors.
  const auto p = induced_action(r, constant(grid, 1.0), v);
  CHECK(std::abs(p(0) - v(0)) <= 1e-13);
  CHECK(std::abs(p(1)) + std::abs(p(2)) <= 1e-13);

  // Pi(chi1 * chi2) = Pi(chi1) Pi(chi2).
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto c1 = random_function(GroupKind::su2, 2, 1, seed), c2 = random_function(GroupKind::su2, 2, 1, seed + 10);
    const auto g1 = inverse(forward(c1, 2), grid), g2 = inverse(forward(c2, 2), grid);
    const auto lhs = induced_action(r, convolve(g1, g2), v);
    const auto rhs = induced_action(r, g1, induced_action(r, g2, v));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * (1 + rhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("strong factorization of the Poisson kernel") {
  const auto w = WeightFunction::gevrey(1.0);
  const auto P = builtin_function(parse_builtin("poisson:2"), GroupKind::torus1, 32);
  const auto r = strong_factorize(P, w, 1.0, 2.0);
  CHECK(r.residual <= 1e-12);
  CHECK(r.coefficient_defect <= 1e-14);
  CHECK(r.shifted_h == doctest::Approx(2.0));
  CHECK(std::isfinite(r.decay_f_prime));
  CHECK(r.min_margin >= -1e-12);
  for (std::size_t i = 0; i < r.multipliers.size(); ++i) {
    const double lam = r.f_hat.blocks[i].xi.casimir;
    CHECK(r.multipliers[i] == doctest::Approx(std::exp(w(std::sqrt(lam)) / 2.0)).epsilon(1e-14));
  }
  // g o f' reproduces F f block by block.
  for (std::size_t i = 0; i < r.g.blocks.size(); ++i)
    CHECK(max_abs(r.g.blocks[i].slices[0] * r.f_prime.blocks[i].slices[0] - r.f_hat.blocks[i].slices[0]) <= 1e-15);
}

TEST_CASE("strong factorization: random inputs and single coefficients") {
  const auto w = WeightFunction::gevrey(0.5);
  for (auto [g, L] : {std::pair{GroupKind::torus1, 16}, {GroupKind::torus2, 6}, {GroupKind::su2, 6}})
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto f = random_function(g, L, 2, seed, 2.5);
      const auto r = strong_factorize(f, w, 0.5, 1.0);
      CHECK(r.residual <= 1e-10);
      CHECK(r.min_margin >= -1e-12 * std::max(1.0, r.decay_f));
    }

  auto T = FourierCoefficients::zeros(GroupKind::su2, 3, 1);
  T.at({4, 0}).slices[0](0, 3) = cd(0, 1);
  const auto r = strong_factorize(inverse(T), WeightFunction::gevrey(1.0), 1.0, 3.0);
  CHECK(r.residual <= 1e-12);
  CHECK(r.decay_f_prime <= r.decay_f * (1 + 1e-12));
}

TEST_CASE("strong factorization rejects bad h") {
  const auto f = random_function(GroupKind::torus1, 8, 1, 1);
  const auto w = WeightFunction::gevrey(1.0);
  CHECK_THROWS_AS(strong_factorize(f, w, 1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(strong_factorize(f, w, 2.0, 1.0), ParameterError);
  CHECK_THROWS_AS(strong_factorize(f, w, 0.0, 1.0), ParameterError);
}

TEST_CASE("one g for a bounded family") {
  const auto w = WeightFunction::gevrey(1.0);
  std::vector<GridFunction> fs;
  for (double t : {1.0, 1.5, 2.0}) fs.push_back(builtin_function(parse_builtin("poisson:" + std::to_string(t)), GroupKind::torus1, 16));
  fs.push_back(GridFunction::zeros(fs.front().grid, 1));
  const auto s = bounded_factorize_set(fs, w, 1.0, 2.0);
  CHECK(s.members.size() == 4);
  CHECK(s.max_residual <= 1e-12);
  CHECK(std::isfinite(s.sup_shifted_seminorm));
  CHECK(s.min_margin >= -1e-12);
  for (const auto& m : s.members) CHECK(hs_distance(m.g, s.g) == 0.0);
  CHECK(s.members.back().decay_f_prime == 0.0);

  const auto single = bounded_factorize_set({fs[0]}, w, 1.0, 2.0);
  CHECK(hs_distance(single.members[0].f_prime, strong_factorize(fs[0], w, 1.0, 2.0).f_prime) <= 1e-15);

  CHECK_THROWS_AS(bounded_factorize_set({}, w, 1.0, 2.0), ParameterError);
  CHECK_THROWS(bounded_factorize_set({fs[0], builtin_function(parse_builtin("poisson:1"), GroupKind::torus1, 8)}, w, 1.0, 2.0));
}

TEST_CASE("vector factorization") {
  const auto w = WeightFunction::gevrey(1.0);
  const auto triv = parse_rep(GroupKind::su2, "0");
  Eigen::VectorXcd c(1);
  c(0) = 4.0;
  const auto t = factorize_vector(triv, c, w, 1.0, 2.0);
  CHECK(t.residual <= 1e-13);
  CHECK(std::abs(t.v_tilde(0) - 4.0) <= 1e-13);

  const auto r = parse_rep(GroupKind::su2, "0,1");
  Eigen::VectorXcd v(3);
  v << 1.0, cd(0.5, -0.5), cd(0, 2);
  const auto f = factorize_vector(r, v, w, 1.0, 2.0);
  CHECK(f.residual <= 1e-12);
  CHECK(f.orbit_defect <= 1e-12);
  // The spin-1/2 part is scaled up by the multiplier at lambda = 3/4.
  CHECK(std::abs(f.v_tilde(1)) == doctest::Approx(std::abs(v(1)) * std::exp(w(std::sqrt(0.75)) / 2.0)).epsilon(1e-12));

  const auto t1 = parse_rep(GroupKind::torus1, "-3,0,5");
  Eigen::VectorXcd u(3);
  u << 1.0, 2.0, 3.0;
  CHECK(factorize_vector(t1, u, WeightFunction::gevrey(0.5), 0.5, 1.0).residual <= 1e-12);
}

TEST_CASE("Gevrey bumps") {
  const auto grid = shared_quadrature(GroupKind::torus1, 256);
  const auto b = gevrey_bump(2.0, 0.0, 0.5, grid);
  CHECK(std::abs(b.at(0, 0) - std::exp(-1.0)) <= 1e-15);
  for (std::size_t n = 0; n < b.nodes(); ++n) {
    const double d = circle_distance(grid->nodes[n].coords[0]);
    if (d >= 0.5) CHECK(b.at(n, 0) == cd(0.0));
    else CHECK(b.at(n, 0).real() > 0);
  }
  // Coefficients of a Gevrey-s bump decay like exp(-c |k|^{1/s}).
  const double s = gevrey_order_estimate(forward(gevrey_bump(2.0, 0.0, 1.5, grid), 256));
  CHECK(std::abs(s - 0.5) <= 0.15 * 0.5);
  CHECK_THROWS_AS(gevrey_bump(1.0, 0.0, 0.5, grid), QuasianalyticError);
  CHECK_THROWS_AS(gevrey_bump(2.0, 0.0, 0.5, shared_quadrature(GroupKind::su2, 2)), UnsupportedError);
}

TEST_CASE("partition of unity") {
  const auto w = WeightFunction::gevrey(0.5);
  const auto grid = shared_quadrature(GroupKind::torus1, 256);
  CHECK(default_pieces(0.5) == static_cast<int>(std::ceil(2 * kPi / 0.25)) + 1);
  const auto p = build_partition(0.5, default_pieces(0.5), 2.0, w, 1.0, 256, grid);
  CHECK(p.chi.size() == static_cast<std::size_t>(default_pieces(0.5)));
  CHECK(p.chi_sum_defect <= 1e-10);
  CHECK(p.psi_sum_defect <= 1e-8);
  for (std::size_t j = 0; j < p.chi.size(); ++j)
    for (std::size_t n = 0; n < grid->size(); ++n)
      if (circle_distance(grid->nodes[n].coords[0] - p.centers[j]) >= p.halfwidth) CHECK(p.psi[j].at(n, 0) == cd(0.0));

  CHECK_THROWS_AS(build_partition(0.5, 8, 2.0, w, 1.0, 256, grid), CoverageError);
  // W has length 0.5, so 2 pi / 0.5 rounds up to 13 translates.
  CHECK_THROWS_AS(build_partition(0.5, 12, 2.0, w, 1.0, 256, grid), CoverageError);
  CHECK(build_partition(0.5, 13, 2.0, w, 1.0, 256, grid).chi_sum_defect <= 1e-10);
}

TEST_CASE("compactly supported factorization") {
  const auto w = WeightFunction::gevrey(0.5);
  // The band-limited g leaks outside V at low L; 256 keeps it below 1e-6.
  const auto f = builtin_function(parse_builtin("poisson:1"), GroupKind::torus1, 256);
  const auto r = supported_factorize(f, 1.0, w, 0.5, 1.0, 0, 2.0);
  CHECK(r.all_positive);
  CHECK(r.residual <= 1e-7);
  CHECK(r.outside_support_mass <= 1e-6);
  CHECK(r.min_mu_margin >= -1e-8);
  CHECK(r.k == default_pieces(1.0));
  for (std::size_t i = 0; i < r.S.size(); ++i) CHECK(r.S[i] > 0);

  CHECK_THROWS_AS(supported_factorize(f, 0.5, w, 0.5, 1.0, 8, 2.0), CoverageError);
  CHECK_THROWS_AS(supported_factorize(f, 1.0, WeightFunction::gevrey(1.0), 0.5, 1.0, 0, 2.0), QuasianalyticError);
  CHECK_THROWS_AS(supported_factorize(f, 1.0, w, 0.5, 1.0, 0, 1.0), QuasianalyticError);
  CHECK_THROWS_AS(supported_factorize(f, 1.0, w, 1.0, 0.5, 0, 2.0), ParameterError);
  CHECK_THROWS_AS(supported_factorize(random_function(GroupKind::su2, 2, 1, 1), 1.0, w, 0.5, 1.0, 0, 2.0),
                  UnsupportedError);
}

TEST_CASE("supported factorization commutes with translation") {
  // Translating f by a grid step translates f' and leaves g unchanged.
  const auto w = WeightFunction::gevrey(0.5);
  const auto f = random_function(GroupKind::torus1, 32, 1, 7, 2.5);
  const std::size_t N = f.nodes(), shift = 5;
  auto tf = GridFunction::zeros(f.grid, 1);
  for (std::size_t n = 0; n < N; ++n) tf.at(n, 0) = f.at((n + N - shift) % N, 0);
  const auto a = supported_factorize(f, 1.0, w, 0.5, 1.0, 0, 2.0);
  const auto b = supported_factorize(tf, 1.0, w, 0.5, 1.0, 0, 2.0);
  CHECK(sup_distance(a.g, b.g) <= 1e-12);
  const auto fa = inverse(a.f_prime, f.grid), fb = inverse(b.f_prime, f.grid);
  double worst = 0, scale = sup_norm(fa);
  for (std::size_t n = 0; n < N; ++n) worst = std::max(worst, std::abs(fb.at(n, 0) - fa.at((n + N - shift) % N, 0)));
  CHECK(worst <= 1e-9 * std::max(1.0, scale));
}
