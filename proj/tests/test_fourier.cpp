#include <doctest.h>

#include <cmath>
#include <random>

#include "lieharm/builtins.hpp"
#include "lieharm/error.hpp"
#include "lieharm/fourier.hpp"
#include "support.hpp"

using namespace lieharm;
using testing::kPi;
using testing::max_abs;

namespace {

GridFunction constant(GroupKind g, int L, cd c) {
  return GridFunction::sample(shared_quadrature(g, L), 1, [c](const GroupElement&) {
    Eigen::VectorXcd v(1);
    v(0) = c;
    return v;
  });
}

// Naive transform: sum_nodes w f(x) (x) xi(x), one matrix_coefficients call per node and block.
FourierCoefficients naive_forward(const GridFunction& f, int L) {
  auto T = FourierCoefficients::zeros(f.group(), L, f.value_dim);
  for (std::size_t n = 0; n < f.nodes(); ++n)
    for (auto& blk : T.blocks) {
      const auto M = matrix_coefficients(f.group(), blk.xi, f.grid->nodes[n]);
      for (int c = 0; c < f.value_dim; ++c) blk.slices[static_cast<std::size_t>(c)] += f.grid->weights[n] * f.at(n, c) * M;
    }
  return T;
}

}  // namespace

TEST_CASE("transform of the constant function") {
  for (GroupKind g : {GroupKind::torus1, GroupKind::torus2, GroupKind::su2}) {
    const auto T = forward(constant(g, 4, 1.0));
    for (const auto& blk : T.blocks) {
      const double expect = blk.xi.casimir == 0 ? 1.0 : 0.0;
      CHECK(std::abs(blk.slices[0](0, 0) - expect) <= 1e-12);
      CHECK(blk.hs_norm() <= 1e-12 + expect);
    }
  }
}

TEST_CASE("torus character convention") {
  const auto grid = shared_quadrature(GroupKind::torus1, 8);
  auto chr = [&](int k) {
    return GridFunction::sample(grid, 1, [k](const GroupElement& x) {
      Eigen::VectorXcd v(1);
      v(0) = std::exp(cd(0, k * x.coords[0]));
      return v;
    });
  };
  // F f(k) = sum f(x) e^{ikx}: e^{-3ix} sits at k = 3, e^{3ix} at k = -3.
  const auto Tm = forward(chr(-3));
  const auto Tp = forward(chr(3));
  for (const auto& blk : Tm.blocks) CHECK(std::abs(blk.slices[0](0, 0) - (blk.xi.label[0] == 3 ? 1.0 : 0.0)) <= 1e-12);
  for (const auto& blk : Tp.blocks) CHECK(std::abs(blk.slices[0](0, 0) - (blk.xi.label[0] == -3 ? 1.0 : 0.0)) <= 1e-12);
}

TEST_CASE("su2 transform of conj(D^1_00) is 1/3 at the centre of the 2l=2 block") {
  const auto grid = shared_quadrature(GroupKind::su2, 2);
  const auto xi1 = make_dual_index(GroupKind::su2, {2, 0});
  const auto f = GridFunction::sample(grid, 1, [&](const GroupElement& x) {
    Eigen::VectorXcd v(1);
    v(0) = std::conj(matrix_coefficients(GroupKind::su2, xi1, x)(1, 1));
    return v;
  });
  const auto T = forward(f);
  for (const auto& blk : T.blocks) {
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(blk.xi.dim, blk.xi.dim);
    if (blk.xi.twice_spin() == 2) expect(1, 1) = 1.0 / 3.0;
    CHECK(max_abs(blk.slices[0] - expect) <= 1e-10);
  }
}

TEST_CASE("separable transform agrees with the naive sum") {
  for (auto [g, L] : {std::pair{GroupKind::torus1, 5}, {GroupKind::torus2, 3}, {GroupKind::su2, 3}}) {
    const auto f = random_function(g, L, 2, 17);
    CHECK(hs_distance(forward(f), naive_forward(f, L)) <= 1e-12);
    // Lower band limit on the same grid.
    CHECK(hs_distance(forward(f, L - 1), naive_forward(f, L - 1)) <= 1e-12);
  }
}

TEST_CASE("inverse of a trivial-only family is constant") {
  for (GroupKind g : {GroupKind::torus2, GroupKind::su2}) {
    auto T = FourierCoefficients::zeros(g, 3, 1);
    T.blocks[static_cast<std::size_t>(T.index_of({0, 0}))].slices[0](0, 0) = cd(2.0, -1.0);
    const auto f = inverse(T);
    for (std::size_t n = 0; n < f.nodes(); ++n) CHECK(std::abs(f.at(n, 0) - cd(2.0, -1.0)) <= 1e-13);
  }
}

TEST_CASE("Poisson partial sum matches direct summation") {
  const int L = 64;
  const auto T = poisson_coefficients(GroupKind::torus1, L, 1.0);
  const auto f = inverse(T);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  auto direct = [&](double x) {
    cd s = 0;
    for (int k = -L; k <= L; ++k) s += std::exp(-std::abs(k)) * std::exp(cd(0, -k * x));
    return s;
  };
  for (std::size_t n = 0; n < f.nodes(); ++n) CHECK(std::abs(f.at(n, 0) - direct(f.grid->nodes[n].coords[0])) <= 1e-12);
  for (int i = 0; i < 20; ++i) {
    const double x = u(rng);
    CHECK(std::abs(evaluate(T, GroupElement{{x, 0, 0}})(0) - direct(x)) <= 1e-12);
  }
}

TEST_CASE("roundtrip and Parseval on random band-limited functions") {
  for (auto [g, L] : {std::pair{GroupKind::torus1, 32}, {GroupKind::torus2, 16}, {GroupKind::su2, 16}})
    for (int m : {1, 3}) {
      const auto f = random_function(g, L, m, 100 + L + m);
      CHECK(sup_distance(inverse(forward(f), f.grid), f) <= 1e-9);
      CHECK(parseval_defect(f) <= 1e-9);
    }
  const auto f = random_function(GroupKind::su2, 8, 1, 5);
  CHECK(parseval_defect(f) <= 1e-9);
  CHECK(parseval_defect(GridFunction::zeros(shared_quadrature(GroupKind::su2, 2), 1)) == 0.0);
}

TEST_CASE("single matrix coefficient has squared norm 1/d") {
  const auto grid = shared_quadrature(GroupKind::su2, 3);
  for (int two_l = 0; two_l <= 6; ++two_l) {
    const auto xi = make_dual_index(GroupKind::su2, {two_l, 0});
    const auto f = GridFunction::sample(grid, 1, [&](const GroupElement& x) {
      Eigen::VectorXcd v(1);
      v(0) = matrix_coefficients(GroupKind::su2, xi, x)(0, xi.dim - 1);
      return v;
    });
    CHECK(l2_norm_squared(f) == doctest::Approx(1.0 / xi.dim).epsilon(1e-10));
    CHECK(parseval_defect(f) <= 1e-10);
  }
}

TEST_CASE("linearity of forward and inverse") {
  for (auto [g, L] : {std::pair{GroupKind::torus2, 6}, {GroupKind::su2, 5}}) {
    const auto f = random_function(g, L, 2, 1), h = random_function(g, L, 2, 2);
    const cd a(0.5, 2.0), b(-1.5, 0.25);
    auto comb = f;
    for (std::size_t i = 0; i < comb.values.size(); ++i) comb.values[i] = a * f.values[i] + b * h.values[i];
    const auto lhs = forward(comb);
    const auto rhs = add(scale(forward(f), a), forward(h), b);
    CHECK(hs_distance(lhs, rhs) <= 1e-12);
    CHECK(sup_distance(inverse(rhs, f.grid), comb) <= 1e-12 * sup_norm(comb));
  }
}

TEST_CASE("band-limit preconditions and projections") {
  const auto f = random_function(GroupKind::torus1, 4, 1, 9);
  CHECK_THROWS_AS(forward(f, 5), PreconditionError);
  const auto T = forward(f);
  CHECK(rebandlimit(rebandlimit(T, 8), 4).blocks.size() == T.blocks.size());
  CHECK(hs_distance(rebandlimit(rebandlimit(T, 8), 4), T) == 0.0);
  CHECK(projection_tail(f, 4) <= 1e-12);
  // Dropping |k| = 4 loses exactly its two coefficients' mass.
  const double lost = std::norm(T.at({4, 0}).slices[0](0, 0)) + std::norm(T.at({-4, 0}).slices[0](0, 0));
  CHECK(projection_tail(f, 3) == doctest::Approx(lost).epsilon(1e-10));
}

TEST_CASE("convolution with the truncated reproducing kernel is the identity") {
  for (auto [g, L] : {std::pair{GroupKind::torus1, 6}, {GroupKind::su2, 3}}) {
    auto K = FourierCoefficients::zeros(g, L, 1);
    for (auto& blk : K.blocks) blk.slices[0] = Eigen::MatrixXcd::Identity(blk.xi.dim, blk.xi.dim);
    const auto chi = inverse(K);
    const auto f = random_function(g, L, 2, 33);
    CHECK(sup_distance(convolve(chi, f), f) <= 1e-9);
  }
}

TEST_CASE("convolution with the constant function averages") {
  const auto f = random_function(GroupKind::su2, 3, 1, 4);
  const auto one = constant(GroupKind::su2, 3, 1.0);
  cd mean = 0;
  for (std::size_t n = 0; n < f.nodes(); ++n) mean += f.grid->weights[n] * f.at(n, 0);
  const auto c = convolve(one, f);
  for (std::size_t n = 0; n < c.nodes(); ++n) CHECK(std::abs(c.at(n, 0) - mean) <= 1e-12);
}

TEST_CASE("characters convolve by a direct double integral") {
  const int L = 4;
  const auto grid = shared_quadrature(GroupKind::torus1, L);
  auto chr = [&](int k) {
    return GridFunction::sample(grid, 1, [k](const GroupElement& x) {
      Eigen::VectorXcd v(1);
      v(0) = std::exp(cd(0, k * x.coords[0]));
      return v;
    });
  };
  for (int k = -L; k <= L; ++k)
    for (int kp = -L; kp <= L; ++kp) {
      const auto c = convolve(chr(k), chr(kp));
      // (e^{ik.} * e^{ik'.})(x) = int e^{iky} e^{ik'(x-y)} dy, summed on a fine grid.
      for (std::size_t n = 0; n < grid->size(); n += 3) {
        const double x = grid->nodes[n].coords[0];
        cd s = 0;
        const int M = 64;
        for (int j = 0; j < M; ++j) {
          const double y = 2 * kPi * j / M;
          s += std::exp(cd(0, k * y)) * std::exp(cd(0, kp * (x - y))) / double(M);
        }
        CHECK(std::abs(c.at(n, 0) - s) <= 1e-12);
      }
    }
}

TEST_CASE("convolution theorem against nested quadrature") {
  const auto chi = random_function(GroupKind::torus1, 4, 1, 1);
  const auto f = random_function(GroupKind::torus1, 4, 2, 2);
  CHECK(conv_theorem_defect(chi, f) <= 1e-9);
  CHECK(conv_theorem_defect(GridFunction::zeros(chi.grid, 1), f) == 0.0);

  const auto chi2 = random_function(GroupKind::su2, 2, 1, 3);
  const auto f2 = random_function(GroupKind::su2, 2, 1, 4);
  CHECK(conv_theorem_defect(chi2, f2) <= 1e-8);
  CHECK_THROWS_AS(convolve(f, chi), UnsupportedError);
}

TEST_CASE("nested quadrature with a closed-form integrand") {
  // Nested quadrature with the integrand evaluated in closed form at y^{-1} x
  // vs the coefficient route.
  const auto chi = random_function(GroupKind::su2, 2, 1, 8);
  const auto xi = make_dual_index(GroupKind::su2, {3, 0});
  auto fn = [&](const GroupElement& x) {
    Eigen::VectorXcd v(1);
    v(0) = std::conj(matrix_coefficients(GroupKind::su2, xi, x)(2, 1));
    return v;
  };
  const auto direct = convolve_by_quadrature(chi, 1, fn);
  const auto f = GridFunction::sample(chi.grid, 1, fn);
  CHECK(sup_distance(direct, convolve(chi, f)) <= 1e-10);
}

TEST_CASE("convolution associativity through coefficients") {
  for (auto [g, L] : {std::pair{GroupKind::torus2, 4}, {GroupKind::su2, 3}}) {
    const auto c1 = random_function(g, L, 1, 5), c2 = random_function(g, L, 1, 6);
    const auto f = random_function(g, L, 2, 7);
    const auto lhs = forward(convolve(convolve(c1, c2), f));
    const auto rhs = compose(forward(c1), compose(forward(c2), forward(f)));
    CHECK(hs_distance(lhs, rhs) <= 1e-9);
  }
}

TEST_CASE("involution") {
  // Real even function on the circle.
  const auto grid = shared_quadrature(GroupKind::torus1, 8);
  const auto even = GridFunction::sample(grid, 1, [](const GroupElement& x) {
    Eigen::VectorXcd v(1);
    v(0) = std::cos(x.coords[0]) + 0.3 * std::cos(3 * x.coords[0]);
    return v;
  });
  CHECK(sup_distance(involution(even), even) <= 1e-14);

  for (auto [g, L] : {std::pair{GroupKind::torus1, 8}, {GroupKind::torus2, 4}, {GroupKind::su2, 3}}) {
    const auto psi = random_function(g, L, 1, 21);
    const auto star = involution(psi);
    const auto A = forward(psi), B = forward(star);
    double d = 0;
    for (std::size_t i = 0; i < A.blocks.size(); ++i)
      d = std::max(d, (B.blocks[i].slices[0] - A.blocks[i].slices[0].adjoint()).norm());
    CHECK(d <= 1e-10);
    CHECK(sup_distance(involution(star), psi) <= 1e-12);
  }
}

TEST_CASE("sign fault hook negates composition") {
  const auto chi = random_function(GroupKind::torus1, 4, 1, 1);
  const auto f = random_function(GroupKind::torus1, 4, 1, 2);
  set_convolution_sign_fault(true);
  const double bad = conv_theorem_defect(chi, f);
  set_convolution_sign_fault(false);
  CHECK(bad > 1e-3);
  CHECK(conv_theorem_defect(chi, f) <= 1e-9);
}
