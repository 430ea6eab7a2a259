#include <doctest.h>

#include <cmath>
#include <random>

#include "lieharm/error.hpp"
#include "lieharm/group.hpp"
#include "lieharm/wigner.hpp"
#include "support.hpp"

using namespace lieharm;
using testing::kPi;
using testing::max_abs;

TEST_CASE("dual enumeration") {
  const auto t1 = enumerate_dual(GroupKind::torus1, 2);
  REQUIRE(t1.size() == 5);
  for (const auto& xi : t1) {
    CHECK(xi.dim == 1);
    CHECK(xi.casimir == xi.label[0] * xi.label[0]);
  }

  const auto s = enumerate_dual(GroupKind::su2, 1);
  REQUIRE(s.size() == 3);
  const double lam[] = {0.0, 0.75, 2.0};
  for (int i = 0; i < 3; ++i) {
    CHECK(s[i].twice_spin() == i);
    CHECK(s[i].dim == i + 1);
    CHECK(s[i].casimir == doctest::Approx(lam[i]));
  }

  const auto t2 = enumerate_dual(GroupKind::torus2, 1);
  REQUIRE(t2.size() == 9);
  for (const auto& xi : t2) CHECK((xi.casimir == 0 || xi.casimir == 1 || xi.casimir == 2));

  CHECK(dual_label_string(GroupKind::torus1, t1[0]) == "k=-2");
  CHECK(dual_label_string(GroupKind::su2, s[2]) == "2l=2");
  CHECK(dual_bandlimit(GroupKind::su2, make_dual_index(GroupKind::su2, {3, 0})) == 2);
  CHECK(group_dimension(GroupKind::su2) == 3);
  CHECK(parse_group("su2") == GroupKind::su2);
  CHECK_THROWS_AS(parse_group("so3"), ParameterError);
}

TEST_CASE("matrix coefficients at the identity") {
  for (GroupKind g : {GroupKind::torus1, GroupKind::torus2, GroupKind::su2})
    for (const auto& xi : enumerate_dual(g, 3)) {
      const auto M = matrix_coefficients(g, xi, identity_element(g));
      CHECK(max_abs(M - Eigen::MatrixXcd::Identity(xi.dim, xi.dim)) <= 1e-14);
    }
}

TEST_CASE("spin 1/2 is the defining representation") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto x = random_element(GroupKind::su2, rng);
    const auto q = quaternion_from_euler(x);
    // w I - i (x sigma_x + y sigma_y + z sigma_z)
    Eigen::Matrix2cd U;
    U << cd(q.w, -q.z), cd(-q.y, -q.x), cd(q.y, -q.x), cd(q.w, q.z);
    const auto D = matrix_coefficients(GroupKind::su2, make_dual_index(GroupKind::su2, {1, 0}), x);
    CHECK(max_abs(D - U) <= 1e-13);
  }
}

TEST_CASE("Wigner D against exp(-i alpha Jz) exp(-i beta Jy) exp(-i gamma Jz)") {
  std::mt19937_64 rng(6);
  for (int two_l = 0; two_l <= 16; ++two_l)
    for (int i = 0; i < 4; ++i) {
      const auto x = random_element(GroupKind::su2, rng);
      const auto D = matrix_coefficients(GroupKind::su2, make_dual_index(GroupKind::su2, {two_l, 0}), x);
      const auto O = testing::wigner_D_oracle(two_l, x.coords[0], x.coords[1], x.coords[2]);
      CHECK(max_abs(D - O) <= 1e-11);
    }
  // Endpoints of the beta range.
  for (double beta : {0.0, kPi})
    for (int two_l : {1, 4, 7}) {
      const auto D = wigner_small_d(two_l, beta);
      const auto O = testing::wigner_D_oracle(two_l, 0, beta, 0);
      CHECK(max_abs(D.cast<cd>() - O) <= 1e-12);
    }
}

TEST_CASE("small-d stays orthogonal at high spin") {
  for (int two_l : {64, 128, 200}) {
    const auto d = wigner_small_d(two_l, 1.1);
    CHECK((d.transpose() * d - Eigen::MatrixXd::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("batched matrix coefficients match per-block evaluation") {
  std::mt19937_64 rng(8);
  const auto x = random_element(GroupKind::su2, rng);
  const auto all = matrix_coefficients_all(GroupKind::su2, 5, x);
  const auto dual = enumerate_dual(GroupKind::su2, 5);
  REQUIRE(all.size() == dual.size());
  for (std::size_t i = 0; i < dual.size(); ++i)
    CHECK(max_abs(all[i] - matrix_coefficients(GroupKind::su2, dual[i], x)) <= 1e-13);
}

TEST_CASE("homomorphism and unitarity") {
  std::mt19937_64 rng(7);
  for (GroupKind g : {GroupKind::torus1, GroupKind::torus2, GroupKind::su2})
    for (int i = 0; i < 30; ++i) {
      const auto x = random_element(g, rng), y = random_element(g, rng);
      const auto xy = multiply(g, x, y);
      const auto xinv = inverse(g, x);
      for (const auto& xi : enumerate_dual(g, 4)) {
        const auto A = matrix_coefficients(g, xi, x);
        CHECK(max_abs(matrix_coefficients(g, xi, xy) - A * matrix_coefficients(g, xi, y)) <= 1e-10);
        CHECK(max_abs(A * A.adjoint() - Eigen::MatrixXcd::Identity(xi.dim, xi.dim)) <= 1e-12);
        CHECK(max_abs(matrix_coefficients(g, xi, xinv) - A.adjoint()) <= 1e-10);
      }
    }
}

TEST_CASE("composition through the gimbal-degenerate poles") {
  const GroupElement pole{{0.3, 0.0, 1.2}}, south{{0.7, kPi, 2.0}};
  for (const auto& x : {pole, south}) {
    const auto y = multiply(GroupKind::su2, x, inverse(GroupKind::su2, x));
    const auto xi = make_dual_index(GroupKind::su2, {3, 0});
    CHECK(max_abs(matrix_coefficients(GroupKind::su2, xi, y) - Eigen::MatrixXcd::Identity(4, 4)) <= 1e-12);
  }
}

TEST_CASE("invalid coordinates") {
  const auto xi = make_dual_index(GroupKind::su2, {2, 0});
  CHECK_THROWS_AS(matrix_coefficients(GroupKind::su2, xi, GroupElement{{0, 3.5, 0}}), DomainError);
  CHECK_THROWS_AS(matrix_coefficients(GroupKind::su2, xi, GroupElement{{0, -0.1, 0}}), DomainError);
  CHECK_THROWS_AS(validate_element(GroupKind::torus1, GroupElement{{NAN, 0, 0}}), DomainError);
}

TEST_CASE("quadrature normalisation and layout") {
  const auto q = haar_quadrature(GroupKind::torus1, 2);
  REQUIRE(q.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(q.weights[i] == doctest::Approx(1.0 / 6));
    CHECK(q.nodes[i].coords[0] == doctest::Approx(2 * kPi * i / 6));
  }
  for (GroupKind g : {GroupKind::torus1, GroupKind::torus2, GroupKind::su2}) {
    const auto grid = haar_quadrature(g, 3);
    double s = 0;
    for (double w : grid.weights) {
      CHECK(w > 0);
      s += w;
    }
    CHECK(std::abs(s - 1.0) <= 1e-14);
  }
  CHECK(shared_quadrature(GroupKind::su2, 3) == shared_quadrature(GroupKind::su2, 3));
}

TEST_CASE("Schur orthogonality within the band limit") {
  for (auto [g, L] : {std::pair{GroupKind::torus1, 6}, {GroupKind::torus2, 3}, {GroupKind::su2, 3}}) {
    const auto grid = haar_quadrature(g, L);
    const auto dual = enumerate_dual(g, L);
    // G[a][b] = sum_nodes w xi_a(x)_{ij} conj(xi_b(x)_{i'j'}), flattened.
    std::vector<int> offset{0};
    for (const auto& xi : dual) offset.push_back(offset.back() + xi.dim * xi.dim);
    const int n = offset.back();
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXcd row(n);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto mats = matrix_coefficients_all(g, L, grid.nodes[k]);
      for (std::size_t a = 0; a < dual.size(); ++a)
        for (int e = 0; e < dual[a].dim * dual[a].dim; ++e) row(offset[a] + e) = mats[a].data()[e];
      gram.noalias() += grid.weights[k] * row * row.adjoint();
    }
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t a = 0; a < dual.size(); ++a)
      for (int e = 0; e < dual[a].dim * dual[a].dim; ++e) expect(offset[a] + e, offset[a] + e) = 1.0 / dual[a].dim;
    CHECK(max_abs(gram - expect) <= 1e-10);
  }
}

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(12, x, w);
  for (int p = 0; p <= 23; ++p) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], p);
    const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("Weyl summability partial sums") {
  auto brute = [](double alpha, int L) {
    double s = 0;
    for (int two_l = 0; two_l <= 2 * L; ++two_l) {
      const double l = two_l / 2.0;
      s += (2 * l + 1) * (2 * l + 1) * std::pow(1 + l * (l + 1), -alpha);
    }
    return s;
  };
  const auto a3 = weyl_summability(GroupKind::su2, 3.0, 64);
  REQUIRE(a3.size() == 64);
  for (const auto& r : a3) CHECK(r.partial_sum == doctest::Approx(brute(3.0, r.bandlimit)).epsilon(1e-12));
  for (int L = 8; 2 * L <= 32; L *= 2) {
    const double inc1 = a3[2 * L - 1].partial_sum - a3[L - 1].partial_sum;
    const double inc2 = a3[4 * L - 1].partial_sum - a3[2 * L - 1].partial_sum;
    CHECK(inc1 / inc2 >= 1.5);
  }

  const auto a15 = weyl_summability(GroupKind::su2, 1.5, 64);
  for (int L = 1; 2 * L <= 64; ++L) CHECK(a15[2 * L - 1].partial_sum / a15[L - 1].partial_sum >= 1.1);

  double t1 = 0;
  for (int k = -256; k <= 256; ++k) t1 += 1.0 / (1 + k * k);
  const auto c = weyl_summability(GroupKind::torus1, 1.0, 256);
  CHECK(c.back().partial_sum == doctest::Approx(t1).epsilon(1e-12));
  // pi coth(pi) is the full sum.
  CHECK(std::abs(c.back().partial_sum - kPi / std::tanh(kPi)) <= 2.0 / 256);
}
