#include "lieharm/fourier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "lieharm/error.hpp"
#include "lieharm/wigner.hpp"

namespace lieharm {

namespace {

std::atomic<bool> g_conv_sign_fault{false};

using Tables = std::vector<std::vector<cd>>;

// Precomputed exponentials and small-d tables for one (group, grid, L).
struct Engine {
  GroupKind group;
  int L = 0;
  // Torus: phase[k + L][n] = e^{i k x_n}.
  Tables phase;
  // SU(2): ealpha[tmp + 2L][a] = e^{-i (tmp/2) alpha_a}, egamma likewise, and
  // d tables per beta node for 2l = 0..2L.
  Tables ealpha, egamma;
  std::vector<std::vector<Eigen::MatrixXd>> dtab;
};

std::shared_ptr<const Engine> build_engine(const QuadratureGrid& grid, int L) {
  auto e = std::make_shared<Engine>();
  e->group = grid.group;
  e->L = L;
  if (grid.group != GroupKind::su2) {
    const int n = grid.points_per_axis;
    e->phase.assign(static_cast<std::size_t>(2 * L + 1), std::vector<cd>(static_cast<std::size_t>(n)));
    for (int k = -L; k <= L; ++k)
      for (int i = 0; i < n; ++i)
        e->phase[static_cast<std::size_t>(k + L)][static_cast<std::size_t>(i)] =
            std::polar(1.0, 2.0 * std::numbers::pi * ((long long)k * i % n) / n);
    return e;
  }
  const int nt = 4 * L + 1;
  e->ealpha.assign(static_cast<std::size_t>(nt), std::vector<cd>(static_cast<std::size_t>(grid.n_alpha)));
  e->egamma.assign(static_cast<std::size_t>(nt), std::vector<cd>(static_cast<std::size_t>(grid.n_gamma)));
  for (int t = 0; t < nt; ++t) {
    const double half = 0.5 * (t - 2 * L);
    for (int a = 0; a < grid.n_alpha; ++a)
      e->ealpha[static_cast<std::size_t>(t)][static_cast<std::size_t>(a)] =
          std::polar(1.0, -half * 2.0 * std::numbers::pi * a / grid.n_alpha);
    for (int c = 0; c < grid.n_gamma; ++c)
      e->egamma[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)] =
          std::polar(1.0, -half * 4.0 * std::numbers::pi * c / grid.n_gamma);
  }
  for (double beta : grid.beta_nodes) e->dtab.push_back(wigner_small_d_all(2 * L, beta));
  return e;
}

std::shared_ptr<const Engine> engine_for(const std::shared_ptr<const QuadratureGrid>& grid, int L) {
  static std::mutex mu;
  static std::map<std::tuple<const QuadratureGrid*, int>,
                  std::pair<std::weak_ptr<const QuadratureGrid>, std::shared_ptr<const Engine>>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(grid.get(), L);
  auto it = cache.find(key);
  if (it != cache.end()) {
    if (auto live = it->second.first.lock(); live && live == grid) return it->second.second;
    cache.erase(it);
  }
  auto e = build_engine(*grid, L);
  cache.emplace(key, std::make_pair(std::weak_ptr<const QuadratureGrid>(grid), e));
  return e;
}

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

void forward_torus(const GridFunction& f, const Engine& e, FourierCoefficients& out) {
  const auto& grid = *f.grid;
  const int n = grid.points_per_axis;
  const int L = e.L;
  const int m = f.value_dim;
  if (grid.group == GroupKind::torus1) {
    for (int k = -L; k <= L; ++k) {
      const auto& ph = e.phase[sz(k + L)];
      auto& blk = out.blocks[sz(k + L)];
      for (int c = 0; c < m; ++c) {
        cd s = 0;
        for (int i = 0; i < n; ++i) s += f.at(sz(i), c) * ph[sz(i)];
        blk.slices[sz(c)](0, 0) = s / double(n);
      }
    }
    return;
  }
  const int nk = 2 * L + 1;
  std::vector<cd> a(sz(n * nk));
  for (int c = 0; c < m; ++c) {
    for (int i = 0; i < n; ++i)
      for (int k2 = 0; k2 < nk; ++k2) {
        cd s = 0;
        const auto& ph = e.phase[sz(k2)];
        for (int j = 0; j < n; ++j) s += f.at(sz(i * n + j), c) * ph[sz(j)];
        a[sz(i * nk + k2)] = s;
      }
    for (int k1 = 0; k1 < nk; ++k1) {
      const auto& ph = e.phase[sz(k1)];
      for (int k2 = 0; k2 < nk; ++k2) {
        cd s = 0;
        for (int i = 0; i < n; ++i) s += a[sz(i * nk + k2)] * ph[sz(i)];
        out.blocks[sz(k1 * nk + k2)].slices[sz(c)](0, 0) = s / (double(n) * n);
      }
    }
  }
}

void inverse_torus(const FourierCoefficients& T, const Engine& e, GridFunction& out) {
  const auto& grid = *out.grid;
  const int n = grid.points_per_axis;
  const int L = e.L;
  const int m = T.value_dim;
  if (grid.group == GroupKind::torus1) {
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < m; ++c) {
        cd s = 0;
        for (int k = 0; k <= 2 * L; ++k) s += T.blocks[sz(k)].slices[sz(c)](0, 0) * std::conj(e.phase[sz(k)][sz(i)]);
        out.at(sz(i), c) = s;
      }
    return;
  }
  const int nk = 2 * L + 1;
  std::vector<cd> a(sz(n * nk));
  for (int c = 0; c < m; ++c) {
    // a[i, k2] = sum_k1 T(k1, k2) e^{-i k1 x_i}
    for (int i = 0; i < n; ++i)
      for (int k2 = 0; k2 < nk; ++k2) {
        cd s = 0;
        for (int k1 = 0; k1 < nk; ++k1)
          s += T.blocks[sz(k1 * nk + k2)].slices[sz(c)](0, 0) * std::conj(e.phase[sz(k1)][sz(i)]);
        a[sz(i * nk + k2)] = s;
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cd s = 0;
        for (int k2 = 0; k2 < nk; ++k2) s += a[sz(i * nk + k2)] * std::conj(e.phase[sz(k2)][sz(j)]);
        out.at(sz(i * n + j), c) = s;
      }
  }
}

// SU(2): separable sums over gamma, alpha, beta.
void forward_su2(const GridFunction& f, const Engine& e, FourierCoefficients& out) {
  const auto& grid = *f.grid;
  const int na = grid.n_alpha, nb = grid.n_beta, ng = grid.n_gamma;
  const int L = e.L;
  const int nt = 4 * L + 1;
  const int m = f.value_dim;
  std::vector<cd> G(sz(na * nb * nt)), H(sz(nt * nb * nt));
  for (int c = 0; c < m; ++c) {
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < nb; ++b) {
        const std::size_t base = sz((a * nb + b) * ng);
        for (int t = 0; t < nt; ++t) {
          const auto& eg = e.egamma[sz(t)];
          cd s = 0;
          for (int k = 0; k < ng; ++k) s += f.values[(base + sz(k)) * sz(m) + sz(c)] * eg[sz(k)];
          G[sz((a * nb + b) * nt + t)] = s / double(ng);
        }
      }
    for (int tp = 0; tp < nt; ++tp) {
      const auto& ea = e.ealpha[sz(tp)];
      for (int b = 0; b < nb; ++b)
        for (int t = (tp % 2); t < nt; t += 2) {
          cd s = 0;
          for (int a = 0; a < na; ++a) s += G[sz((a * nb + b) * nt + t)] * ea[sz(a)];
          H[sz((tp * nb + b) * nt + t)] = s / double(na);
        }
    }
    for (auto& blk : out.blocks) {
      const int tl = blk.xi.label[0];
      auto& M = blk.slices[sz(c)];
      for (int i = 0; i <= tl; ++i) {
        const int tp = tl - 2 * i + 2 * L;
        for (int j = 0; j <= tl; ++j) {
          const int t = tl - 2 * j + 2 * L;
          cd s = 0;
          for (int b = 0; b < nb; ++b)
            s += grid.beta_weights[sz(b)] * e.dtab[sz(b)][sz(tl)](i, j) * H[sz((tp * nb + b) * nt + t)];
          M(i, j) = s;
        }
      }
    }
  }
}

void inverse_su2(const FourierCoefficients& T, const Engine& e, GridFunction& out) {
  const auto& grid = *out.grid;
  const int na = grid.n_alpha, nb = grid.n_beta, ng = grid.n_gamma;
  const int L = e.L;
  const int nt = 4 * L + 1;
  const int m = T.value_dim;
  std::vector<cd> H(sz(nt * nb * nt)), G(sz(na * nb * nt));
  for (int c = 0; c < m; ++c) {
    std::fill(H.begin(), H.end(), cd(0));
    for (const auto& blk : T.blocks) {
      const int tl = blk.xi.label[0];
      const auto& M = blk.slices[sz(c)];
      for (int i = 0; i <= tl; ++i) {
        const int tp = tl - 2 * i + 2 * L;
        for (int j = 0; j <= tl; ++j) {
          const int t = tl - 2 * j + 2 * L;
          const cd v = double(tl + 1) * M(i, j);
          if (v == cd(0)) continue;
          for (int b = 0; b < nb; ++b) H[sz((tp * nb + b) * nt + t)] += e.dtab[sz(b)][sz(tl)](i, j) * v;
        }
      }
    }
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < nb; ++b)
        for (int t = 0; t < nt; ++t) {
          cd s = 0;
          for (int tp = (t % 2); tp < nt; tp += 2) s += H[sz((tp * nb + b) * nt + t)] * std::conj(e.ealpha[sz(tp)][sz(a)]);
          G[sz((a * nb + b) * nt + t)] = s;
        }
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < nb; ++b) {
        const std::size_t base = sz((a * nb + b) * ng);
        for (int k = 0; k < ng; ++k) {
          cd s = 0;
          for (int t = 0; t < nt; ++t) s += G[sz((a * nb + b) * nt + t)] * std::conj(e.egamma[sz(t)][sz(k)]);
          out.values[(base + sz(k)) * sz(m) + sz(c)] = s;
        }
      }
  }
}

void require_same_shape(const FourierCoefficients& a, const FourierCoefficients& b) {
  if (a.group != b.group || a.bandlimit != b.bandlimit || a.value_dim != b.value_dim)
    throw ParameterError("coefficient families differ in group, band limit or value dimension");
}

}  // namespace

Eigen::VectorXcd GridFunction::value(std::size_t node) const {
  Eigen::VectorXcd v(value_dim);
  for (int c = 0; c < value_dim; ++c) v(c) = at(node, c);
  return v;
}

GridFunction GridFunction::zeros(std::shared_ptr<const QuadratureGrid> grid, int value_dim) {
  if (value_dim < 1) throw ParameterError("value dimension must be >= 1");
  GridFunction f;
  f.values.assign(grid->size() * sz(value_dim), cd(0));
  f.grid = std::move(grid);
  f.value_dim = value_dim;
  return f;
}

GridFunction GridFunction::sample(std::shared_ptr<const QuadratureGrid> grid, int value_dim,
                                  const std::function<Eigen::VectorXcd(const GroupElement&)>& fn) {
  GridFunction f = zeros(std::move(grid), value_dim);
  for (std::size_t i = 0; i < f.nodes(); ++i) {
    const Eigen::VectorXcd v = fn(f.grid->nodes[i]);
    if (v.size() != value_dim) throw ParameterError("sampled value has the wrong dimension");
    for (int c = 0; c < value_dim; ++c) f.at(i, c) = v(c);
  }
  return f;
}

double CoefficientBlock::hs_norm() const {
  double best = 0;
  for (const auto& s : slices) best = std::max(best, s.norm());
  return best;
}

FourierCoefficients FourierCoefficients::zeros(GroupKind g, int bandlimit, int value_dim) {
  if (value_dim < 1) throw ParameterError("value dimension must be >= 1");
  FourierCoefficients T;
  T.group = g;
  T.bandlimit = bandlimit;
  T.value_dim = value_dim;
  for (const auto& xi : enumerate_dual(g, bandlimit)) {
    CoefficientBlock b;
    b.xi = xi;
    b.slices.assign(sz(value_dim), Eigen::MatrixXcd::Zero(xi.dim, xi.dim));
    T.blocks.push_back(std::move(b));
  }
  return T;
}

int FourierCoefficients::index_of(std::array<int, 2> label) const {
  const int L = bandlimit;
  switch (group) {
    case GroupKind::torus1:
      if (label[1] != 0 || std::abs(label[0]) > L) return -1;
      return label[0] + L;
    case GroupKind::torus2:
      if (std::abs(label[0]) > L || std::abs(label[1]) > L) return -1;
      return (label[0] + L) * (2 * L + 1) + label[1] + L;
    case GroupKind::su2:
      if (label[1] != 0 || label[0] < 0 || label[0] > 2 * L) return -1;
      return label[0];
  }
  return -1;
}

const CoefficientBlock& FourierCoefficients::at(std::array<int, 2> label) const {
  const int i = index_of(label);
  if (i < 0) throw ParameterError("dual label outside the band limit");
  return blocks[sz(i)];
}

CoefficientBlock& FourierCoefficients::at(std::array<int, 2> label) {
  const int i = index_of(label);
  if (i < 0) throw ParameterError("dual label outside the band limit");
  return blocks[sz(i)];
}

std::vector<double> hs_norm_table(const FourierCoefficients& T) {
  std::vector<double> out;
  out.reserve(T.blocks.size());
  for (const auto& b : T.blocks) out.push_back(b.hs_norm());
  return out;
}

FourierCoefficients forward(const GridFunction& f, int bandlimit) {
  if (bandlimit > f.grid->bandlimit)
    throw PreconditionError("grid of band limit " + std::to_string(f.grid->bandlimit) +
                            " is not exact for band limit " + std::to_string(bandlimit));
  auto T = FourierCoefficients::zeros(f.group(), bandlimit, f.value_dim);
  auto e = engine_for(f.grid, bandlimit);
  if (f.group() == GroupKind::su2)
    forward_su2(f, *e, T);
  else
    forward_torus(f, *e, T);
  return T;
}

FourierCoefficients forward(const GridFunction& f) { return forward(f, f.grid->bandlimit); }

GridFunction inverse(const FourierCoefficients& T, std::shared_ptr<const QuadratureGrid> grid) {
  if (grid->group != T.group) throw ParameterError("grid and coefficients belong to different groups");
  GridFunction out = GridFunction::zeros(grid, T.value_dim);
  auto e = engine_for(grid, T.bandlimit);
  if (T.group == GroupKind::su2)
    inverse_su2(T, *e, out);
  else
    inverse_torus(T, *e, out);
  return out;
}

GridFunction inverse(const FourierCoefficients& T) { return inverse(T, shared_quadrature(T.group, T.bandlimit)); }

Eigen::VectorXcd evaluate(const FourierCoefficients& T, const GroupElement& x) {
  const auto xs = matrix_coefficients_all(T.group, T.bandlimit, x);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(T.value_dim);
  for (std::size_t b = 0; b < T.blocks.size(); ++b) {
    const auto& blk = T.blocks[b];
    for (int c = 0; c < T.value_dim; ++c)
      v(c) += double(blk.xi.dim) * (xs[b].conjugate().cwiseProduct(blk.slices[sz(c)])).sum();
  }
  return v;
}

FourierCoefficients add(const FourierCoefficients& a, const FourierCoefficients& b, cd scale_b) {
  require_same_shape(a, b);
  FourierCoefficients out = a;
  for (std::size_t i = 0; i < out.blocks.size(); ++i)
    for (std::size_t c = 0; c < out.blocks[i].slices.size(); ++c) out.blocks[i].slices[c] += scale_b * b.blocks[i].slices[c];
  return out;
}

FourierCoefficients scale(const FourierCoefficients& a, cd c) {
  FourierCoefficients out = a;
  for (auto& blk : out.blocks)
    for (auto& s : blk.slices) s *= c;
  return out;
}

double hs_distance(const FourierCoefficients& a, const FourierCoefficients& b) {
  require_same_shape(a, b);
  double best = 0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i)
    for (std::size_t c = 0; c < a.blocks[i].slices.size(); ++c)
      best = std::max(best, (a.blocks[i].slices[c] - b.blocks[i].slices[c]).norm());
  return best;
}

FourierCoefficients rebandlimit(const FourierCoefficients& T, int bandlimit) {
  auto out = FourierCoefficients::zeros(T.group, bandlimit, T.value_dim);
  for (auto& blk : out.blocks) {
    const int i = T.index_of(blk.xi.label);
    if (i >= 0) blk.slices = T.blocks[sz(i)].slices;
  }
  return out;
}

double sup_distance(const GridFunction& f, const GridFunction& g) {
  if (f.values.size() != g.values.size()) throw ParameterError("grid functions have different shapes");
  double best = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) best = std::max(best, std::abs(f.values[i] - g.values[i]));
  return best;
}

double sup_norm(const GridFunction& f) {
  double best = 0;
  for (const auto& v : f.values) best = std::max(best, std::abs(v));
  return best;
}

double l2_norm_squared(const GridFunction& f) {
  double s = 0;
  for (std::size_t i = 0; i < f.nodes(); ++i) {
    double row = 0;
    for (int c = 0; c < f.value_dim; ++c) row += std::norm(f.at(i, c));
    s += f.grid->weights[i] * row;
  }
  return s;
}

namespace {
double coefficient_mass(const FourierCoefficients& T) {
  double s = 0;
  for (const auto& blk : T.blocks)
    for (const auto& sl : blk.slices) s += blk.xi.dim * sl.squaredNorm();
  return s;
}
}  // namespace

double parseval_defect(const GridFunction& f) {
  const double a = l2_norm_squared(f);
  const double b = coefficient_mass(forward(f));
  return std::abs(a - b) / std::max(a, 1e-300);
}

double projection_tail(const GridFunction& f, int bandlimit) {
  return std::max(0.0, l2_norm_squared(f) - coefficient_mass(forward(f, bandlimit)));
}

FourierCoefficients compose(const FourierCoefficients& chi, const FourierCoefficients& f) {
  if (chi.value_dim != 1) throw UnsupportedError("convolution needs a scalar left factor");
  if (chi.group != f.group) throw ParameterError("convolution factors belong to different groups");
  const int L = std::min(chi.bandlimit, f.bandlimit);
  auto out = FourierCoefficients::zeros(f.group, L, f.value_dim);
  const double sign = g_conv_sign_fault.load() ? -1.0 : 1.0;
  for (auto& blk : out.blocks) {
    const auto& A = chi.at(blk.xi.label).slices[0];
    const auto& B = f.at(blk.xi.label);
    for (int c = 0; c < f.value_dim; ++c) blk.slices[sz(c)] = sign * (A * B.slices[sz(c)]);
  }
  return out;
}

GridFunction convolve(const GridFunction& chi, const GridFunction& f) {
  if (chi.value_dim != 1) throw UnsupportedError("convolution needs a scalar left factor");
  const int L = std::min(chi.grid->bandlimit, f.grid->bandlimit);
  return inverse(compose(forward(chi, L), forward(f, L)), f.grid);
}

GridFunction convolve_by_quadrature(const GridFunction& chi, int value_dim,
                                    const std::function<Eigen::VectorXcd(const GroupElement&)>& f) {
  if (chi.value_dim != 1) throw UnsupportedError("convolution needs a scalar left factor");
  const auto& grid = *chi.grid;
  const GroupKind g = grid.group;
  std::vector<GroupElement> yinv;
  yinv.reserve(grid.size());
  for (const auto& y : grid.nodes) yinv.push_back(inverse(g, y));
  GridFunction out = GridFunction::zeros(chi.grid, value_dim);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(value_dim);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const cd cy = chi.values[j];
      if (cy == cd(0)) continue;
      acc += (grid.weights[j] * cy) * f(multiply(g, yinv[j], grid.nodes[i]));
    }
    for (int c = 0; c < value_dim; ++c) out.at(i, c) = acc(c);
  }
  return out;
}

GridFunction convolve_by_quadrature(const GridFunction& chi, const GridFunction& f) {
  const GroupKind g = chi.group();
  if (g != GroupKind::su2 && chi.grid->points_per_axis == f.grid->points_per_axis) {
    // The torus grid is a subgroup: y^{-1} x stays on the grid.
    const int n = chi.grid->points_per_axis;
    auto node_of = [&](const GroupElement& z) {
      auto idx = [&](double a) {
        return static_cast<int>(std::lround(a / (2.0 * std::numbers::pi) * n)) % n;
      };
      return g == GroupKind::torus1 ? sz(idx(z.coords[0])) : sz(idx(z.coords[0]) * n + idx(z.coords[1]));
    };
    return convolve_by_quadrature(chi, f.value_dim, [&](const GroupElement& z) { return f.value(node_of(z)); });
  }
  const auto T = forward(f);
  return convolve_by_quadrature(chi, f.value_dim, [&](const GroupElement& z) { return evaluate(T, z); });
}

double conv_theorem_defect(const GridFunction& chi, const GridFunction& f) {
  const int L = std::min(chi.grid->bandlimit, f.grid->bandlimit);
  const auto lhs = forward(convolve_by_quadrature(chi, f), L);
  const auto rhs = compose(forward(chi, L), forward(f, L));
  return hs_distance(lhs, rhs);
}

GridFunction involution(const GridFunction& psi) {
  if (psi.value_dim != 1) throw UnsupportedError("involution is defined for scalar functions");
  GridFunction out = GridFunction::zeros(psi.grid, 1);
  const auto& grid = *psi.grid;
  if (grid.group == GroupKind::torus1) {
    const int n = grid.points_per_axis;
    for (int i = 0; i < n; ++i) out.values[sz(i)] = std::conj(psi.values[sz((n - i) % n)]);
    return out;
  }
  if (grid.group == GroupKind::torus2) {
    const int n = grid.points_per_axis;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.values[sz(i * n + j)] = std::conj(psi.values[sz(((n - i) % n) * n + (n - j) % n)]);
    return out;
  }
  const auto T = forward(psi);
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.values[i] = std::conj(evaluate(T, inverse(grid.group, grid.nodes[i]))(0));
  return out;
}

void set_convolution_sign_fault(bool enabled) { g_conv_sign_fault.store(enabled); }
bool convolution_sign_fault() { return g_conv_sign_fault.load(); }

}  // namespace lieharm
