#include "lieharm/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "lieharm/error.hpp"
#include "lieharm/wigner.hpp"

namespace lieharm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0) r += period;
  if (r >= period) r -= period;
  return r;
}

int torus_dim(GroupKind g) { return g == GroupKind::torus1 ? 1 : 2; }

}  // namespace

GroupKind parse_group(const std::string& name) {
  if (name == "t1" || name == "torus1" || name == "T1") return GroupKind::torus1;
  if (name == "t2" || name == "torus2" || name == "T2") return GroupKind::torus2;
  if (name == "su2" || name == "SU2") return GroupKind::su2;
  throw ParameterError("unknown group '" + name + "' (expected t1, t2 or su2)");
}

std::string group_name(GroupKind g) {
  switch (g) {
    case GroupKind::torus1: return "t1";
    case GroupKind::torus2: return "t2";
    case GroupKind::su2: return "su2";
  }
  return "?";
}

int group_dimension(GroupKind g) {
  switch (g) {
    case GroupKind::torus1: return 1;
    case GroupKind::torus2: return 2;
    case GroupKind::su2: return 3;
  }
  return 0;
}

std::string dual_label_string(GroupKind g, const DualIndex& xi) {
  std::ostringstream os;
  switch (g) {
    case GroupKind::torus1: os << "k=" << xi.label[0]; break;
    case GroupKind::torus2: os << "k=(" << xi.label[0] << "," << xi.label[1] << ")"; break;
    case GroupKind::su2: os << "2l=" << xi.label[0]; break;
  }
  return os.str();
}

DualIndex make_dual_index(GroupKind g, std::array<int, 2> label) {
  DualIndex xi;
  xi.label = label;
  if (g == GroupKind::su2) {
    if (label[0] < 0) throw DomainError("negative twice-spin label");
    xi.label[1] = 0;
    xi.dim = label[0] + 1;
    const double l = 0.5 * label[0];
    xi.casimir = l * (l + 1.0);
  } else {
    if (g == GroupKind::torus1) xi.label[1] = 0;
    xi.dim = 1;
    xi.casimir = double(xi.label[0]) * xi.label[0] + double(xi.label[1]) * xi.label[1];
  }
  return xi;
}

int dual_bandlimit(GroupKind g, const DualIndex& xi) {
  if (g == GroupKind::su2) return (xi.label[0] + 1) / 2;
  return std::max(std::abs(xi.label[0]), std::abs(xi.label[1]));
}

std::vector<DualIndex> enumerate_dual(GroupKind g, int bandlimit) {
  if (bandlimit < 0) throw DomainError("negative band limit");
  std::vector<DualIndex> out;
  switch (g) {
    case GroupKind::torus1:
      for (int k = -bandlimit; k <= bandlimit; ++k) out.push_back(make_dual_index(g, {k, 0}));
      break;
    case GroupKind::torus2:
      for (int k1 = -bandlimit; k1 <= bandlimit; ++k1)
        for (int k2 = -bandlimit; k2 <= bandlimit; ++k2) out.push_back(make_dual_index(g, {k1, k2}));
      break;
    case GroupKind::su2:
      for (int tl = 0; tl <= 2 * bandlimit; ++tl) out.push_back(make_dual_index(g, {tl, 0}));
      break;
  }
  return out;
}

void validate_element(GroupKind g, const GroupElement& x) {
  const int n = g == GroupKind::su2 ? 3 : torus_dim(g);
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(x.coords[static_cast<std::size_t>(i)])) throw DomainError("non-finite group coordinate");
  }
  if (g == GroupKind::su2) {
    const double beta = x.coords[1];
    if (beta < -1e-12 || beta > kPi + 1e-12) throw DomainError("beta outside [0, pi]");
  }
}

Eigen::MatrixXcd matrix_coefficients(GroupKind g, const DualIndex& xi, const GroupElement& x) {
  validate_element(g, x);
  if (g != GroupKind::su2) {
    double phase = xi.label[0] * x.coords[0];
    if (g == GroupKind::torus2) phase += xi.label[1] * x.coords[1];
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = std::polar(1.0, phase);
    return m;
  }
  const int tl = xi.label[0];
  const Eigen::MatrixXd d = wigner_small_d(tl, x.coords[1]);
  Eigen::MatrixXcd out(tl + 1, tl + 1);
  for (int i = 0; i <= tl; ++i) {
    const double mp = 0.5 * tl - i;
    for (int j = 0; j <= tl; ++j) {
      const double m = 0.5 * tl - j;
      out(i, j) = d(i, j) * std::polar(1.0, -mp * x.coords[0] - m * x.coords[2]);
    }
  }
  return out;
}

std::vector<Eigen::MatrixXcd> matrix_coefficients_all(GroupKind g, int bandlimit, const GroupElement& x) {
  const auto dual = enumerate_dual(g, bandlimit);
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(dual.size());
  if (g != GroupKind::su2) {
    for (const auto& xi : dual) out.push_back(matrix_coefficients(g, xi, x));
    return out;
  }
  validate_element(g, x);
  const auto d = wigner_small_d_all(2 * bandlimit, x.coords[1]);
  for (const auto& xi : dual) {
    const int tl = xi.label[0];
    Eigen::MatrixXcd m(tl + 1, tl + 1);
    for (int i = 0; i <= tl; ++i)
      for (int j = 0; j <= tl; ++j)
        m(i, j) = d[static_cast<std::size_t>(tl)](i, j) *
                  std::polar(1.0, -(0.5 * tl - i) * x.coords[0] - (0.5 * tl - j) * x.coords[2]);
    out.push_back(std::move(m));
  }
  return out;
}

GroupElement identity_element(GroupKind) { return GroupElement{}; }

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quaternion quaternion_from_euler(const GroupElement& x) {
  const double alpha = x.coords[0], beta = x.coords[1], gamma = x.coords[2];
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  const double p = 0.5 * (alpha + gamma), q = 0.5 * (alpha - gamma);
  return {c * std::cos(p), -s * std::sin(q), s * std::cos(q), c * std::sin(p)};
}

GroupElement euler_from_quaternion(const Quaternion& qin) {
  const double nrm = std::sqrt(qin.w * qin.w + qin.x * qin.x + qin.y * qin.y + qin.z * qin.z);
  const double a = qin.w / nrm, b = qin.x / nrm, c = qin.y / nrm, d = qin.z / nrm;
  const double beta = 2.0 * std::atan2(std::hypot(b, c), std::hypot(a, d));
  const double p = std::atan2(d, a);
  const double q = std::atan2(-b, c);
  double alpha = p + q, gamma = p - q;
  // Shifting alpha by 2pi alone flips the sign of the element; pair it with gamma.
  const double shift = std::floor(alpha / kTwoPi) * kTwoPi;
  alpha -= shift;
  gamma -= shift;
  if (alpha >= kTwoPi) {
    alpha -= kTwoPi;
    gamma -= kTwoPi;
  }
  GroupElement out;
  out.coords = {alpha, std::clamp(beta, 0.0, kPi), wrap(gamma, 2.0 * kTwoPi)};
  return out;
}

GroupElement multiply(GroupKind g, const GroupElement& x, const GroupElement& y) {
  if (g == GroupKind::su2) return euler_from_quaternion(quaternion_from_euler(x) * quaternion_from_euler(y));
  GroupElement out;
  for (int i = 0; i < torus_dim(g); ++i) {
    const auto k = static_cast<std::size_t>(i);
    out.coords[k] = wrap(x.coords[k] + y.coords[k], kTwoPi);
  }
  return out;
}

GroupElement inverse(GroupKind g, const GroupElement& x) {
  if (g == GroupKind::su2) {
    Quaternion q = quaternion_from_euler(x);
    q.x = -q.x;
    q.y = -q.y;
    q.z = -q.z;
    return euler_from_quaternion(q);
  }
  GroupElement out;
  for (int i = 0; i < torus_dim(g); ++i) {
    const auto k = static_cast<std::size_t>(i);
    out.coords[k] = wrap(-x.coords[k], kTwoPi);
  }
  return out;
}

GroupElement exp_basis(GroupKind g, int axis, double t) {
  if (g == GroupKind::su2) {
    if (axis < 0 || axis > 2) throw DomainError("su2 Lie algebra axis must be 0, 1 or 2");
    Quaternion q{std::cos(0.5 * t), 0, 0, 0};
    const double s = std::sin(0.5 * t);
    if (axis == 0) q.x = s;
    if (axis == 1) q.y = s;
    if (axis == 2) q.z = s;
    return euler_from_quaternion(q);
  }
  if (axis < 0 || axis >= torus_dim(g)) throw DomainError("torus Lie algebra axis out of range");
  GroupElement out;
  out.coords[static_cast<std::size_t>(axis)] = wrap(t, kTwoPi);
  return out;
}

GroupElement random_element(GroupKind g, std::mt19937_64& rng) {
  if (g == GroupKind::su2) {
    std::normal_distribution<double> n01;
    Quaternion q{n01(rng), n01(rng), n01(rng), n01(rng)};
    return euler_from_quaternion(q);
  }
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  GroupElement out;
  for (int i = 0; i < torus_dim(g); ++i) out.coords[static_cast<std::size_t>(i)] = u(rng);
  return out;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

QuadratureGrid haar_quadrature(GroupKind g, int bandlimit) {
  if (bandlimit < 0) throw DomainError("negative band limit");
  QuadratureGrid q;
  q.group = g;
  q.bandlimit = bandlimit;
  if (g != GroupKind::su2) {
    const int n = 2 * bandlimit + 2;
    q.points_per_axis = n;
    const double h = kTwoPi / n;
    if (g == GroupKind::torus1) {
      for (int i = 0; i < n; ++i) {
        GroupElement x;
        x.coords[0] = i * h;
        q.nodes.push_back(x);
        q.weights.push_back(1.0 / n);
      }
    } else {
      const double w = 1.0 / (double(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          GroupElement x;
          x.coords[0] = i * h;
          x.coords[1] = j * h;
          q.nodes.push_back(x);
          q.weights.push_back(w);
        }
    }
    return q;
  }
  const int b = 2 * bandlimit + 2;
  q.n_alpha = 2 * b;
  q.n_beta = b;
  q.n_gamma = 2 * b;
  std::vector<double> gl_x, gl_w;
  gauss_legendre(b, gl_x, gl_w);
  for (int i = 0; i < b; ++i) {
    q.beta_nodes.push_back(std::acos(gl_x[static_cast<std::size_t>(i)]));
    q.beta_weights.push_back(0.5 * gl_w[static_cast<std::size_t>(i)]);
  }
  const double wa = 1.0 / q.n_alpha, wg = 1.0 / q.n_gamma;
  q.nodes.reserve(static_cast<std::size_t>(q.n_alpha) * b * q.n_gamma);
  for (int a = 0; a < q.n_alpha; ++a)
    for (int bi = 0; bi < b; ++bi)
      for (int c = 0; c < q.n_gamma; ++c) {
        GroupElement x;
        x.coords = {kTwoPi * a / q.n_alpha, q.beta_nodes[static_cast<std::size_t>(bi)],
                    2.0 * kTwoPi * c / q.n_gamma};
        q.nodes.push_back(x);
        q.weights.push_back(wa * wg * q.beta_weights[static_cast<std::size_t>(bi)]);
      }
  return q;
}

std::shared_ptr<const QuadratureGrid> shared_quadrature(GroupKind g, int bandlimit) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const QuadratureGrid>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(g), bandlimit);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto grid = std::make_shared<const QuadratureGrid>(haar_quadrature(g, bandlimit));
  cache.emplace(key, grid);
  return grid;
}

std::vector<WeylRow> weyl_summability(GroupKind g, double alpha, int bandlimit) {
  if (bandlimit < 1) throw DomainError("band limit must be >= 1");
  std::vector<WeylRow> rows;
  double s = 0.0;
  int covered = -1;  // largest band limit already summed
  for (int lp = 1; lp <= bandlimit; ++lp) {
    for (const auto& xi : enumerate_dual(g, lp)) {
      if (dual_bandlimit(g, xi) <= covered) continue;
      s += double(xi.dim) * xi.dim * std::pow(1.0 + xi.casimir, -alpha);
    }
    covered = lp;
    rows.push_back({lp, s});
  }
  return rows;
}

}  // namespace lieharm
