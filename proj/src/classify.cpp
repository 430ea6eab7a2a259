#include "lieharm/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "lieharm/error.hpp"

namespace lieharm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct LineFit {
  double slope = 0, intercept = 0, rms = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

std::size_t distinct_count(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return static_cast<std::size_t>(std::unique(v.begin(), v.end(), [](double a, double b) {
                                    return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
                                  }) - v.begin());
}

}  // namespace

double log_decay_seminorm(const FourierCoefficients& T, const WeightFunction& w, double h) {
  if (!(h > 0)) throw DomainError("h must be positive");
  double best = kNegInf;
  for (const auto& blk : T.blocks) {
    const double hs = blk.hs_norm();
    if (hs <= 0) continue;
    best = std::max(best, std::log(hs) + w(std::sqrt(blk.xi.casimir)) / h);
  }
  return best;
}

double decay_seminorm(const FourierCoefficients& T, const WeightFunction& w, double h) {
  if (!(h > 0)) throw DomainError("h must be positive");
  // Direct product keeps the exact scaling behaviour in the common case.
  double best = 0;
  for (const auto& blk : T.blocks) {
    const double hs = blk.hs_norm();
    if (hs <= 0) continue;
    best = std::max(best, hs * std::exp(w(std::sqrt(blk.xi.casimir)) / h));
  }
  return best;
}

std::string DecayReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "sqrt_lambda,log_hsnorm,fitted\n";
  for (const auto& p : points) os << p.sqrt_lambda << "," << p.log_hsnorm << "," << p.fitted << "\n";
  return os.str();
}

DecayReport estimate_critical_h(const FourierCoefficients& T, const WeightFunction& w,
                                const std::vector<double>& h_grid) {
  DecayReport rep;
  rep.weight = w;
  std::vector<double> xs, ys, lambdas;
  for (const auto& blk : T.blocks) {
    const double hs = blk.hs_norm();
    if (hs <= kHsZero) continue;
    const double sl = std::sqrt(blk.xi.casimir);
    const double om = w(sl);
    if (om <= 0) continue;  // no information about the rate
    xs.push_back(om);
    ys.push_back(std::log(hs));
    lambdas.push_back(blk.xi.casimir);
    rep.points.push_back({sl, om, std::log(hs), 0.0});
  }
  if (distinct_count(lambdas) < 2)
    throw InsufficientDataError("need nonzero coefficients at two or more distinct eigenvalues with omega > 0");

  const LineFit fit = fit_line(xs, ys);
  rep.slope = fit.slope;
  rep.intercept = fit.intercept;
  rep.residual = fit.rms;
  rep.h_star = fit.slope < -1e-12 ? -1.0 / fit.slope : std::numeric_limits<double>::infinity();
  for (auto& p : rep.points) p.fitted = fit.intercept + fit.slope * p.omega;

  // Compare the decay rate on the lower and upper halves (sorted by omega).
  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  const std::size_t half = order.size() / 2;
  std::vector<double> lx, ly, ux, uy;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < half ? lx : ux).push_back(xs[order[i]]);
    (i < half ? ly : uy).push_back(ys[order[i]]);
  }
  if (distinct_count(lx) >= 2 && distinct_count(ux) >= 2) {
    rep.lower_slope = fit_line(lx, ly).slope;
    rep.upper_slope = fit_line(ux, uy).slope;
    rep.super_weight_decay = rep.lower_slope < 0 && rep.upper_slope / rep.lower_slope > 1.5;
  }

  std::vector<double> hs = h_grid;
  if (hs.empty())
    for (int k = -6; k <= 6; ++k) hs.push_back(std::pow(2.0, 0.5 * k));
  for (double h : hs) rep.sweep.push_back({h, log_decay_seminorm(T, w, h)});
  return rep;
}

WeightFit fit_weight_details(const FourierCoefficients& T) {
  struct Pt {
    double lambda, log_hs;
  };
  std::vector<Pt> pts;
  double lambda_max = 0;
  for (const auto& blk : T.blocks) {
    lambda_max = std::max(lambda_max, blk.xi.casimir);
    const double hs = blk.hs_norm();
    if (hs > kHsZero) pts.push_back({blk.xi.casimir, std::log(hs)});
  }
  if (pts.empty()) throw PreconditionError("all coefficients vanish");

  WeightFit fit;
  const int n_cap = static_cast<int>(std::floor(std::sqrt(lambda_max)));
  int n = 0;
  for (;; ++n) {
    double best = kNegInf, arg = 0;
    for (const auto& p : pts) {
      const double v = p.log_hs + n * std::log1p(p.lambda);
      if (v > best) {
        best = v;
        arg = p.lambda;
      }
    }
    if (n > 0 && arg >= lambda_max) break;  // sup sits on the truncation edge
    fit.log_C.push_back(best);
    if (n >= n_cap) {
      ++n;
      break;
    }
  }
  fit.n_max = n - 1;
  if (fit.n_max < 1)
    throw PreconditionError("coefficients do not decay: sup_xi ||T_xi|| (1+lambda) is attained at the band limit");

  auto g_raw = [&](double t) {
    double g = kNegInf;
    const int top = std::min(fit.n_max, static_cast<int>(std::floor(t)));
    for (int k = 0; k <= top; ++k)
      g = std::max(g, k * std::log1p(t) - fit.log_C[static_cast<std::size_t>(k)]);
    return g;
  };

  std::vector<double> ts;
  for (const auto& blk : T.blocks) ts.push_back(std::sqrt(blk.xi.casimir));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  std::vector<WeightFunction::Knot> knots{{0.0, 0.0}, {1.0, 0.0}};
  for (double t : ts) {
    if (t <= 1.0 + 1e-12) continue;
    knots.push_back({t, std::max({0.0, g_raw(t), knots.back().omega})});
  }
  if (knots.size() == 2) knots.push_back({2.0, 0.0});
  fit.weight = WeightFunction::tabulated(knots);
  fit.scale = std::max(1.0, std::exp(fit.log_C[0]));
  return fit;
}

WeightFunction fit_weight_from_decay(const FourierCoefficients& T) { return fit_weight_details(T).weight; }

GevreyOrderFit gevrey_order_fit(const FourierCoefficients& T) {
  std::map<double, double> by_sl;  // sqrt(lambda) -> largest HS norm
  double top = 0;
  for (const auto& blk : T.blocks) {
    const double hs = blk.hs_norm();
    top = std::max(top, hs);
    auto& slot = by_sl[std::sqrt(blk.xi.casimir)];
    slot = std::max(slot, hs);
  }
  if (top <= kHsZero) throw InsufficientDataError("all coefficients vanish");

  // Decreasing envelope from the tail: oscillating laws (zeros of bump
  // transforms) would otherwise dominate the fit.
  std::vector<std::pair<double, double>> env(by_sl.begin(), by_sl.end());
  for (std::size_t i = env.size(); i-- > 1;) env[i - 1].second = std::max(env[i - 1].second, env[i].second);

  std::vector<double> xs, ys;
  for (const auto& [sl, v] : env) {
    if (sl <= 0 || v <= kHsZero || v < 1e-14 * top) continue;
    const double r = -std::log(v / top);
    if (r <= 0) continue;
    xs.push_back(std::log(sl));
    ys.push_back(std::log(r));
  }
  if (distinct_count(xs) < 2) throw InsufficientDataError("too few decaying coefficients for an order fit");
  // Low frequencies carry pre-asymptotic corrections; with enough points fit
  // the upper half in log sqrt(lambda) only.
  if (xs.size() >= 8) {
    const std::size_t half = xs.size() / 2;
    xs.erase(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(half));
    ys.erase(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(half));
  }
  const LineFit f = fit_line(xs, ys);
  if (f.slope <= 0) throw PreconditionError("coefficients are not decreasing; no Gevrey order");
  GevreyOrderFit out;
  out.s = f.slope;
  out.intercept = f.intercept;
  out.residual = f.rms;
  out.points = static_cast<int>(xs.size());
  out.outside_weight_range = out.s > 1.05;
  return out;
}

double gevrey_order_estimate(const FourierCoefficients& T) { return gevrey_order_fit(T).s; }

}  // namespace lieharm
