#include "lieharm/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "lieharm/error.hpp"

namespace lieharm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// exp(u) overflows just above 709.
constexpr double kMaxU = 700.0;

double phi(const WeightFunction& w, double u) { return w(std::exp(u)); }

}  // namespace

WeightFunction WeightFunction::gevrey(double s) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw ParameterError("gevrey weight needs 0 < s <= 1, got " + std::to_string(s));
  }
  WeightFunction w;
  w.kind_ = Kind::gevrey;
  w.s_ = s;
  w.beta0_ = s < 1.0;
  w.non_quasianalytic_ = s < 1.0;
  return w;
}

WeightFunction WeightFunction::log1p() {
  WeightFunction w;
  w.kind_ = Kind::log1p;
  w.beta0_ = true;
  w.non_quasianalytic_ = true;
  return w;
}

WeightFunction WeightFunction::tabulated(std::vector<Knot> knots, bool satisfies_beta0,
                                         bool non_quasianalytic) {
  if (knots.size() < 2) throw ParameterError("tabulated weight needs at least two knots");
  if (knots.front().t > 0.0) {
    if (knots.front().omega != 0.0) {
      throw ParameterError("tabulated weight must vanish on [0, 1]");
    }
    knots.insert(knots.begin(), Knot{0.0, 0.0});
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const auto& k = knots[i];
    if (!std::isfinite(k.t) || !std::isfinite(k.omega) || k.t < 0.0 || k.omega < 0.0) {
      throw ParameterError("tabulated weight knots must be finite and nonnegative");
    }
    if (k.t <= 1.0 && k.omega != 0.0) {
      throw ParameterError("tabulated weight must vanish on [0, 1]");
    }
    if (i > 0 && (k.t <= knots[i - 1].t || k.omega < knots[i - 1].omega)) {
      throw ParameterError("tabulated weight knots must be strictly increasing in t "
                           "and nondecreasing in omega");
    }
  }
  WeightFunction w;
  w.kind_ = Kind::tabulated;
  w.knots_ = std::move(knots);
  w.beta0_ = satisfies_beta0;
  w.non_quasianalytic_ = non_quasianalytic;
  return w;
}

double WeightFunction::operator()(double t) const {
  if (!(t >= 0.0)) throw DomainError("weight evaluated at negative t");
  switch (kind_) {
    case Kind::gevrey:
      return t <= 1.0 ? 0.0 : std::max(0.0, std::pow(t, s_) - 1.0);
    case Kind::log1p:
      return std::log1p(t);
    case Kind::tabulated: {
      const auto& last = knots_.back();
      if (t >= last.t) {
        const auto& prev = knots_[knots_.size() - 2];
        const double slope = (last.omega - prev.omega) / (last.t - prev.t);
        return last.omega + slope * (t - last.t);
      }
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                 [](double v, const Knot& k) { return v < k.t; });
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double a = (t - lo.t) / (hi.t - lo.t);
      return lo.omega + a * (hi.omega - lo.omega);
    }
  }
  return 0.0;
}

std::string WeightFunction::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::gevrey:
      os << "gevrey:s=" << s_;
      break;
    case Kind::log1p:
      os << "log1p";
      break;
    case Kind::tabulated:
      os << "table:" << knots_.size() << " knots";
      break;
  }
  return os.str();
}

WeightFunction parse_weight_spec(const std::string& spec) {
  if (spec == "log1p") return WeightFunction::log1p();
  if (spec.rfind("gevrey:", 0) == 0) {
    std::string rest = spec.substr(7);
    if (rest.rfind("s=", 0) == 0) rest = rest.substr(2);
    std::size_t used = 0;
    double s = 0;
    try {
      s = std::stod(rest, &used);
    } catch (const std::exception&) {
      throw ParameterError("bad gevrey weight spec '" + spec + "'");
    }
    if (used != rest.size()) throw ParameterError("bad gevrey weight spec '" + spec + "'");
    return WeightFunction::gevrey(s);
  }
  if (spec.rfind("table:", 0) == 0) {
    const std::string path = spec.substr(6);
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open weight table '" + path + "'");
    std::vector<WeightFunction::Knot> knots;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      double t = 0, om = 0;
      if (!(ls >> t >> om)) {
        if (first) {  // header
          first = false;
          continue;
        }
        throw ParameterError("malformed weight table line '" + line + "'");
      }
      first = false;
      knots.push_back({t, om});
    }
    return WeightFunction::tabulated(std::move(knots));
  }
  throw ParameterError("unknown weight spec '" + spec + "'");
}

double gevrey_young_conjugate_closed_form(double s, double h, double t) {
  const double tau = h * t;
  if (tau <= s) return 0.0;
  return 1.0 / h + (t / s) * std::log(tau / (s * std::exp(1.0)));
}

double young_conjugate_numeric(const WeightFunction& w, double h, double t,
                               double resolution) {
  if (!(h > 0.0)) throw DomainError("young_conjugate needs h > 0");
  if (!(t >= 0.0)) throw DomainError("young_conjugate needs t >= 0");
  if (!(resolution > 0.0)) throw DomainError("young_conjugate needs a positive resolution");
  const double tau = h * t;
  if (tau == 0.0) return 0.0;

  auto objective = [&](double u) { return tau * u - phi(w, u); };

  // Uniform grid on [0, U]; U doubles until the objective decreases at U.
  std::vector<double> values;
  double upper = 1.0;
  for (;;) {
    const auto n = static_cast<std::size_t>(std::ceil(upper / resolution));
    for (std::size_t i = values.size(); i <= n; ++i) {
      values.push_back(objective(static_cast<double>(i) * resolution));
    }
    const double last = values[n];
    const double prev = values[n - 1];
    if (last < prev) break;
    if (upper >= kMaxU) {
      if (last - prev > 1e-12 * (1.0 + std::abs(last))) return kInf;
      break;
    }
    upper = std::min(2.0 * upper, kMaxU);
  }

  const auto best = static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
  double best_value = values[best];

  // Golden-section refinement on the bracketing cell pair.
  double lo = best == 0 ? 0.0 : static_cast<double>(best - 1) * resolution;
  double hi = std::min(static_cast<double>(best + 1) * resolution,
                       static_cast<double>(values.size() - 1) * resolution);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = objective(x1);
    }
  }
  best_value = std::max({best_value, f1, f2});
  return std::max(0.0, best_value) / h;
}

double young_conjugate(const WeightFunction& w, double h, double t, double resolution) {
  if (!(h > 0.0)) throw DomainError("young_conjugate needs h > 0");
  if (!(t >= 0.0)) throw DomainError("young_conjugate needs t >= 0");
  if (w.kind() == WeightFunction::Kind::gevrey) {
    return gevrey_young_conjugate_closed_form(w.gevrey_order(), h, t);
  }
  return young_conjugate_numeric(w, h, t, resolution);
}

YoungConjugate::YoungConjugate(WeightFunction w, double h, double resolution)
    : w_(std::move(w)), h_(h), resolution_(resolution) {
  if (!(h > 0.0)) throw DomainError("YoungConjugate needs h > 0");
}

AxiomReport check_weight_axioms(const WeightFunction& w, double t_max, int samples) {
  if (!(t_max >= 10.0)) throw DomainError("check_weight_axioms needs t_max >= 10");
  if (samples < 8) throw DomainError("check_weight_axioms needs at least 8 samples");

  AxiomReport r;
  // Geometric samples on [2, t_max]: the ratios below are asymptotic statements
  // and omega vanishes on [0, 1].
  std::vector<double> ts(static_cast<std::size_t>(samples));
  const double log_lo = std::log(2.0), log_hi = std::log(t_max);
  for (int i = 0; i < samples; ++i) {
    ts[static_cast<std::size_t>(i)] =
        std::exp(log_lo + (log_hi - log_lo) * i / (samples - 1));
  }
  for (double t : ts) {
    const double om = w(t);
    if (om > 0.0) r.alpha_constant = std::max(r.alpha_constant, w(2.0 * t) / om);
    r.beta_constant = std::max(r.beta_constant, om / t);
  }

  // Tail: uniform samples on [t_max/2, t_max].
  std::vector<double> tail(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    tail[static_cast<std::size_t>(i)] = 0.5 * t_max * (1.0 + static_cast<double>(i) / (samples - 1));
  }
  r.beta0_tail_decreasing = true;
  r.gamma_tail_increasing = true;
  r.gamma_tail_min_ratio = std::numeric_limits<double>::infinity();
  double prev_beta = 0, prev_gamma = 0;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    const double t = tail[i];
    const double beta = w(t) / t;
    const double gamma = w(t) / std::log(t);
    if (i > 0) {
      if (beta >= prev_beta) r.beta0_tail_decreasing = false;
      if (gamma <= prev_gamma) r.gamma_tail_increasing = false;
    }
    r.gamma_tail_min_ratio = std::min(r.gamma_tail_min_ratio, gamma);
    prev_beta = beta;
    prev_gamma = gamma;
  }
  r.beta0_tail_ratio = prev_beta;
  r.gamma_tail_last_ratio = prev_gamma;

  // (delta): second differences of u -> omega(e^u) on [0, log t_max].
  const double du = log_hi / (samples - 1);
  for (int i = 1; i + 1 < samples; ++i) {
    const double u = du * i;
    const double second = phi(w, u - du) - 2.0 * phi(w, u) + phi(w, u + du);
    r.delta_convexity_defect = std::max(r.delta_convexity_defect, -second);
  }
  return r;
}

YoungWitness young_inequality_witness(const WeightFunction& w, double h,
                                      const std::vector<double>& t_grid, double max_C) {
  if (!(h > 0.0)) throw DomainError("young_inequality_witness needs h > 0");
  if (t_grid.empty()) throw DomainError("young_inequality_witness needs a nonempty t grid");
  for (double t : t_grid) {
    if (!(t > 0.0)) throw DomainError("young_inequality_witness needs t > 0");
  }
  const double log_t_max = std::log(*std::max_element(t_grid.begin(), t_grid.end()));
  const double log_max_C = std::log(max_C);

  std::vector<double> lhs(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) lhs[i] = w(t_grid[i]) / h;

  double best_defect = kInf;
  double h_prime = h;
  for (int sweep = 1; sweep <= 60; ++sweep) {
    h_prime *= 0.9;
    // rhs(t) = sup_k k log t - (1/h') phi*(k h'); k = 0 contributes 0.
    std::vector<double> rhs(t_grid.size(), 0.0);
    for (int k = 1; k <= 100000; ++k) {
      const double y = young_conjugate(w, h_prime, static_cast<double>(k));
      if (!std::isfinite(y)) break;
      for (std::size_t i = 0; i < t_grid.size(); ++i) {
        rhs[i] = std::max(rhs[i], k * std::log(t_grid[i]) - y);
      }
      // y/k is nondecreasing, so once it exceeds log t_max all later terms shrink.
      if (y / k > log_t_max) break;
    }
    double needed = -kInf;
    for (std::size_t i = 0; i < t_grid.size(); ++i) needed = std::max(needed, lhs[i] - rhs[i]);
    const double log_C = std::max(0.0, needed);
    if (log_C <= log_max_C) {
      return YoungWitness{h_prime, std::exp(log_C), needed - log_C};
    }
    best_defect = std::min(best_defect, needed - log_max_C);
  }
  throw SearchFailure("no (h', C) witness found for the Young inequality", best_defect);
}

}  // namespace lieharm
