#include "lieharm/builtins.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "lieharm/error.hpp"
#include "lieharm/factorize.hpp"

namespace lieharm {

namespace {

FourierCoefficients scalar_law(GroupKind g, int bandlimit, const std::function<double(double)>& law) {
  auto T = FourierCoefficients::zeros(g, bandlimit, 1);
  for (auto& blk : T.blocks)
    blk.slices[0] = Eigen::MatrixXcd::Identity(blk.xi.dim, blk.xi.dim) * law(blk.xi.casimir);
  return T;
}

double parse_number(const std::string& tok, const std::string& spec) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParameterError("bad number '" + tok + "' in builtin '" + spec + "'");
  }
}

}  // namespace

std::string BuiltinSpec::str() const {
  std::string out = name;
  char buf[32];
  for (double p : params) {
    const auto r = std::to_chars(buf, buf + sizeof buf, p);  // shortest round-trip form
    out += ':';
    out.append(buf, r.ptr);
  }
  return out;
}

BuiltinSpec parse_builtin(const std::string& spec) {
  BuiltinSpec b;
  std::stringstream ss(spec);
  std::string tok;
  std::getline(ss, b.name, ':');
  while (std::getline(ss, tok, ':')) b.params.push_back(parse_number(tok, spec));

  std::size_t arity = 0;
  if (b.name == "poisson" || b.name == "heat")
    arity = 1;
  else if (b.name == "bump")
    arity = 2;
  else
    throw ParameterError("unknown builtin '" + b.name + "' (expected poisson:t, heat:t or bump:s:delta)");
  if (b.params.size() != arity) throw ParameterError("builtin '" + spec + "' has the wrong number of parameters");
  for (double p : b.params)
    if (!(p > 0) || !std::isfinite(p)) throw ParameterError("builtin parameters must be positive: " + spec);
  if (b.name == "bump" && b.params[0] <= 1) throw QuasianalyticError("bump order must exceed 1: " + spec);
  return b;
}

FourierCoefficients poisson_coefficients(GroupKind g, int bandlimit, double t) {
  return scalar_law(g, bandlimit, [t](double lambda) { return std::exp(-t * std::sqrt(lambda)); });
}

FourierCoefficients heat_coefficients(GroupKind g, int bandlimit, double t) {
  return scalar_law(g, bandlimit, [t](double lambda) { return std::exp(-t * lambda); });
}

GridFunction builtin_function(const BuiltinSpec& b, GroupKind g, int bandlimit) {
  if (b.name == "bump") {
    if (g != GroupKind::torus1) throw UnsupportedError("bump builtin is only available on t1");
    return gevrey_bump(b.params[0], 0.0, b.params[1], shared_quadrature(g, bandlimit));
  }
  return inverse(builtin_coefficients(b, g, bandlimit), shared_quadrature(g, bandlimit));
}

FourierCoefficients builtin_coefficients(const BuiltinSpec& b, GroupKind g, int bandlimit) {
  if (b.name == "poisson") return poisson_coefficients(g, bandlimit, b.params[0]);
  if (b.name == "heat") return heat_coefficients(g, bandlimit, b.params[0]);
  return forward(builtin_function(b, g, bandlimit));
}

FourierCoefficients random_coefficients(GroupKind g, int bandlimit, int value_dim, std::uint64_t seed,
                                        double decay) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  auto T = FourierCoefficients::zeros(g, bandlimit, value_dim);
  for (auto& blk : T.blocks) {
    const double s = std::exp(-decay * std::sqrt(blk.xi.casimir)) / std::sqrt(static_cast<double>(blk.xi.dim));
    for (auto& sl : blk.slices)
      for (Eigen::Index i = 0; i < sl.size(); ++i) {
        const double re = n(rng);
        const double im = n(rng);
        sl.data()[i] = s * cd(re, im);
      }
  }
  return T;
}

GridFunction random_function(GroupKind g, int bandlimit, int value_dim, std::uint64_t seed, double decay) {
  return inverse(random_coefficients(g, bandlimit, value_dim, seed, decay), shared_quadrature(g, bandlimit));
}

}  // namespace lieharm
