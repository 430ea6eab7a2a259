#pragma once

// Closed-form test functions. Their coefficient laws are known exactly, so
// every transform / classification run on them is self-checking.
//
//   poisson:t   F f(xi) = e^{-t sqrt(lambda_xi)} Id
//   heat:t      F f(xi) = e^{-t lambda_xi} Id
//   bump:s:d    Gevrey bump of order s supported in (-d, d)   (t1 only)

#include <cstdint>
#include <string>
#include <vector>

#include "lieharm/fourier.hpp"

namespace lieharm {

struct BuiltinSpec {
  std::string name;  // poisson | heat | bump
  std::vector<double> params;

  std::string str() const;
};

/// Throws ParameterError on unknown names, wrong arity or out-of-range values.
BuiltinSpec parse_builtin(const std::string& spec);

FourierCoefficients poisson_coefficients(GroupKind g, int bandlimit, double t);
FourierCoefficients heat_coefficients(GroupKind g, int bandlimit, double t);

/// Coefficients of the builtin; bump is transformed from its samples.
FourierCoefficients builtin_coefficients(const BuiltinSpec& b, GroupKind g, int bandlimit);

/// Samples on the shared grid of `bandlimit`.
GridFunction builtin_function(const BuiltinSpec& b, GroupKind g, int bandlimit);

/// Random band-limited coefficients: independent complex Gaussians scaled by
/// e^{-decay sqrt(lambda)} / sqrt(d_xi). decay = 0 gives a flat spectrum.
FourierCoefficients random_coefficients(GroupKind g, int bandlimit, int value_dim, std::uint64_t seed,
                                        double decay = 0.0);
GridFunction random_function(GroupKind g, int bandlimit, int value_dim, std::uint64_t seed, double decay = 0.0);

}  // namespace lieharm
