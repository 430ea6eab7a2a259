#pragma once

// Artifact formats.
//
// Coefficients (JSON):
//   {"group": "su2", "bandlimit": L, "value_dim": m,
//    "entries": [{"xi": [a, b], "re": [...], "im": [...]}, ...]}
// with re/im flattened slice-major, each d x d slice row-major.
//
// Grid functions (CSV): node coordinates, then re/im interleaved per
// component. Headers: "x" (t1), "x1,x2" (t2), "alpha,beta,gamma" (su2).

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lieharm/classify.hpp"
#include "lieharm/factorize.hpp"
#include "lieharm/fourier.hpp"
#include "lieharm/spectral.hpp"

namespace lieharm {

using json = nlohmann::json;

json coefficients_to_json(const FourierCoefficients& T);
/// Throws ParameterError on malformed documents.
FourierCoefficients coefficients_from_json(const json& j);

void write_coefficients(const std::string& path, const FourierCoefficients& T);
FourierCoefficients read_coefficients(const std::string& path);

void write_grid_csv(const std::string& path, const GridFunction& f);
/// Recognises the group from the header and the band limit from the node
/// count; the coordinates must match the Haar grid. Throws ParameterError on
/// malformed input.
GridFunction read_grid_csv(const std::string& path);

/// sqrt_lambda,hsnorm
std::string decay_csv(const FourierCoefficients& T);

json decay_report_json(const DecayReport& r);
json factorization_json(const FactorizationResult& r);
json supported_factorization_json(const SupportedFactorizationResult& r);

struct RunConfig {
  std::string command;
  std::string group = "t1";
  int bandlimit = 16;
  std::string weight = "gevrey:s=1";
  double h = 0.5;
  double h_prime = 1.0;
  std::string input;
  std::string output = "out";
  std::string builtin;
  std::uint64_t seed = 1;
  // factorize
  bool supported = false;
  double support_delta = 0.5;
  int pieces = 0;  // 0: default for delta
  double bump_order = 2.0;
  std::string rep;
  // verify
  std::string inject_fault;

  json to_json() const;
  static RunConfig from_json(const json& j);
};

/// Writes <dir>/manifest.json echoing the config and listing the artifacts.
void write_manifest(const std::string& dir, const RunConfig& cfg, const std::vector<std::string>& artifacts);

/// Deterministic text form: 2-space indent, trailing newline.
void write_json(const std::string& path, const json& j);
void write_text(const std::string& path, const std::string& text);

}  // namespace lieharm
