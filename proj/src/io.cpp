#include "lieharm/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lieharm/error.hpp"

namespace lieharm {

namespace {

// NaN / inf are not valid JSON numbers.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    while (!tok.empty() && (tok.back() == '\r' || tok.back() == ' ')) tok.pop_back();
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    out.push_back(tok);
  }
  return out;
}

double to_double(const std::string& tok, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParameterError("malformed number '" + tok + "' in " + where);
  }
}

int coordinate_count(GroupKind g) { return g == GroupKind::torus1 ? 1 : g == GroupKind::torus2 ? 2 : 3; }

std::vector<std::string> coordinate_names(GroupKind g) {
  switch (g) {
    case GroupKind::torus1:
      return {"x"};
    case GroupKind::torus2:
      return {"x1", "x2"};
    default:
      return {"alpha", "beta", "gamma"};
  }
}

int bandlimit_from_nodes(GroupKind g, std::size_t n) {
  // t1: N = 2L+2, t2: N^2, su2: 4 B^3 with B = 2L+2.
  for (int L = 0; L <= 4096; ++L) {
    const std::size_t N = 2 * static_cast<std::size_t>(L) + 2;
    const std::size_t count = g == GroupKind::torus1 ? N : g == GroupKind::torus2 ? N * N : 4 * N * N * N;
    if (count == n) return L;
    if (count > n) break;
  }
  throw ParameterError("node count " + std::to_string(n) + " matches no " + group_name(g) + " Haar grid");
}

}  // namespace

json coefficients_to_json(const FourierCoefficients& T) {
  json entries = json::array();
  for (const auto& blk : T.blocks) {
    std::vector<double> re, im;
    for (const auto& s : blk.slices)
      for (Eigen::Index r = 0; r < s.rows(); ++r)
        for (Eigen::Index c = 0; c < s.cols(); ++c) {
          re.push_back(s(r, c).real());
          im.push_back(s(r, c).imag());
        }
    entries.push_back({{"xi", {blk.xi.label[0], blk.xi.label[1]}}, {"re", re}, {"im", im}});
  }
  return {{"group", group_name(T.group)},
          {"bandlimit", T.bandlimit},
          {"value_dim", T.value_dim},
          {"entries", std::move(entries)}};
}

FourierCoefficients coefficients_from_json(const json& j) {
  try {
    const GroupKind g = parse_group(j.at("group").get<std::string>());
    const int L = j.at("bandlimit").get<int>();
    const int m = j.at("value_dim").get<int>();
    if (L < 0 || m < 1) throw ParameterError("bad bandlimit/value_dim in coefficient file");
    auto T = FourierCoefficients::zeros(g, L, m);
    for (const auto& e : j.at("entries")) {
      const auto lab = e.at("xi").get<std::vector<int>>();
      if (lab.size() != 2) throw ParameterError("coefficient label must have two entries");
      const int idx = T.index_of({lab[0], lab[1]});
      if (idx < 0) throw ParameterError("label outside the band limit in coefficient file");
      auto& blk = T.blocks[static_cast<std::size_t>(idx)];
      const auto re = e.at("re").get<std::vector<double>>();
      const auto im = e.at("im").get<std::vector<double>>();
      const std::size_t d = static_cast<std::size_t>(blk.xi.dim);
      if (re.size() != d * d * static_cast<std::size_t>(m) || im.size() != re.size())
        throw ParameterError("coefficient entry has the wrong size");
      std::size_t k = 0;
      for (auto& s : blk.slices)
        for (Eigen::Index r = 0; r < s.rows(); ++r)
          for (Eigen::Index c = 0; c < s.cols(); ++c, ++k) s(r, c) = cd(re[k], im[k]);
    }
    return T;
  } catch (const json::exception& ex) {
    throw ParameterError(std::string("malformed coefficient JSON: ") + ex.what());
  }
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_text(const std::string& path, const std::string& text) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write '" + path + "'");
  out << text;
}

void write_coefficients(const std::string& path, const FourierCoefficients& T) {
  write_json(path, coefficients_to_json(T));
}

FourierCoefficients read_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open coefficient file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw ParameterError("malformed coefficient JSON '" + path + "': " + ex.what());
  }
  return coefficients_from_json(j);
}

void write_grid_csv(const std::string& path, const GridFunction& f) {
  std::ostringstream os;
  os.precision(17);
  const auto names = coordinate_names(f.group());
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
  for (int c = 0; c < f.value_dim; ++c) os << ",re" << c << ",im" << c;
  os << "\n";
  const int nc = coordinate_count(f.group());
  for (std::size_t n = 0; n < f.nodes(); ++n) {
    const auto& x = f.grid->nodes[n];
    for (int i = 0; i < nc; ++i) os << (i ? "," : "") << x.coords[static_cast<std::size_t>(i)];
    for (int c = 0; c < f.value_dim; ++c) os << "," << f.at(n, c).real() << "," << f.at(n, c).imag();
    os << "\n";
  }
  write_text(path, os.str());
}

GridFunction read_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open grid CSV '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("empty grid CSV '" + path + "'");
  const auto header = split(line, ',');
  GroupKind g;
  if (!header.empty() && header[0] == "x")
    g = GroupKind::torus1;
  else if (header.size() >= 2 && header[0] == "x1" && header[1] == "x2")
    g = GroupKind::torus2;
  else if (header.size() >= 3 && header[0] == "alpha" && header[1] == "beta" && header[2] == "gamma")
    g = GroupKind::su2;
  else
    throw ParameterError("unrecognised grid CSV header in '" + path + "'");
  const int nc = coordinate_count(g);
  const int extra = static_cast<int>(header.size()) - nc;
  if (extra < 2 || extra % 2) throw ParameterError("grid CSV needs re/im column pairs");
  const int m = extra / 2;

  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto toks = split(line, ',');
    if (toks.size() != header.size())
      throw ParameterError("grid CSV line " + std::to_string(lineno) + " has " + std::to_string(toks.size()) +
                           " fields, expected " + std::to_string(header.size()));
    std::vector<double> row;
    for (const auto& t : toks) row.push_back(to_double(t, "grid CSV line " + std::to_string(lineno)));
    rows.push_back(std::move(row));
  }
  const int L = bandlimit_from_nodes(g, rows.size());
  auto grid = shared_quadrature(g, L);
  auto f = GridFunction::zeros(grid, m);
  for (std::size_t n = 0; n < rows.size(); ++n) {
    for (int i = 0; i < nc; ++i)
      if (std::abs(rows[n][static_cast<std::size_t>(i)] - grid->nodes[n].coords[static_cast<std::size_t>(i)]) > 1e-9)
        throw ParameterError("grid CSV node " + std::to_string(n) + " does not match the band-limit " +
                             std::to_string(L) + " Haar grid");
    for (int c = 0; c < m; ++c)
      f.at(n, c) = cd(rows[n][static_cast<std::size_t>(nc + 2 * c)], rows[n][static_cast<std::size_t>(nc + 2 * c + 1)]);
  }
  return f;
}

std::string decay_csv(const FourierCoefficients& T) {
  std::ostringstream os;
  os.precision(17);
  os << "sqrt_lambda,hsnorm\n";
  for (const auto& blk : T.blocks) os << std::sqrt(blk.xi.casimir) << "," << blk.hs_norm() << "\n";
  return os.str();
}

json decay_report_json(const DecayReport& r) {
  json sweep = json::array();
  for (const auto& row : r.sweep) sweep.push_back({{"h", row.h}, {"log_seminorm", number(row.log_seminorm)}});
  return {{"weight", r.weight.describe()},
          {"h_star", number(r.h_star)},
          {"slope", r.slope},
          {"intercept", r.intercept},
          {"residual", r.residual},
          {"lower_slope", r.lower_slope},
          {"upper_slope", r.upper_slope},
          {"super_weight_decay", r.super_weight_decay},
          {"points", r.points.size()},
          {"sweep", std::move(sweep)}};
}

json factorization_json(const FactorizationResult& r) {
  json margins = json::array();
  for (std::size_t i = 0; i < r.f_hat.blocks.size(); ++i)
    margins.push_back({{"xi", dual_label_string(r.f_hat.group, r.f_hat.blocks[i].xi)},
                       {"multiplier", number(r.multipliers[i])},
                       {"margin", number(r.margins[i])}});
  return {{"params", {{"weight", r.weight.describe()}, {"h", r.h}, {"h_prime", r.h_prime}, {"shifted_h", r.shifted_h}}},
          {"residual", r.residual},
          {"coefficient_defect", r.coefficient_defect},
          {"decay_f", number(r.decay_f)},
          {"decay_f_prime", number(r.decay_f_prime)},
          {"min_margin", number(r.min_margin)},
          {"worst_label", r.worst_label},
          {"multipliers", std::move(margins)}};
}

json supported_factorization_json(const SupportedFactorizationResult& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.S.size(); ++i)
    rows.push_back({{"xi", dual_label_string(r.f_prime.group, r.f_prime.blocks[i].xi)},
                    {"S", r.S[i]},
                    {"mu", r.mu[i]},
                    {"mu_bound", r.mu_bound[i]}});
  return {{"params", {{"k", r.k}, {"delta", r.delta}}},
          {"residual", r.residual},
          {"outside_support_mass", r.outside_support_mass},
          {"min_mu_margin", r.min_mu_margin},
          {"all_positive", r.all_positive},
          {"psi_sum_defect", r.psi_sum_defect},
          {"min_eigenvalue", r.min_eigenvalue},
          {"multipliers", std::move(rows)}};
}

json RunConfig::to_json() const {
  return {{"command", command},     {"group", group},
          {"bandlimit", bandlimit}, {"weight", weight},
          {"h", h},                 {"h_prime", h_prime},
          {"input", input},         {"output", output},
          {"builtin", builtin},     {"seed", seed},
          {"supported", supported}, {"support_delta", support_delta},
          {"pieces", pieces},       {"bump_order", bump_order},
          {"rep", rep},             {"inject_fault", inject_fault}};
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  try {
    c.command = j.value("command", c.command);
    c.group = j.value("group", c.group);
    c.bandlimit = j.value("bandlimit", c.bandlimit);
    c.weight = j.value("weight", c.weight);
    c.h = j.value("h", c.h);
    c.h_prime = j.value("h_prime", c.h_prime);
    c.input = j.value("input", c.input);
    c.output = j.value("output", c.output);
    c.builtin = j.value("builtin", c.builtin);
    c.seed = j.value("seed", c.seed);
    c.supported = j.value("supported", c.supported);
    c.support_delta = j.value("support_delta", c.support_delta);
    c.pieces = j.value("pieces", c.pieces);
    c.bump_order = j.value("bump_order", c.bump_order);
    c.rep = j.value("rep", c.rep);
    c.inject_fault = j.value("inject_fault", c.inject_fault);
  } catch (const json::exception& ex) {
    throw ParameterError(std::string("malformed run config: ") + ex.what());
  }
  return c;
}

void write_manifest(const std::string& dir, const RunConfig& cfg, const std::vector<std::string>& artifacts) {
  write_json((std::filesystem::path(dir) / "manifest.json").string(),
             {{"tool", "lieharm"}, {"config", cfg.to_json()}, {"artifacts", artifacts}});
}

}  // namespace lieharm
