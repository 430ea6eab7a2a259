// lieharm: transforms, decay classification, strong factorization and the
// self-test suite on T^1, T^2 and SU(2).
//
// Exit codes: 0 ok, 1 verification failure, 2 usage/parameter,
// 3 insufficient data, 4 conditioning.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lieharm/builtins.hpp"
#include "lieharm/classify.hpp"
#include "lieharm/error.hpp"
#include "lieharm/factorize.hpp"
#include "lieharm/io.hpp"
#include "lieharm/spectral.hpp"
#include "lieharm/verify.hpp"

using namespace lieharm;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kInsufficient = 3, kConditioning = 4 };

struct Run {
  RunConfig cfg;
  bool bandlimit_given = false;
  std::vector<std::string> artifacts;

  std::string path(const std::string& name) {
    artifacts.push_back(name);
    return (fs::path(cfg.output) / name).string();
  }
};

// Input function: builtin (sampled at the band limit) or grid CSV.
GridFunction load_function(const Run& run, GroupKind g) {
  if (!run.cfg.builtin.empty()) {
    if (!run.cfg.input.empty()) throw ParameterError("give either --input or --builtin, not both");
    return builtin_function(parse_builtin(run.cfg.builtin), g, run.cfg.bandlimit);
  }
  if (run.cfg.input.empty()) throw ParameterError("an --input grid CSV or a --builtin is required");
  auto f = read_grid_csv(run.cfg.input);
  if (f.group() != g) throw ParameterError("input grid is on " + group_name(f.group()) + ", not " + group_name(g));
  return f;
}

int cmd_transform(Run& run) {
  const GroupKind g = parse_group(run.cfg.group);
  const auto f = load_function(run, g);
  const int L = run.bandlimit_given || !run.cfg.builtin.empty() ? run.cfg.bandlimit : f.grid->bandlimit;
  if (L > f.grid->bandlimit)
    throw ParameterError("band limit " + std::to_string(L) + " exceeds the input grid's band limit " +
                         std::to_string(f.grid->bandlimit));
  run.cfg.bandlimit = L;
  const auto T = forward(f, L);
  write_coefficients(run.path("coefficients.json"), T);
  write_text(run.path("decay.csv"), decay_csv(T));

  const auto back = inverse(T, f.grid);
  std::printf("group %s  bandlimit %d  blocks %zu\n", group_name(g).c_str(), L, T.blocks.size());
  std::printf("roundtrip sup error  %.3e\n", sup_distance(f, back));
  if (L == f.grid->bandlimit) std::printf("parseval defect      %.3e\n", parseval_defect(f));
  return kOk;
}

FourierCoefficients load_coefficients(const Run& run, GroupKind g) {
  if (!run.cfg.builtin.empty()) {
    if (!run.cfg.input.empty()) throw ParameterError("give either --input or --builtin, not both");
    return builtin_coefficients(parse_builtin(run.cfg.builtin), g, run.cfg.bandlimit);
  }
  if (run.cfg.input.empty()) throw ParameterError("an --input coefficient file or a --builtin is required");
  return read_coefficients(run.cfg.input);
}

int cmd_classify(Run& run) {
  const GroupKind g = parse_group(run.cfg.group);
  const auto T = load_coefficients(run, g);
  run.cfg.group = group_name(T.group);
  run.cfg.bandlimit = T.bandlimit;
  const auto w = parse_weight_spec(run.cfg.weight);
  const auto rep = estimate_critical_h(T, w);

  auto doc = decay_report_json(rep);
  try {
    const auto fit = gevrey_order_fit(T);
    doc["gevrey_order"] = {{"s", fit.s}, {"residual", fit.residual}, {"points", fit.points},
                           {"outside_weight_range", fit.outside_weight_range}};
  } catch (const Error& e) {
    doc["gevrey_order"] = {{"error", e.what()}};
  }
  doc["seminorm_at_h"] = {{"h", run.cfg.h}, {"log_value", log_decay_seminorm(T, w, run.cfg.h)}};
  write_json(run.path("decay_report.json"), doc);
  write_text(run.path("decay_report.csv"), rep.to_csv());

  std::printf("weight %s  points %zu\n", w.describe().c_str(), rep.points.size());
  std::printf("h*        %.6g\n", rep.h_star);
  std::printf("slope     %.6g  residual %.3e\n", rep.slope, rep.residual);
  std::printf("halves    lower %.6g  upper %.6g\n", rep.lower_slope, rep.upper_slope);
  if (rep.super_weight_decay) std::printf("note: coefficients decay faster than the weight (super-omega decay)\n");
  return kOk;
}

int cmd_factorize_global(Run& run, GroupKind g, const WeightFunction& w) {
  const auto f = load_function(run, g);
  run.cfg.bandlimit = f.grid->bandlimit;
  const auto r = strong_factorize(f, w, run.cfg.h, run.cfg.h_prime);
  write_json(run.path("factorization.json"), factorization_json(r));
  write_coefficients(run.path("g.json"), r.g);
  write_coefficients(run.path("f_prime.json"), r.f_prime);

  std::printf("residual            %.3e\n", r.residual);
  std::printf("coefficient defect  %.3e\n", r.coefficient_defect);
  std::printf("decay seminorm f    %.6g (h = %g)\n", r.decay_f, r.h);
  std::printf("decay seminorm f'   %.6g (h = %g)\n", r.decay_f_prime, r.shifted_h);
  std::printf("%-12s %14s %14s\n", "xi", "C_xi", "margin");
  for (std::size_t i = 0; i < r.f_hat.blocks.size(); ++i)
    std::printf("%-12s %14.6e %14.6e\n", dual_label_string(g, r.f_hat.blocks[i].xi).c_str(), r.multipliers[i],
                r.margins[i]);
  std::printf("min margin %.3e at %s\n", r.min_margin, r.worst_label.c_str());
  return kOk;
}

int cmd_factorize_supported(Run& run, GroupKind g, const WeightFunction& w) {
  if (g != GroupKind::torus1) throw UnsupportedError("--supported is only available on t1");
  const auto f = load_function(run, g);
  run.cfg.bandlimit = f.grid->bandlimit;
  const auto r = supported_factorize(f, run.cfg.support_delta, w, run.cfg.h, run.cfg.h_prime, run.cfg.pieces,
                                     run.cfg.bump_order);
  run.cfg.pieces = r.k;
  write_json(run.path("factorization.json"), supported_factorization_json(r));
  write_grid_csv(run.path("g.csv"), r.g);
  write_coefficients(run.path("f_prime.json"), r.f_prime);

  std::printf("pieces %d  delta %g\n", r.k, r.delta);
  std::printf("residual              %.3e\n", r.residual);
  std::printf("outside support mass  %.3e\n", r.outside_support_mass);
  std::printf("min eigenvalue        %.3e\n", r.min_eigenvalue);
  std::printf("min mu margin         %.3e\n", r.min_mu_margin);
  std::printf("all S_k positive      %s\n", r.all_positive ? "yes" : "no");
  return kOk;
}

int cmd_factorize_vector(Run& run, GroupKind g, const WeightFunction& w) {
  const auto rep = parse_rep(g, run.cfg.rep);
  std::mt19937_64 rng(run.cfg.seed);
  std::normal_distribution<double> n;
  Eigen::VectorXcd v(rep.dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = n(rng);
    const double im = n(rng);
    v(i) = cd(re, im);
  }
  const auto r = factorize_vector(rep, v, w, run.cfg.h, run.cfg.h_prime);
  run.cfg.bandlimit = rep.bandlimit();

  auto doc = factorization_json(r.inner);
  std::vector<double> vre, vim, tre, tim;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    vre.push_back(v(i).real());
    vim.push_back(v(i).imag());
    tre.push_back(r.v_tilde(i).real());
    tim.push_back(r.v_tilde(i).imag());
  }
  doc["vector"] = {{"v", {{"re", vre}, {"im", vim}}},
                   {"v_tilde", {{"re", tre}, {"im", tim}}},
                   {"residual", r.residual},
                   {"orbit_defect", r.orbit_defect}};
  write_json(run.path("factorization.json"), doc);
  write_coefficients(run.path("g.json"), r.inner.g);
  write_coefficients(run.path("f_prime.json"), r.inner.f_prime);

  std::printf("representation dim %d  blocks %zu\n", rep.dim(), rep.blocks.size());
  std::printf("residual |v - Pi(g_check) v_tilde|  %.3e\n", r.residual);
  std::printf("orbit defect |gamma_vt - f'_v|     %.3e\n", r.orbit_defect);
  std::printf("min margin %.3e at %s\n", r.inner.min_margin, r.inner.worst_label.c_str());
  return kOk;
}

int cmd_factorize(Run& run) {
  const GroupKind g = parse_group(run.cfg.group);
  const auto w = parse_weight_spec(run.cfg.weight);
  if (!(run.cfg.h_prime > run.cfg.h) || !(run.cfg.h > 0))
    throw ParameterError("need h' > h > 0 (got h = " + std::to_string(run.cfg.h) +
                         ", h' = " + std::to_string(run.cfg.h_prime) + ")");
  if (!run.cfg.rep.empty()) return cmd_factorize_vector(run, g, w);
  if (run.cfg.supported) return cmd_factorize_supported(run, g, w);
  return cmd_factorize_global(run, g, w);
}

int cmd_verify(Run& run) {
  if (!run.cfg.inject_fault.empty() && run.cfg.inject_fault != "conv-sign")
    throw ParameterError("unknown fault '" + run.cfg.inject_fault + "' (expected conv-sign)");
  set_convolution_sign_fault(run.cfg.inject_fault == "conv-sign");
  const auto rep = run_verification({run.cfg.seed, 3});
  set_convolution_sign_fault(false);

  json props = json::array();
  for (const auto& p : rep.properties)
    props.push_back({{"module", p.module}, {"name", p.name}, {"value", p.value}, {"tolerance", p.tolerance},
                     {"pass", p.pass}});
  write_json(run.path("verify.json"), {{"all_passed", rep.all_passed()}, {"properties", props}});

  std::cout << rep.table();
  if (rep.all_passed()) {
    std::printf("all %zu properties passed\n", rep.properties.size());
    return kOk;
  }
  for (const auto& name : rep.failing()) std::fprintf(stderr, "FAILED: %s\n", name.c_str());
  return kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier analysis, decay classification and strong factorization on compact Lie groups"};
  app.set_help_flag("--help", "print this help and exit");  // -h would clash with --h
  app.require_subcommand(1);
  Run run;
  auto& c = run.cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", c.group, "t1 | t2 | su2")->capture_default_str();
    sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
    sub->add_option("--output", c.output, "output directory")->capture_default_str();
  };
  auto source = [&](CLI::App* sub) {
    sub->add_option("--input", c.input, "input file");
    sub->add_option("--builtin", c.builtin, "poisson:t | heat:t | bump:s:delta");
    sub->add_option("--bandlimit", c.bandlimit, "band limit L")->capture_default_str()->check(CLI::NonNegativeNumber);
  };
  auto weight = [&](CLI::App* sub) {
    sub->add_option("--weight", c.weight, "gevrey:s=<s> | log1p | table:<csv>")->capture_default_str();
    sub->add_option("--h", c.h, "decay parameter h")->capture_default_str();
  };

  auto* transform = app.add_subcommand("transform", "forward transform of a grid function or builtin");
  common(transform);
  source(transform);

  auto* classify = app.add_subcommand("classify", "decay report of a coefficient file or builtin");
  common(classify);
  source(classify);
  weight(classify);

  auto* factorize = app.add_subcommand("factorize", "strong factorization f = g * f'");
  common(factorize);
  source(factorize);
  weight(factorize);
  factorize->add_option("--h-prime", c.h_prime, "h' > h")->capture_default_str();
  factorize->add_flag("--supported", c.supported, "compactly supported g (t1)");
  factorize->add_option("--support-delta", c.support_delta, "support of g is (-delta, delta)")->capture_default_str();
  factorize->add_option("--pieces", c.pieces, "partition pieces (0: default)")->capture_default_str();
  factorize->add_option("--bump-order", c.bump_order, "Gevrey order s > 1 of the bumps")->capture_default_str();
  factorize->add_option("--rep", c.rep, "vector mode: representation blocks, e.g. 0,1,2");

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  common(verify);
  verify->add_option("--inject-fault", c.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  auto* sub = app.get_subcommands().front();
  c.command = sub->get_name();
  if (auto* opt = sub->get_option_no_throw("--bandlimit")) run.bandlimit_given = opt->count() > 0;

  int code = kOk;
  try {
    if (c.command == "transform")
      code = cmd_transform(run);
    else if (c.command == "classify")
      code = cmd_classify(run);
    else if (c.command == "factorize")
      code = cmd_factorize(run);
    else
      code = cmd_verify(run);
  } catch (const ConditioningError& e) {
    std::fprintf(stderr, "conditioning error at %s: %s\n", e.offending_label().c_str(), e.what());
    code = kConditioning;
  } catch (const InsufficientDataError& e) {
    std::fprintf(stderr, "insufficient data: %s\n", e.what());
    code = kInsufficient;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    code = kUsage;
  }

  try {
    write_manifest(c.output, c, run.artifacts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "warning: manifest not written: %s\n", e.what());
  }
  return code;
}
