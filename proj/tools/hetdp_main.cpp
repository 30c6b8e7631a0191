// Command-line front door: profiles and datasets in, reproducible JSON/CSV
// reports out. Every command is a pure function of (flags, input files,
// seed); reruns are byte-identical.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hetdp/bounds.hpp"
#include "hetdp/io.hpp"
#include "hetdp/mechanisms.hpp"
#include "hetdp/simulation.hpp"
#include "hetdp/version.hpp"
#include "hetdp/weights.hpp"

using nlohmann::json;

namespace {

json json_value(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

json json_array(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(json_value(v));
  return arr;
}

// Execution knobs like --threads stay out of the manifest: they cannot
// change the output, only how fast it appears.
json make_manifest(const std::string& command, std::uint64_t seed,
                   json flags, const std::vector<std::string>& inputs) {
  json m;
  m["command"] = command;
  m["version"] = hetdp::kVersion;
  m["seed"] = seed;
  m["flags"] = std::move(flags);
  json in = json::object();
  for (const auto& path : inputs) in[path] = hetdp::digest_file(path);
  m["inputs"] = in;
  return m;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HETDP_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

std::string fmt(double v) { return hetdp::format_double(v); }

struct WeightsArgs {
  std::string eps_path;
  std::string format = "json";
};

int cmd_weights(const WeightsArgs& args) {
  const auto profile = hetdp::read_profile(args.eps_path);
  const auto sp = hetdp::sort_profile(profile);
  const auto alloc = hetdp::compute_weights(sp);
  const double upper = hetdp::upper_bound_mse(alloc);

  json flags;
  flags["eps"] = args.eps_path;
  flags["format"] = args.format;
  const json manifest = make_manifest("weights", 0, flags, {args.eps_path});

  if (args.format == "json") {
    json out;
    out["r"] = json_array(alloc.r);
    out["w"] = json_array(alloc.w);
    out["eta"] = json_value(alloc.eta);
    out["granted"] = json_array(alloc.granted);
    if (alloc.sat_index) {
      out["sat_index"] = *alloc.sat_index;
    } else {
      out["sat_index"] = nullptr;
    }
    out["f"] = json_value(alloc.f_value);
    out["upper_bound"] = json_value(upper);
    out["trivial_fallback"] = alloc.trivial_fallback;
    out["manifest"] = manifest;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  const auto w_orig = hetdp::unsort(alloc.w, alloc.perm);
  std::cout << "# manifest: " << manifest.dump() << "\n";
  std::cout << "# eta=" << fmt(alloc.eta) << " f=" << fmt(alloc.f_value)
            << " upper_bound=" << fmt(upper) << " sat_index="
            << (alloc.sat_index ? std::to_string(*alloc.sat_index) : "none")
            << " trivial_fallback=" << (alloc.trivial_fallback ? 1 : 0)
            << "\n";
  std::cout << "user,eps,granted,weight\n";
  for (std::size_t i = 0; i < profile.n(); ++i) {
    std::cout << i << "," << fmt(profile.eps[i]) << ","
              << fmt(alloc.granted[i]) << "," << fmt(w_orig[i]) << "\n";
  }
  return 0;
}

struct BoundsArgs {
  std::string eps_path;
};

int cmd_bounds(const BoundsArgs& args) {
  const auto sp = hetdp::sort_profile(hetdp::read_profile(args.eps_path));
  const auto rep = hetdp::bounds_report(sp);

  json flags;
  flags["eps"] = args.eps_path;
  json out;
  out["h"] = json_value(rep.h);
  out["p"] = rep.h_argmax;
  out["f"] = json_value(rep.f);
  out["upper"] = json_value(rep.upper);
  out["ratio"] = json_value(rep.ratio);
  out["manifest"] = make_manifest("bounds", 0, flags, {args.eps_path});
  std::cout << out.dump(2) << "\n";
  return 0;
}

struct EstimateArgs {
  std::string method = "adpm";
  std::string eps_path;
  std::string data_path;
  std::optional<std::uint64_t> seed;
  bool clip = false;
};

int cmd_estimate(const EstimateArgs& args) {
  const auto profile = hetdp::read_profile(args.eps_path);
  const auto data = hetdp::read_dataset(args.data_path);
  if (data.x.size() != profile.n()) {
    throw hetdp::LengthMismatch(profile.n(), data.x.size());
  }
  const auto sp = hetdp::sort_profile(profile);
  const std::uint64_t seed = resolve_seed(args.seed);
  hetdp::NoiseSource ns(seed, 0);

  const hetdp::Method method = hetdp::method_from_name(args.method);
  hetdp::Estimate est{0.0, method, {}, seed};
  switch (method) {
    case hetdp::Method::adpm:
      est = hetdp::adpm_estimate(hetdp::compute_weights(sp), data, ns,
                                 args.clip);
      break;
    case hetdp::Method::uni:
      est = hetdp::uni_estimate(sp, data, ns);
      break;
    case hetdp::Method::sm:
      est = hetdp::sm_estimate(sp, data, ns);
      break;
    case hetdp::Method::ldpe:
      est = hetdp::ldpe_estimate(sp, data, ns);
      break;
    case hetdp::Method::prop:
      est = hetdp::prop_estimate(sp, data, ns);
      break;
  }

  json flags;
  flags["method"] = args.method;
  flags["eps"] = args.eps_path;
  flags["data"] = args.data_path;
  flags["clip"] = args.clip;
  json out;
  out["value"] = json_value(est.value);
  out["method"] = hetdp::method_name(est.method);
  out["eta_used"] = json_array(est.eta_used);
  out["seed"] = est.seed;
  out["manifest"] = make_manifest("estimate", seed, flags,
                                  {args.eps_path, args.data_path});
  std::cout << out.dump(2) << "\n";
  return 0;
}

struct SimulateArgs {
  std::string regime;
  std::string eps_path;
  std::size_t n = 1000;
  std::size_t trials = 20000;
  std::vector<std::string> methods{"adpm", "uni", "sm", "ldpe", "prop"};
  std::string dist = "beta(2,3)";
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string format = "csv";
  bool clip = false;
};

int cmd_simulate(const SimulateArgs& args) {
  hetdp::SimulationConfig cfg;
  cfg.seed = resolve_seed(args.seed);
  std::vector<std::string> inputs;
  if (!args.eps_path.empty()) {
    cfg.profile = hetdp::read_profile(args.eps_path);
    inputs.push_back(args.eps_path);
  } else if (args.regime == "low" || args.regime == "high") {
    cfg.profile = hetdp::gen_eps(args.regime == "low" ? hetdp::EpsRegime::low
                                                      : hetdp::EpsRegime::high,
                                 args.n, cfg.seed);
  } else {
    throw hetdp::Error("simulate needs --eps FILE or --regime low|high");
  }
  cfg.dist = hetdp::parse_distribution(args.dist);
  cfg.trials = args.trials;
  cfg.clip = args.clip;
  for (const auto& name : args.methods) {
    cfg.methods.push_back(hetdp::method_from_name(name));
  }

  const auto rep = hetdp::run_mse(cfg, args.threads);

  json flags;
  flags["regime"] = args.regime;
  flags["eps"] = args.eps_path;
  flags["n"] = cfg.profile.n();
  flags["trials"] = args.trials;
  flags["methods"] = args.methods;
  flags["dist"] = args.dist;
  flags["clip"] = args.clip;
  flags["format"] = args.format;
  const json manifest = make_manifest("simulate", cfg.seed, flags, inputs);

  if (args.format == "json") {
    json out;
    json per = json::object();
    for (const auto& st : rep.per_method) {
      json row;
      row["mse"] = json_value(st.mse);
      row["ln_mse"] = json_value(st.ln_mse);
      row["mc_stderr"] = json_value(st.mc_stderr);
      per[hetdp::method_name(st.method)] = row;
    }
    out["methods"] = per;
    out["true_mean"] = json_value(rep.true_mean);
    out["predicted_adpm_mse"] = json_value(rep.predicted_adpm_mse);
    out["worst_case_bound"] = json_value(rep.worst_case_bound);
    out["trials"] = rep.trials;
    out["manifest"] = manifest;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  std::cout << "# manifest: " << manifest.dump() << "\n";
  std::cout << "# true_mean=" << fmt(rep.true_mean)
            << " predicted_adpm_mse=" << fmt(rep.predicted_adpm_mse)
            << " worst_case_bound=" << fmt(rep.worst_case_bound)
            << " trials=" << rep.trials << "\n";
  std::cout << "method,mse,ln_mse,mc_stderr\n";
  for (const auto& st : rep.per_method) {
    std::cout << hetdp::method_name(st.method) << "," << fmt(st.mse) << ","
              << fmt(st.ln_mse) << "," << fmt(st.mc_stderr) << "\n";
  }
  return 0;
}

struct ScatterArgs {
  std::size_t sequences = 1000;
  std::optional<std::uint64_t> seed;
};

int cmd_scatter(const ScatterArgs& args) {
  const std::uint64_t seed = resolve_seed(args.seed);
  const auto points = hetdp::scatter_fh(args.sequences, seed);

  json flags;
  flags["sequences"] = args.sequences;
  const json manifest = make_manifest("scatter", seed, flags, {});

  std::cout << "# manifest: " << manifest.dump() << "\n";
  std::cout << "ln_f,ln_h\n";
  double max_ratio = 0.0;
  for (const auto& pt : points) {
    std::cout << fmt(pt.ln_f) << "," << fmt(pt.ln_h) << "\n";
    max_ratio = std::max(max_ratio, std::exp(pt.ln_f - pt.ln_h));
  }
  if (!points.empty()) {
    std::cout << "# max_ratio=" << fmt(max_ratio) << "\n";
  }
  return 0;
}

struct GenEpsArgs {
  std::string regime = "low";
  std::size_t n = 1000;
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

int cmd_gen_eps(const GenEpsArgs& args) {
  const std::uint64_t seed = resolve_seed(args.seed);
  const auto profile = hetdp::gen_eps(args.regime == "low"
                                          ? hetdp::EpsRegime::low
                                          : hetdp::EpsRegime::high,
                                      args.n, seed);

  json flags;
  flags["regime"] = args.regime;
  flags["n"] = args.n;
  const json manifest = make_manifest("gen-eps", seed, flags, {});

  std::ofstream out(args.out_path);
  if (!out) throw hetdp::FileError(args.out_path);
  out << "# manifest: " << manifest.dump() << "\n";
  for (double e : profile.eps) out << fmt(e) << "\n";
  out.close();
  if (!out) throw hetdp::Error("write failed: " + args.out_path);

  std::cout << manifest.dump(2) << "\n";
  return 0;
}

struct TraceArgs {
  std::string eps_path;
};

int cmd_trace(const TraceArgs& args) {
  const auto sp = hetdp::sort_profile(hetdp::read_profile(args.eps_path));
  const auto rows = hetdp::trace_r(sp);

  json flags;
  flags["eps"] = args.eps_path;
  const json manifest = make_manifest("trace", 0, flags, {args.eps_path});
  std::cout << "# manifest: " << manifest.dump() << "\n";
  std::cout << "index,eps,r\n";
  for (const auto& row : rows) {
    std::cout << row.index << "," << fmt(row.eps) << "," << fmt(row.r) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mean estimation under per-user differential privacy budgets"};
  app.require_subcommand(1);

  WeightsArgs weights_args;
  auto* weights = app.add_subcommand(
      "weights", "optimal scaled weights and granted privacy for a profile");
  weights->add_option("--eps", weights_args.eps_path, "profile file (CSV or JSON)")
      ->required();
  weights->add_option("--format", weights_args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand(
      "bounds", "lower-bound functional, upper bound and their ratio");
  bounds->add_option("--eps", bounds_args.eps_path, "profile file")->required();

  EstimateArgs estimate_args;
  auto* estimate =
      app.add_subcommand("estimate", "release one privatized mean estimate");
  estimate->add_option("--method", estimate_args.method, "estimator")
      ->check(CLI::IsMember({"adpm", "uni", "sm", "ldpe", "prop"}));
  estimate->add_option("--eps", estimate_args.eps_path, "profile file")
      ->required();
  estimate->add_option("--data", estimate_args.data_path, "dataset file")
      ->required();
  estimate->add_option("--seed", estimate_args.seed, "64-bit RNG seed");
  estimate->add_flag("--clip", estimate_args.clip,
                     "project the release onto [-0.5, 0.5]");

  SimulateArgs simulate_args;
  auto* simulate = app.add_subcommand(
      "simulate", "Monte-Carlo MSE comparison across estimators");
  simulate->add_option("--regime", simulate_args.regime,
                       "generate the profile: low or high");
  simulate->add_option("--eps", simulate_args.eps_path,
                       "or read the profile from a file");
  simulate->add_option("--n", simulate_args.n, "users when generating")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--trials", simulate_args.trials, "Monte-Carlo trials")
      ->check(CLI::PositiveNumber);
  simulate
      ->add_option("--methods", simulate_args.methods,
                   "comma-separated subset of adpm,uni,sm,ldpe,prop")
      ->delimiter(',');
  simulate->add_option("--dist", simulate_args.dist,
                       "beta(a,b), bernoulli(delta) or point(c)");
  simulate->add_option("--seed", simulate_args.seed, "64-bit RNG seed");
  simulate->add_option("--threads", simulate_args.threads,
                       "worker threads (0 = machine parallelism)");
  simulate->add_option("--format", simulate_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  simulate->add_flag("--clip", simulate_args.clip, "clip the adpm release");

  ScatterArgs scatter_args;
  auto* scatter = app.add_subcommand(
      "scatter", "ln f vs ln H over random unsaturated sequences");
  scatter->add_option("--sequences", scatter_args.sequences, "points to emit");
  scatter->add_option("--seed", scatter_args.seed, "64-bit RNG seed");

  GenEpsArgs gen_args;
  auto* gen = app.add_subcommand("gen-eps", "sample a privacy profile");
  gen->add_option("--regime", gen_args.regime, "low or high")
      ->check(CLI::IsMember({"low", "high"}));
  gen->add_option("--n", gen_args.n, "number of users")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_args.seed, "64-bit RNG seed");
  gen->add_option("--out", gen_args.out_path, "output profile file")
      ->required();

  TraceArgs trace_args;
  auto* trace = app.add_subcommand(
      "trace", "per-user (index, eps, r) rows for plotting");
  trace->add_option("--eps", trace_args.eps_path, "profile file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(weights)) return cmd_weights(weights_args);
    if (app.got_subcommand(bounds)) return cmd_bounds(bounds_args);
    if (app.got_subcommand(estimate)) return cmd_estimate(estimate_args);
    if (app.got_subcommand(simulate)) return cmd_simulate(simulate_args);
    if (app.got_subcommand(scatter)) return cmd_scatter(scatter_args);
    if (app.got_subcommand(gen)) return cmd_gen_eps(gen_args);
    if (app.got_subcommand(trace)) return cmd_trace(trace_args);
  } catch (const hetdp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
