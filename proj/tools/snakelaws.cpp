#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "snakelaws/discretesnake.hpp"
#include "snakelaws/exact_series.hpp"
#include "snakelaws/exactlaws.hpp"
#include "snakelaws/harness/suite.hpp"
#include "snakelaws/levycsbp.hpp"
#include "snakelaws/samplers.hpp"

namespace {

using namespace snakelaws;

struct LawEntry {
  std::size_t arity;
  std::function<double(const std::vector<double>&)> eval;
};

const std::map<std::string, LawEntry>& law_table() {
  using namespace snakelaws::laws;
  static const std::map<std::string, LawEntry> t{
      {"duration_laplace", {1, [](const auto& a) { return duration_laplace(a[0]); }}},
      {"local_time_laplace", {1, [](const auto& a) { return local_time_laplace(a[0]); }}},
      {"local_time_density", {1, [](const auto& a) { return local_time_density(a[0]); }}},
      {"pair_laplace", {2, [](const auto& a) { return pair_laplace(a[0], a[1]); }}},
      {"solve_triple", {3, [](const auto& a) { return solve_triple({a[0], a[1], a[2]}).value; }}},
      {"lt_sigma_laplace", {2, [](const auto& a) { return lt_sigma_laplace(a[0], a[1]); }}},
      {"pair_density", {2, [](const auto& a) { return pair_density(a[0], a[1]); }}},
      {"pair_marginal_density", {1, [](const auto& a) { return pair_marginal_density(a[0]); }}},
      {"exit_laplace", {2, [](const auto& a) { return exit_laplace(a[0], a[1]); }}},
      {"hitting_prob", {1, [](const auto& a) { return hitting_prob(a[0]); }}},
      {"lt_level_laplace", {2, [](const auto& a) { return lt_level_laplace(a[0], a[1]); }}},
      {"sbm_local_time_laplace", {3, [](const auto& a) { return sbm_local_time_laplace(a[0], a[1], a[2]); }}},
      {"sbm_pair_laplace", {3, [](const auto& a) { return sbm_pair_laplace(a[0], a[1], a[2]); }}},
      {"y0_z0_laplace", {3, [](const auto& a) { return y0_z0_laplace(a[0], a[1], a[2]); }}},
      {"lt_sigma_laplace_from_x", {3, [](const auto& a) { return lt_sigma_laplace_from_x(a[0], a[1], a[2]); }}},
      {"excursion_sign_kernel", {3, [](const auto& a) { return excursion_sign_kernel(a[0], a[1], a[2]); }}},
      {"branching_mechanism", {1, [](const auto& a) { return branching_mechanism(a[0]); }}},
      {"h_mu", {3, [](const auto& a) { return h_mu(a[0], a[1], a[2]); }}},
  };
  return t;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int laws_eval(const std::string& name, const std::vector<double>& args) {
  const auto it = law_table().find(name);
  if (it == law_table().end()) {
    std::string names;
    for (const auto& [k, v] : law_table()) names += " " + k;
    throw UsageError("unknown law '" + name + "'; known:" + names);
  }
  if (args.size() != it->second.arity)
    throw UsageError(name + " takes " + std::to_string(it->second.arity) + " argument(s)");
  std::printf("%.17g\n", it->second.eval(args));
  return 0;
}

int series_dump(std::size_t order, const std::string& out) {
  const auto f = series::series_solve_F(order);
  const auto fp = series::series_solve_Fplus(order);
  std::ofstream file;
  if (!out.empty()) {
    file.open(out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + out);
  }
  std::ostream& os = out.empty() ? std::cout : file;
  os << "n,coef_F,coef_Fplus\n";
  for (std::size_t n = 0; n <= order; ++n) os << n << ',' << series::exact_string(f[n]) << ',' << series::exact_string(fp[n]) << '\n';
  return 0;
}

int series_check(const harness::RunConfig& base) {
  harness::RunConfig cfg = base;
  cfg.groups = {"exact"};
  std::vector<harness::ComparisonReport> reports;
  const int code = harness::run_suite(cfg, &reports);
  std::size_t failed = 0;
  for (const auto& r : reports) failed += r.pass ? 0 : 1;
  std::printf("%zu checks, %zu failed\n", reports.size(), failed);
  return code;
}

int mc_sample(const std::string& law, std::size_t n, std::uint64_t seed, const std::string& out, double param,
              const levy::PathConfig& pc, std::size_t edges) {
  std::ofstream file;
  if (!out.empty()) {
    file.open(out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + out);
  }
  std::ostream& os = out.empty() ? std::cout : file;
  const std::uint64_t stream = harness::stream_of("cli." + law);
  const std::string seed_info = std::to_string(seed) + ":" + std::to_string(stream);
  if (law == "snake") {
    os << "n_edges,zero_count,pos_count,neg_count,seed\n";
    const RngStream root(seed, stream);
    for (std::size_t i = 0; i < n; ++i) {
      RngStream rng = root.split(i);
      const auto s = snake::stats(snake::assign_labels(snake::sample_plane_tree(edges, rng), rng));
      snake::write_csv_row(os, s, seed_info);
    }
    return 0;
  }
  if (law == "csbp") {
    os << "t0,censored,seed\n";
    const RngStream root(seed, stream);
    for (std::size_t i = 0; i < n; ++i) {
      RngStream rng = root.split(i);
      levy::write_csv_row(os, levy::simulate_hitting_time(pc, rng), seed_info);
    }
    return 0;
  }
  std::function<double(RngStream&)> draw;
  if (law == "stable") draw = [](RngStream& r) { return samplers::sample_stable_two_thirds(r); };
  else if (law == "u-kernel") draw = [](RngStream& r) { return samplers::sample_U(r); };
  else if (law == "lt-sigma") draw = [param](RngStream& r) { return samplers::sample_lt_given_sigma(param, r); };
  else if (law == "lt-sigma-plus") draw = [param](RngStream& r) { return samplers::sample_lt_given_sigma_plus(param, r); };
  else throw UsageError("unknown sampler '" + law + "'");
  const auto batch = samplers::sample_batch(law, n, seed, stream, draw);
  os << "value,law,seed\n";
  for (double v : batch.values) os << harness::format_double(v) << ',' << batch.law_tag << ',' << batch.seed_info << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact laws, samplers and verification suite for Brownian snake local times"};
  app.require_subcommand(1);

  harness::RunConfig cfg;
  std::string config_file;
  std::vector<std::string> overrides;
  auto add_config_opts = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "flat key=value config file");
    sub->add_option("--set", overrides, "override a config key (key=value)");
  };

  auto* laws = app.add_subcommand("laws", "closed-form laws");
  auto* eval = laws->add_subcommand("eval", "evaluate one law");
  laws->require_subcommand(1);
  std::string law_name;
  std::vector<double> law_args;
  eval->add_option("name", law_name, "law name")->required();
  eval->add_option("args", law_args, "numeric arguments");

  auto* series_cmd = app.add_subcommand("series", "exact power series");
  series_cmd->require_subcommand(1);
  auto* check = series_cmd->add_subcommand("check", "run every exact identity");
  add_config_opts(check);
  check->add_option("--out", cfg.out_dir, "report directory");
  auto* dump = series_cmd->add_subcommand("dump", "print coefficients of F and F_+ as CSV");
  std::size_t order = series::kDefaultOrder;
  std::string dump_out;
  dump->add_option("--order", order, "truncation order")->check(CLI::Range(1, 400));
  dump->add_option("--out", dump_out, "output file (default stdout)");

  auto* mc = app.add_subcommand("mc", "draw samples as CSV");
  mc->require_subcommand(1);
  std::size_t n = 10000, edges = 5000;
  std::uint64_t seed = 42;
  double param = 1.0;
  std::string mc_out;
  levy::PathConfig pc;
  std::string mc_law;
  for (const char* name : {"stable", "u-kernel", "lt-sigma", "lt-sigma-plus", "snake", "csbp"}) {
    auto* sub = mc->add_subcommand(name, std::string("sample ") + name);
    sub->add_option("-n,--count", n, "number of draws");
    sub->add_option("--seed", seed, "seed");
    sub->add_option("--out", mc_out, "output file (default stdout)");
    if (std::string(name).starts_with("lt-sigma")) sub->add_option("--s", param, "conditioning duration");
    if (std::string(name) == "snake") sub->add_option("--edges", edges, "tree size");
    if (std::string(name) == "csbp") {
      sub->add_option("--dt", pc.dt, "time step");
      sub->add_option("--t-max", pc.t_max, "censoring horizon");
      sub->add_option("--guard", pc.adaptive_guard, "adaptive step guard (0: fixed dt)");
    }
    sub->callback([&mc_law, name] { mc_law = name; });
  }

  auto* run = app.add_subcommand("run", "run test groups and write reports");
  std::vector<std::string> groups;
  std::uint64_t run_seed = 0;
  std::string run_out;
  run->add_option("--group", groups, "exact | closed-form | mc-fast | mc-slow | all")->required();
  run->add_option("--seed", run_seed, "seed");
  run->add_option("--out", run_out, "report directory");
  add_config_opts(run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eval) return laws_eval(law_name, law_args);
    if (*dump) return series_dump(order, dump_out);
    if (*check || *run) {
      if (!config_file.empty()) cfg.load_file(config_file);
      for (const auto& o : overrides) cfg.set_assignment(o);
      cfg.apply_environment();
      if (*run) {
        cfg.groups = groups;
        if (run->count("--seed")) cfg.seed = run_seed;
        if (run->count("--out")) cfg.out_dir = run_out;
        harness::select_tests(cfg.groups);
        std::vector<harness::ComparisonReport> reports;
        const int code = harness::run_suite(cfg, &reports);
        for (const auto& r : reports)
          if (!r.pass) std::fprintf(stderr, "FAIL %s: theory %s estimate %s\n", r.test_id.c_str(), r.theory.c_str(), r.estimate.c_str());
        std::printf("%zu comparisons, exit %d, reports in %s\n", reports.size(), code, cfg.out_dir.c_str());
        return code;
      }
      return series_check(cfg);
    }
    if (*mc) return mc_sample(mc_law, n, seed, mc_out, param, pc, edges);
  } catch (const harness::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
