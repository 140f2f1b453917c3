// Benchmark CLI: configures a problem, runs the PMM and pADMM solvers over
// parameter grids, and writes one CSV row per (solver, grid point, seed).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gsreg/experiment.hpp"

namespace {

std::vector<double> parse_double_list(const std::string& text) {
  // Either "v1,v2,..." or "log:<lo>:<hi>:<count>" (log-spaced inclusive grid).
  std::vector<double> out;
  if (text.rfind("log:", 0) == 0) {
    double lo = 0, hi = 0;
    int count = 0;
    if (std::sscanf(text.c_str(), "log:%lf:%lf:%d", &lo, &hi, &count) != 3 ||
        count < 2 || lo <= 0 || hi <= lo)
      throw CLI::ValidationError("bad log grid: " + text);
    for (int i = 0; i < count; ++i)
      out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
    return out;
  }
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stoull(tok));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

// Flat KEY = value config file; '#' starts a comment. Keys match the long CLI
// flags with dashes, e.g. "sweep-noise-gs = 0,0.25,0.5".
std::vector<std::string> config_file_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open config file " + path);
  std::vector<std::string> args;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group zero-norm regularized robust regression benchmark"};

  gsreg::ExperimentConfig config;
  std::string problem = "synthetic";
  std::string cov = "ar05";
  std::string noise = "normal100";
  std::string sweep_lambda_text, sweep_noise_text, seeds_text = "1",
              group_sizes_text, config_path;

  app.add_option("--config", config_path, "flat key=value config file");
  app.add_option("--problem", problem, "'synthetic' or a LIBSVM file path");
  app.add_option("--q", config.q, "loss order, 1 or 2")->check(CLI::IsMember({1, 2}));
  app.add_option("--family", config.family, "penalty family: linear|scad|mcp");
  app.add_option("--a", config.a, "family shape parameter");
  app.add_option("--rho", config.rho,
                 "surrogate parameter rho (>= 1); 0 keeps the per-source default");
  app.add_flag("--rho-auto", config.rho_auto, "rho = max(1, 6/||x0||_inf)");
  app.add_option("--mu", config.mu, "ridge weight");
  app.add_option("--gamma-bar", config.gamma_bar,
                 "lambda = gamma-bar * max(1e-6, 0.05 max|A^T b|)");
  app.add_option("--init-lambda-mult", config.init_lambda_multiplier,
                 "init-problem penalty multiplier");
  app.add_option("--sweep-lambda", sweep_lambda_text,
                 "gamma-bar grid: 'v1,v2,...' or 'log:lo:hi:count'");
  app.add_option("--sweep-noise-gs", sweep_noise_text,
                 "noise group sparsity grid 'v1,v2,...'");
  app.add_option("--seeds", seeds_text, "comma-separated seed list");
  app.add_option("--solver", config.solver, "pmm | padmm | both")
      ->check(CLI::IsMember({"pmm", "padmm", "both"}));
  app.add_option("--out", config.out_path, "CSV output path");
  app.add_option("--max-time-s", config.max_time_s, "per-solve wall clock cap");
  app.add_option("--max-outer", config.max_outer, "outer iteration cap");
  app.add_option("--threads", config.threads, "worker pool size");

  auto* m_opt =
      app.add_option("--m", config.synthetic.m, "group count (synthetic or file)");
  app.add_option("--n", config.synthetic.n, "synthetic: rows");
  app.add_option("--p", config.synthetic.p, "synthetic: features");
  app.add_option("--r-bar", config.synthetic.r_bar, "synthetic: true active groups");
  app.add_option("--cov", cov, "synthetic covariance: identity|ar05|ar08|cs06|cs08");
  app.add_option("--noise", noise, "synthetic noise: normal100|t4|cauchy|mixed|laplace");
  app.add_option("--noise-gs", config.synthetic.noise.group_sparsity,
                 "noise group sparsity in [0,1]");
  app.add_option("--noise-groups", config.synthetic.noise.noise_groups,
                 "noise vector group count");
  app.add_option("--group-sizes", group_sizes_text,
                 "explicit group sizes for file problems");

  // Config file values are parsed first, CLI flags override them.
  std::vector<std::string> raw_args(argv + 1, argv + argc);
  for (size_t i = 0; i < raw_args.size(); ++i) {
    if (raw_args[i] == "--config" && i + 1 < raw_args.size()) {
      try {
        auto file_args = config_file_args(raw_args[i + 1]);
        raw_args.insert(raw_args.begin(), file_args.begin(), file_args.end());
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
      }
      break;
    }
  }
  std::vector<const char*> argv2;
  argv2.push_back(argv[0]);
  for (const auto& s : raw_args) argv2.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv2.size()), argv2.data());
    config.synthetic.cov = gsreg::CovarianceSpec::parse(cov);
    config.synthetic.noise.law = gsreg::NoiseSpec::parse_law(noise);
    if (problem != "synthetic") config.libsvm_path = problem;
    config.m_override = m_opt->count() > 0 ? config.synthetic.m : 0;
    if (!sweep_lambda_text.empty()) config.sweep_lambda = parse_double_list(sweep_lambda_text);
    if (!sweep_noise_text.empty()) config.sweep_noise_gs = parse_double_list(sweep_noise_text);
    if (!group_sizes_text.empty()) config.group_sizes = parse_int_list(group_sizes_text);
    config.seeds = parse_seed_list(seeds_text);
    if (config.seeds.empty()) throw CLI::ValidationError("empty seed list");
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  if (!config.libsvm_path.empty() && !std::ifstream(config.libsvm_path)) {
    std::cerr << "config error: cannot open " << config.libsvm_path << "\n";
    return 1;
  }

  try {
    const auto reports = gsreg::run_experiment(config);
    if (!config.out_path.empty()) {
      std::ofstream out(config.out_path);
      if (!out) {
        std::cerr << "cannot open output file " << config.out_path << "\n";
        return 1;
      }
      gsreg::write_csv(reports, out);
    }
    gsreg::write_csv(reports, std::cout);
    for (const auto& r : reports)
      if (r.status.rfind("error", 0) == 0) return 2;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
