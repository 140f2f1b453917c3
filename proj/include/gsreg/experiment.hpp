#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gsreg/data_gen.hpp"
#include "gsreg/pmm.hpp"

namespace gsreg {

struct RunReport {
  std::string probname;
  std::string solver;  // "pmm" or "padmm"
  double lambda = 0.0;
  double noise_group_sparsity = -1.0;  // -1 when not applicable (file problems)
  std::uint64_t seed = 0;
  double l2err = 0.0;
  bool l2err_absolute = false;  // set when the truth is zero or absent
  int nnz = 0;
  int ng = 0;
  int true_ng = -1;
  double pobj = 0.0;
  double kkt = 0.0;
  double time_s = 0.0;
  int iters = 0;
  std::string status;
};

struct ExperimentConfig {
  // Problem source: synthetic unless a LIBSVM path is given.
  std::string libsvm_path;
  SyntheticSpec synthetic;
  int m_override = 0;                 // group count for file problems
  std::vector<int> group_sizes;       // explicit group sizes for file problems

  int q = 1;
  double mu = 1e-8;
  std::string family = "scad";        // linear | scad | mcp
  double a = 4.0;
  double rho = 0.0;                   // 0 keeps the per-source default
  bool rho_auto = false;
  double gamma_bar = 0.0;              // lambda = gamma_bar * lambda_base; 0 = per-q default
  double init_lambda_multiplier = 0.0;  // init penalty multiplier; 0 = half of gamma_bar

  std::vector<double> sweep_lambda;    // gamma_bar grid; empty = single point
  std::vector<double> sweep_noise_gs;  // noise group sparsity grid
  std::vector<std::uint64_t> seeds{1};

  std::string solver = "pmm";  // pmm | padmm | both
  double max_time_s = 0.0;     // per solve; 0 = unlimited
  int max_outer = 500;
  int threads = 1;
  std::string out_path;        // CSV destination; empty = stdout only

  PmmConfig make_pmm_config(InnerEngine engine) const;
};

// Cartesian grid (lambda sweep x noise sweep x seeds x solvers), executed on a
// bounded worker pool and reported in grid order.
std::vector<RunReport> run_experiment(const ExperimentConfig& config);

void write_csv(const std::vector<RunReport>& reports, std::ostream& out);

}  // namespace gsreg
