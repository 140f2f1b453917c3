#include "gsreg/experiment.hpp"

#include <atomic>
#include <cmath>
#include <ostream>
#include <sstream>
#include <thread>

#include "gsreg/libsvm.hpp"
#include "gsreg/metrics.hpp"

namespace gsreg {

namespace {

PhiFamily make_family(const std::string& name, double a) {
  if (name == "linear") return PhiFamily::linear();
  if (name == "scad") return PhiFamily::scad_like(a);
  if (name == "mcp") return PhiFamily::mcp_like(a);
  throw std::invalid_argument("unknown family: " + name);
}

std::string synthetic_probname(const SyntheticSpec& s) {
  std::ostringstream os;
  os << "syn-" << s.cov.name() << '-' << NoiseSpec::law_name(s.noise.law) << "-n" << s.n
     << "-p" << s.p << "-m" << s.m << "-r" << s.r_bar;
  return os.str();
}

std::string file_stem(const std::string& path) {
  const auto slash = path.find_last_of("/\\");
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = stem.find_last_of('.');
  if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return stem;
}

struct GridPoint {
  double gamma_bar;
  double noise_gs;  // < 0 when not swept / not applicable
  std::uint64_t seed;
  std::string solver;
};

}  // namespace

PmmConfig ExperimentConfig::make_pmm_config(InnerEngine engine) const {
  PmmConfig cfg = libsvm_path.empty() ? PmmConfig::synthetic_defaults(q)
                                      : PmmConfig::libsvm_defaults(q);
  cfg.phi = make_family(family, a);
  if (rho > 0.0) {
    cfg.rho = rho;
    cfg.rho_auto = false;
  }
  if (rho_auto) cfg.rho_auto = true;
  cfg.engine = engine;
  cfg.max_outer = max_outer;
  if (max_time_s > 0.0) cfg.max_time_s = max_time_s;
  return cfg;
}

std::vector<RunReport> run_experiment(const ExperimentConfig& config) {
  const bool synthetic = config.libsvm_path.empty();

  std::vector<double> lambda_grid =
      config.sweep_lambda.empty() ? std::vector<double>{config.gamma_bar}
                                  : config.sweep_lambda;
  std::vector<double> noise_grid = config.sweep_noise_gs;
  if (noise_grid.empty())
    noise_grid.push_back(synthetic ? config.synthetic.noise.group_sparsity : -1.0);

  std::vector<std::string> solvers;
  if (config.solver == "pmm" || config.solver == "both") solvers.push_back("pmm");
  if (config.solver == "padmm" || config.solver == "both") solvers.push_back("padmm");
  if (solvers.empty()) throw std::invalid_argument("unknown solver: " + config.solver);

  std::vector<GridPoint> grid;
  for (double gb : lambda_grid)
    for (double gs : noise_grid)
      for (std::uint64_t seed : config.seeds)
        for (const auto& solver : solvers) grid.push_back({gb, gs, seed, solver});

  // File problems are seed-independent; parse once up front.
  ProblemData file_data;
  if (!synthetic)
    file_data = load_libsvm_file(config.libsvm_path, config.m_override,
                                 config.group_sizes, config.q, config.mu);

  std::vector<RunReport> reports(grid.size());
  std::atomic<size_t> next{0};

  const auto worker = [&]() {
    for (;;) {
      const size_t idx = next.fetch_add(1);
      if (idx >= grid.size()) return;
      const GridPoint& pt = grid[idx];
      RunReport rep;
      rep.solver = pt.solver;
      rep.seed = pt.seed;
      rep.noise_group_sparsity = synthetic ? pt.noise_gs : -1.0;
      try {
        ProblemData data;
        if (synthetic) {
          SyntheticSpec spec = config.synthetic;
          if (pt.noise_gs >= 0.0) spec.noise.group_sparsity = pt.noise_gs;
          data = gen_synthetic(spec, config.q, config.mu, pt.seed);
          rep.probname = synthetic_probname(spec);
        } else {
          data = file_data;
          rep.probname = file_stem(config.libsvm_path);
        }
        PmmConfig cfg = config.make_pmm_config(
            pt.solver == "pmm" ? InnerEngine::DualSsn : InnerEngine::Padmm);
        const double base = lambda_base(data);
        cfg.lambda = pt.gamma_bar > 0.0 ? pt.gamma_bar * base : 0.0;
        cfg.lambda_tilde = config.init_lambda_multiplier > 0.0
                               ? config.init_lambda_multiplier * base
                               : 0.0;

        const PmmResult res = pmm_run(data, cfg);
        rep.lambda = res.lambda_used;
        rep.status = res.status;
        rep.nnz = metric_nnz(res.x);
        rep.ng = metric_ng(res.x, data.groups);
        rep.pobj = res.pobj;
        rep.time_s = res.solve_seconds;
        rep.iters = res.outer_iters;
        if (data.truth) {
          rep.true_ng = metric_ng(data.truth->x_star, data.groups);
          rep.l2err = metric_l2err(res.x, data.truth->x_star, &rep.l2err_absolute);
        } else {
          rep.l2err = res.x.norm();
          rep.l2err_absolute = true;
        }
        // Post-hoc KKT from the returned iterate with fresh weights.
        const RegularizerSpec reg =
            RegularizerSpec::from_lambda(cfg.phi, res.rho_used, res.lambda_used);
        const Vec w = mm_weights(reg.phi, reg.rho, res.x, data.groups);
        const Vec v = reg.lambda * (Vec::Ones(data.groups.m()) - w);
        rep.kkt = kkt_residual(data, v, res.x, res.z, res.xi, Vec::Zero(data.p()),
                               data.mu);
      } catch (const std::exception& e) {
        rep.status = std::string("error: ") + e.what();
      }
      reports[idx] = std::move(rep);
    }
  };

  const int n_threads =
      std::max(1, std::min<int>(config.threads, static_cast<int>(grid.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return reports;
}

void write_csv(const std::vector<RunReport>& reports, std::ostream& out) {
  out << "probname,solver,lambda,noise_group_sparsity,seed,L2err,nnz,ng,true_ng,pobj,"
         "kkt,time_s,iters,status\n";
  for (const auto& r : reports) {
    std::ostringstream row;
    row.precision(10);
    row << r.probname << ',' << r.solver << ',' << r.lambda << ',';
    if (r.noise_group_sparsity >= 0.0)
      row << r.noise_group_sparsity;
    else
      row << "na";
    row << ',' << r.seed << ',' << r.l2err << ',' << r.nnz << ',' << r.ng << ','
        << r.true_ng << ',' << r.pobj << ',' << r.kkt << ',' << r.time_s << ','
        << r.iters << ',' << r.status;
    if (r.l2err_absolute) row << ";l2err=abs";
    out << row.str() << '\n';
  }
}

}  // namespace gsreg
