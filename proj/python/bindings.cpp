#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gsreg/admm.hpp"
#include "gsreg/data_gen.hpp"
#include "gsreg/libsvm.hpp"
#include "gsreg/metrics.hpp"
#include "gsreg/pmm.hpp"

namespace py = pybind11;
using namespace gsreg;

namespace {

PhiFamily family_from_name(const std::string& name, double a) {
  if (name == "linear") return PhiFamily::linear();
  if (name == "scad") return PhiFamily::scad_like(a);
  if (name == "mcp") return PhiFamily::mcp_like(a);
  throw std::invalid_argument("unknown family: " + name);
}

}  // namespace

PYBIND11_MODULE(_gsreg, m) {
  m.doc() = "group zero-norm regularized robust regression solvers";

  py::class_<GroupStructure>(m, "GroupStructure")
      .def(py::init<std::vector<std::vector<int>>>())
      .def_static("contiguous", &GroupStructure::contiguous, py::arg("p"), py::arg("m"))
      .def_static("balanced", &GroupStructure::balanced, py::arg("p"), py::arg("m"))
      .def_static("from_sizes", &GroupStructure::from_sizes)
      .def_property_readonly("p", &GroupStructure::p)
      .def_property_readonly("m", &GroupStructure::m)
      .def("group", &GroupStructure::group, py::return_value_policy::copy)
      .def("groups", &GroupStructure::groups, py::return_value_policy::copy);

  py::class_<PhiFamily>(m, "PhiFamily")
      .def_static("linear", &PhiFamily::linear)
      .def_static("scad_like", &PhiFamily::scad_like, py::arg("a"))
      .def_static("mcp_like", &PhiFamily::mcp_like, py::arg("a"))
      .def_property_readonly("a", &PhiFamily::a)
      .def("phi", &PhiFamily::phi);

  m.def("psi_star", &psi_star, py::arg("phi"), py::arg("omega"));
  m.def("psi_star_prime", &psi_star_prime, py::arg("phi"), py::arg("omega"));
  m.def("varphi_rho", &varphi_rho, py::arg("phi"), py::arg("rho"), py::arg("t"));
  m.def("mm_weights", &mm_weights, py::arg("phi"), py::arg("rho"), py::arg("x"),
        py::arg("groups"));
  m.def("group_norms", &group_norms, py::arg("x"), py::arg("groups"));

  m.def("prox_loss", &prox_loss, py::arg("q"), py::arg("n"), py::arg("gamma"),
        py::arg("u"));
  m.def("prox_weighted_group", &prox_weighted_group, py::arg("v"), py::arg("groups"),
        py::arg("mu"), py::arg("gamma"), py::arg("z"));
  m.def("project_ball", &project_ball, py::arg("radius"), py::arg("y"));

  py::class_<Truth>(m, "Truth")
      .def_readonly("x_star", &Truth::x_star)
      .def_readonly("support", &Truth::support)
      .def_readonly("noise", &Truth::noise);

  py::class_<ProblemData>(m, "ProblemData")
      .def(py::init([](Mat A, Vec b, int q, GroupStructure groups, double mu) {
             ProblemData data;
             data.A = std::move(A);
             data.b = std::move(b);
             data.q = q;
             data.groups = std::move(groups);
             data.mu = mu;
             data.validate();
             return data;
           }),
           py::arg("A"), py::arg("b"), py::arg("q"), py::arg("groups"),
           py::arg("mu") = 1e-8)
      .def_readonly("A", &ProblemData::A)
      .def_readonly("b", &ProblemData::b)
      .def_readonly("q", &ProblemData::q)
      .def_readonly("mu", &ProblemData::mu)
      .def_readonly("groups", &ProblemData::groups)
      .def_readonly("truth", &ProblemData::truth)
      .def_property_readonly("n", &ProblemData::n)
      .def_property_readonly("p", &ProblemData::p);

  m.def("eval_loss", &eval_loss, py::arg("z"), py::arg("q"));
  m.def(
      "eval_surrogate_objective",
      [](const Vec& x, const ProblemData& data, const std::string& family, double a,
         double rho, double nu) {
        return eval_surrogate_objective(
            x, data, RegularizerSpec::from_nu(family_from_name(family, a), rho, nu));
      },
      py::arg("x"), py::arg("data"), py::arg("family"), py::arg("a"), py::arg("rho"),
      py::arg("nu"));
  m.def("eval_true_objective", &eval_true_objective, py::arg("x"), py::arg("data"),
        py::arg("nu"));

  py::class_<SyntheticSpec>(m, "SyntheticSpec")
      .def(py::init([](int n, int p, int m_groups, int r_bar, const std::string& cov,
                       const std::string& noise, double noise_gs, int noise_groups) {
             SyntheticSpec s;
             s.n = n;
             s.p = p;
             s.m = m_groups;
             s.r_bar = r_bar;
             s.cov = CovarianceSpec::parse(cov);
             s.noise.law = NoiseSpec::parse_law(noise);
             s.noise.group_sparsity = noise_gs;
             s.noise.noise_groups = noise_groups;
             return s;
           }),
           py::arg("n") = 100, py::arg("p") = 500, py::arg("m") = 50,
           py::arg("r_bar") = 5, py::arg("cov") = "ar05",
           py::arg("noise") = "normal100", py::arg("noise_gs") = 0.9,
           py::arg("noise_groups") = 50);

  m.def("gen_synthetic", &gen_synthetic, py::arg("spec"), py::arg("q") = 1,
        py::arg("mu") = 1e-8, py::arg("seed") = 1);
  m.def("load_libsvm", &load_libsvm_file, py::arg("path"), py::arg("m") = 0,
        py::arg("group_sizes") = std::vector<int>{}, py::arg("q") = 1,
        py::arg("mu") = 1e-8);

  m.def("metric_nnz", &metric_nnz);
  m.def("metric_ng", &metric_ng);
  m.def(
      "metric_l2err",
      [](const Vec& x_out, const Vec& x_star) { return metric_l2err(x_out, x_star); },
      py::arg("x_out"), py::arg("x_star"));

  py::class_<PmmIterRecord>(m, "PmmIterRecord")
      .def_readonly("potential", &PmmIterRecord::potential)
      .def_readonly("step_q_norm", &PmmIterRecord::step_q_norm)
      .def_readonly("kkt", &PmmIterRecord::kkt)
      .def_readonly("weights", &PmmIterRecord::weights)
      .def_readonly("inner_total_iters", &PmmIterRecord::inner_total_iters)
      .def_readonly("delta_norm", &PmmIterRecord::delta_norm)
      .def_readonly("delta_bound", &PmmIterRecord::delta_bound);

  py::class_<PmmResult>(m, "PmmResult")
      .def_readonly("x", &PmmResult::x)
      .def_readonly("z", &PmmResult::z)
      .def_readonly("xi", &PmmResult::xi)
      .def_readonly("x0", &PmmResult::x0)
      .def_readonly("outer_iters", &PmmResult::outer_iters)
      .def_readonly("converged", &PmmResult::converged)
      .def_readonly("status", &PmmResult::status)
      .def_readonly("kkt", &PmmResult::kkt)
      .def_readonly("pobj", &PmmResult::pobj)
      .def_readonly("solve_seconds", &PmmResult::solve_seconds)
      .def_readonly("init_seconds", &PmmResult::init_seconds)
      .def_readonly("lambda_used", &PmmResult::lambda_used)
      .def_readonly("rho_used", &PmmResult::rho_used)
      .def_property_readonly("trace", [](const PmmResult& r) { return r.trace.iters; });

  m.def(
      "pmm_solve",
      [](const ProblemData& data, const std::string& family, double a, double rho,
         bool rho_auto, double lambda, double lambda_tilde, const std::string& engine,
         double eps_pmm, double eps_sncg, int max_outer, double max_time_s) {
        PmmConfig cfg = PmmConfig::synthetic_defaults(data.q);
        cfg.phi = family_from_name(family, a);
        cfg.rho = rho;
        cfg.rho_auto = rho_auto;
        cfg.lambda = lambda;
        cfg.lambda_tilde = lambda_tilde;
        if (engine == "padmm")
          cfg.engine = InnerEngine::Padmm;
        else if (engine != "pmm" && engine != "dual_ssn")
          throw std::invalid_argument("unknown engine: " + engine);
        if (eps_pmm > 0) cfg.eps_pmm = eps_pmm;
        if (eps_sncg > 0) cfg.eps_sncg = eps_sncg;
        cfg.max_outer = max_outer;
        if (max_time_s > 0) cfg.max_time_s = max_time_s;
        return pmm_run(data, cfg);
      },
      py::arg("data"), py::arg("family") = "scad", py::arg("a") = 4.0,
      py::arg("rho") = 2.0, py::arg("rho_auto") = false, py::arg("lambda") = 0.0,
      py::arg("lambda_tilde") = 0.0, py::arg("engine") = "pmm",
      py::arg("eps_pmm") = 0.0, py::arg("eps_sncg") = 0.0, py::arg("max_outer") = 500,
      py::arg("max_time_s") = 0.0,
      "Run the proximal MM solver; engine='padmm' swaps in the ADMM baseline.");

  m.def("lambda_base", &lambda_base, py::arg("data"),
        "max(1e-6, 0.05 * ||A^T b||_inf), the base level of the lambda rule");

  py::class_<AdmmResult>(m, "AdmmResult")
      .def_readonly("x", &AdmmResult::x)
      .def_readonly("z", &AdmmResult::z)
      .def_readonly("xi", &AdmmResult::xi)
      .def_readonly("iters", &AdmmResult::iters)
      .def_readonly("converged", &AdmmResult::converged)
      .def_readonly("kkt", &AdmmResult::kkt);

  m.def(
      "admm_solve",
      [](const ProblemData& data, const Vec& v, double sigma, double tau, double eps,
         int max_iter) {
        AdmmConfig cfg;
        cfg.sigma = sigma;
        cfg.tau = tau;
        cfg.eps = eps;
        cfg.max_iter = max_iter;
        return admm_run(data, v, data.mu, cfg, Vec::Zero(data.p()), -data.b,
                        Vec::Zero(data.n()));
      },
      py::arg("data"), py::arg("v"), py::arg("sigma") = 1.0, py::arg("tau") = 1.618,
      py::arg("eps") = 1e-5, py::arg("max_iter") = 10000,
      "Run pADMM on the weighted problem with fixed group weights v.");
}
