#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "ifista/analysis.hpp"
#include "ifista/cli.hpp"
#include "ifista/instance.hpp"
#include "ifista/solver.hpp"

namespace py = pybind11;
using namespace ifista;

namespace {

py::dict trace_to_dict(const Trace& trace) {
    auto n = static_cast<py::ssize_t>(trace.records.size());
    py::array_t<double> k(n), F(n), e_norm(n), budget(n), sigma(n), Lambda(n), L(n), t(n);
    auto wk = k.mutable_unchecked<1>();
    auto wF = F.mutable_unchecked<1>();
    auto we = e_norm.mutable_unchecked<1>();
    auto wb = budget.mutable_unchecked<1>();
    auto ws = sigma.mutable_unchecked<1>();
    auto wl = Lambda.mutable_unchecked<1>();
    auto wL = L.mutable_unchecked<1>();
    auto wt = t.mutable_unchecked<1>();
    for (py::ssize_t i = 0; i < n; ++i) {
        const auto& rec = trace.records[static_cast<std::size_t>(i)];
        wk(i) = rec.k;
        wF(i) = rec.F;
        we(i) = rec.e_norm;
        wb(i) = rec.budget;
        ws(i) = rec.sigma;
        wl(i) = rec.Lambda;
        wL(i) = rec.L;
        wt(i) = rec.t;
    }
    py::dict d;
    d["k"] = k;
    d["F"] = F;
    d["e_norm"] = e_norm;
    d["budget"] = budget;
    d["sigma"] = sigma;
    d["Lambda"] = Lambda;
    d["L"] = L;
    d["t"] = t;
    d["x_final"] = trace.x_final;
    d["tau"] = trace.meta.tau;
    d["rho"] = trace.meta.rho;
    d["mu"] = trace.meta.mu;
    d["s1"] = trace.meta.s1;
    return d;
}

Trace run_instance(const ProblemInstance& inst, int iters, py::object L_opt, double s1,
                   double c, double r, const std::string& strategy, double fill,
                   std::uint64_t seed, const std::string& sigma_variant,
                   py::object mu_opt, double t2) {
    RunConfig cfg;
    cfg.obj = inst.obj;
    if (L_opt.is_none()) {
        if (!inst.obj.f.lipschitz_hint) {
            throw std::invalid_argument("no Lipschitz hint available; pass L");
        }
        cfg.rule = ConstantStep{*inst.obj.f.lipschitz_hint};
    } else {
        cfg.rule = ConstantStep{L_opt.cast<double>()};
    }
    cfg.budget.s1 = s1;
    cfg.budget.s_schedule = PowerLawSchedule{c, r};
    cfg.budget.mu = mu_opt.is_none() ? estimate_mu(inst.obj) : mu_opt.cast<double>();
    if (sigma_variant == "sigma") cfg.budget.sigma_variant = SigmaVariant::Sigma;
    else if (sigma_variant == "sigma_prime") cfg.budget.sigma_variant = SigmaVariant::SigmaPrime;
    else if (sigma_variant == "sigma_tilde") cfg.budget.sigma_variant = SigmaVariant::SigmaTilde;
    else throw std::invalid_argument("sigma_variant must be sigma|sigma_prime|sigma_tilde");
    if (strategy == "zero") cfg.strategy = ZeroPerturb{};
    else if (strategy == "random") cfg.strategy = RandomBallPerturb{seed, fill};
    else if (strategy == "saturate") cfg.strategy = SaturatingPerturb{fill, seed};
    else if (strategy == "tv") cfg.strategy = DirectedPerturb{std::make_shared<AuxCost>(make_tv_cost()), fill};
    else if (strategy == "sqnorm") cfg.strategy = DirectedPerturb{std::make_shared<AuxCost>(make_sqnorm_cost()), fill};
    else throw std::invalid_argument("unknown strategy '" + strategy + "'");
    cfg.iters = iters;
    cfg.seed = seed;
    cfg.t2 = t2;
    return run(cfg);
}

}  // namespace

PYBIND11_MODULE(_ifista, m) {
    m.doc() = "inexact accelerated proximal gradient with certified error budgets";

    py::class_<ProblemInstance>(m, "ProblemInstance")
        .def_property_readonly("n", [](const ProblemInstance& p) { return p.obj.dim; })
        .def_property_readonly("m", [](const ProblemInstance& p) { return static_cast<int>(p.A.rows()); })
        .def_readonly("A", &ProblemInstance::A)
        .def_readonly("b", &ProblemInstance::b)
        .def_readonly("lam", &ProblemInstance::lambda)
        .def_readonly("g_kind", &ProblemInstance::g_kind)
        .def("__repr__", [](const ProblemInstance& p) {
            return "<ProblemInstance " + std::to_string(p.A.rows()) + "x" +
                   std::to_string(p.obj.dim) + " g=" + p.g_kind + ">";
        });

    m.def("generate_lsq", &generate_lsq, py::arg("m"), py::arg("n"), py::arg("seed"),
          py::arg("density"), py::arg("lam"), py::arg("g_kind") = "l1");
    m.def("load_problem", &load_problem, py::arg("path"));
    m.def("save_problem", &save_problem, py::arg("instance"), py::arg("path"));
    m.def("build_instance", &build_instance, py::arg("A"), py::arg("b"), py::arg("lam"),
          py::arg("g_kind"), py::arg("box_lo") = 0.0, py::arg("box_hi") = 1.0);

    m.def("objective_value",
          [](const ProblemInstance& inst, const Vector& x) {
              return objective_value(inst.obj, x);
          },
          py::arg("instance"), py::arg("x"));
    m.def("prox_point",
          [](const ProblemInstance& inst, const Vector& y, double L) {
              return prox_point(inst.obj, y, L);
          },
          py::arg("instance"), py::arg("y"), py::arg("L"));
    m.def("soft_threshold", &soft_threshold, py::arg("v"), py::arg("alpha"));
    m.def("momentum_next", &momentum_next, py::arg("t"));
    m.def("lipschitz_hint",
          [](const ProblemInstance& inst) { return *inst.obj.f.lipschitz_hint; },
          py::arg("instance"));
    m.def("estimate_mu",
          [](const ProblemInstance& inst) { return estimate_mu(inst.obj); },
          py::arg("instance"));

    m.def("run",
          [](const ProblemInstance& inst, int iters, py::object L, double s1, double c,
             double r, const std::string& strategy, double fill, std::uint64_t seed,
             const std::string& sigma_variant, py::object mu, double t2) {
              return trace_to_dict(run_instance(inst, iters, L, s1, c, r, strategy, fill,
                                                seed, sigma_variant, mu, t2));
          },
          py::arg("instance"), py::arg("iters"), py::arg("L") = py::none(),
          py::arg("s1") = 1.0, py::arg("c") = 1.0, py::arg("r") = 2.0,
          py::arg("strategy") = "zero", py::arg("fill") = 0.0, py::arg("seed") = 0,
          py::arg("sigma_variant") = "sigma", py::arg("mu") = py::none(),
          py::arg("t2") = 1.0);

    m.def("reference",
          [](const ProblemInstance& inst, int iters) {
              Reference ref = reference_solution(inst.obj, iters);
              return py::make_tuple(ref.x, ref.F);
          },
          py::arg("instance"), py::arg("iters") = 100000);

    m.def("check_compliance",
          [](const ProblemInstance& inst, int iters, py::object L, double s1, double c,
             double r, const std::string& strategy, double fill, std::uint64_t seed,
             const std::string& sigma_variant, py::object mu, double t2, int ref_iters) {
              Trace trace = run_instance(inst, iters, L, s1, c, r, strategy, fill, seed,
                                         sigma_variant, mu, t2);
              Reference ref = reference_solution(inst.obj, ref_iters);
              ComplianceResult comp = check_bound_compliance(trace, ref.x, ref.F);
              py::dict d;
              d["fraction"] = comp.fraction;
              d["worst_violation"] = comp.worst_violation;
              d["budget_audit_ok"] = comp.budget_audit_ok;
              d["reference_outside_mu"] = comp.reference_outside_mu;
              return d;
          },
          py::arg("instance"), py::arg("iters"), py::arg("L") = py::none(),
          py::arg("s1") = 1.0, py::arg("c") = 1.0, py::arg("r") = 2.0,
          py::arg("strategy") = "zero", py::arg("fill") = 0.0, py::arg("seed") = 0,
          py::arg("sigma_variant") = "sigma", py::arg("mu") = py::none(),
          py::arg("t2") = 1.0, py::arg("ref_iters") = 100000);

    m.def("solve_spec", &cmd_solve, py::arg("spec_path"), py::arg("out_dir") = ".",
          py::arg("quiet") = true, py::arg("bound_csv") = false);
}
