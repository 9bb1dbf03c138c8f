#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ifista/budget.hpp"
#include "ifista/perturb.hpp"
#include "ifista/problem.hpp"
#include "ifista/schedule.hpp"

namespace ifista {

struct TraceRecord {
    int k = 0;
    double F = 0.0;
    double e_norm = 0.0;
    double budget = 0.0;
    double sigma = 0.0;
    double Lambda = 0.0;
    double L = 0.0;
    double t = 0.0;
    std::vector<double> phi;
    double wall_seconds = 0.0;  // in-memory only, never serialized
};

struct TraceMeta {
    std::string rule_desc;       // "constant L" | "backtrack L1 eta"
    std::string strategy_desc;   // perturb spec line
    std::string schedule_desc;   // "power c r" | "list v2 v3 ..."
    std::string sigma_desc;      // sigma | sigma_prime | sigma_tilde
    std::vector<std::string> phi_names;
    double s1 = 1.0;
    double mu = 0.0;
    double fill = 0.0;           // 0 for the Zero strategy
    std::uint64_t seed = 0;
    double tau = 0.0;
    double rho = 0.0;
    bool tau_empirical = false;
    double L1 = 0.0;
    double t2 = 1.0;
    double F_x1 = 0.0;
    Vector x1;
    Vector y2;
    int iters = 0;
    int surrogate_disagreements = -1;  // -1 when the diagnostic was off
    SSchedule s_schedule = PowerLawSchedule{1.0, 2.0};
};

struct Trace {
    TraceMeta meta;
    std::vector<TraceRecord> records;  // k = 2 .. K, strictly ordered
    Vector x_final;                    // in-memory only
};

struct RunConfig {
    Objective obj;
    StepSizeRule rule = ConstantStep{1.0};
    BudgetConfig budget;
    PerturbStrategy strategy = ZeroPerturb{};
    int iters = 100;  // K >= 2
    double t2 = 1.0;
    Vector x1;  // defaults to zeros
    Vector y2;  // defaults to x1
    std::uint64_t seed = 0;
    std::vector<AuxCost> report_phi;
    bool diagnostic_surrogate_check = false;
};

// The inexact FISTA loop: for k = 2..K obtain L_k, p = p_{L_k}(y_k),
// the budget, e_k, x_k = p + e_k, then the momentum and extrapolation
// updates. Deterministic given cfg.
Trace run(const RunConfig& cfg);

struct BoundValue {
    double value = 0.0;
    bool reference_outside_mu = false;  // ||x_ref|| > mu: budgets not certified for it
};

// Right-hand side of the convergence bound at index k (bounds F(x_{k+1}) - F_ref):
// 2*tau*((2/L1)*t2*(t2-1)*(F(x1)-F_ref) + ||t2*y2-(t2-1)*x1-x_ref||^2
//        + sum_{j=2}^{k+1} s_j) / (k+1)^2.
BoundValue theoretical_bound(const Trace& trace, int k, const Vector& x_ref, double F_ref);

struct Reference {
    Vector x;
    double F = 0.0;
};

// Best iterate of an exact (Zero-strategy) run, used as the reference
// minimizer for bound evaluation.
Reference reference_solution(const Objective& obj, int precision_iters = 100000);

// CSV with a '#'-prefixed metadata header; 17 significant digits, so two
// serializations of the same trace are byte-identical.
std::string serialize_trace(const Trace& trace);
Trace parse_trace(const std::string& text);

std::string format_g17(double v);

}  // namespace ifista
