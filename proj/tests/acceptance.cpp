// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
// Usage: acceptance <repo-root>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ifista/analysis.hpp"
#include "ifista/cli.hpp"
#include "ifista/instance.hpp"
#include "ifista/solver.hpp"
#include "ifista/verify.hpp"

using namespace ifista;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& what) {
    std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

bool prox_grid_equivalence() {
    std::mt19937_64 rng(101);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uy(-1.0, 1.0);
    std::uniform_real_distribution<double> ulam(0.2, 1.5);
    std::uniform_real_distribution<double> uL(1.0, 4.0);
    GridSpec gs;
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + trial % 3;
        int m = n + 1;
        Matrix A(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = 0.5 * normal(rng);
        Vector b(m);
        for (int i = 0; i < m; ++i) b[i] = 0.4 * normal(rng);
        std::string g_kind = trial % 5 == 4 ? "box" : (trial % 5 == 3 ? "zero" : "l1");
        ProblemInstance inst = build_instance(A, b, ulam(rng), g_kind, 0.0, 1.0);
        Vector y(n);
        for (int i = 0; i < n; ++i) y[i] = uy(rng);
        double L = std::max(uL(rng), *inst.obj.f.lipschitz_hint);
        Vector p = prox_point(inst.obj, y, L);
        Vector q = grid_prox_minimizer(inst, y, L, gs);
        if ((p - q).lpNorm<Eigen::Infinity>() > 2e-3) return false;
        if (q_upper(inst.obj, q, y, L) - q_upper(inst.obj, p, y, L) < -1e-5) return false;
        if (std::abs(q_upper(inst.obj, p, y, L) - q_upper(inst.obj, q, y, L)) > 1e-5)
            return false;
    }
    return true;
}

ProblemInstance random_l1_instance(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix A(8, 6);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 6; ++j) A(i, j) = normal(rng);
    Vector b(8);
    for (int i = 0; i < 8; ++i) b[i] = normal(rng);
    return build_instance(A, b, 0.7, "l1");
}

bool prox_subgradient_residuals() {
    ProblemInstance inst = random_l1_instance(7);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uy(-2.0, 2.0);
    std::uniform_real_distribution<double> uL(0.5, 25.0);
    for (int trial = 0; trial < 1000; ++trial) {
        Vector y(6);
        for (int i = 0; i < 6; ++i) y[i] = uy(rng);
        double L = uL(rng);
        Vector p = prox_point(inst.obj, y, L);
        Vector r = L * (y - p) - inst.obj.f.gradient(y);
        for (int i = 0; i < 6; ++i) {
            bool ok = p[i] != 0.0
                          ? std::abs(r[i] - inst.lambda * (p[i] > 0 ? 1.0 : -1.0)) <= 1e-8
                          : std::abs(r[i]) <= inst.lambda + 1e-8;
            if (!ok) return false;
        }
    }
    return true;
}

bool fb_inequality() {
    ProblemInstance inst = random_l1_instance(13);
    double hint = *inst.obj.f.lipschitz_hint;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> uScale(1.0, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
        Vector y(6), probe(6);
        for (int i = 0; i < 6; ++i) {
            y[i] = u(rng);
            probe[i] = u(rng);
        }
        double L = hint * uScale(rng);
        Vector p = prox_point(inst.obj, y, L);
        double lhs = objective_value(inst.obj, probe) - objective_value(inst.obj, p);
        double rhs = 0.5 * L * (p - y).squaredNorm() + L * (p - y).dot(y - probe);
        if (lhs - rhs < -1e-8) return false;
    }
    return true;
}

RunConfig benchmark_config(const ProblemInstance& inst, int iters) {
    RunConfig cfg;
    cfg.obj = inst.obj;
    cfg.rule = ConstantStep{*inst.obj.f.lipschitz_hint};
    cfg.budget.s1 = 1.0;
    cfg.budget.mu = estimate_mu(inst.obj);
    cfg.iters = iters;
    cfg.t2 = 1.0;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <repo-root>\n";
        return 2;
    }
    fs::path root = argv[1];

    report(1, prox_grid_equivalence(), "prox matches the brute-force grid minimizer");
    report(2, prox_subgradient_residuals(), "prox residual is a valid l1 subgradient");
    report(3, fb_inequality(), "forward-backward inequality on random probes");

    // The shared 50x100 benchmark instance (fixed seed) and its reference.
    ProblemInstance bench = generate_lsq(50, 100, 1, 0.1, 2.0);
    Reference ref = reference_solution(bench.obj, 100000);

    {
        RunConfig cfg = benchmark_config(bench, 2000);
        cfg.strategy = ZeroPerturb{};
        cfg.budget.s_schedule = PowerLawSchedule{0.0, 2.0};
        Trace trace = run(cfg);
        ComplianceResult comp = check_bound_compliance(trace, ref.x, ref.F);
        std::ostringstream what;
        what << "exact-run bound compliance (fraction " << comp.fraction
             << ", worst slack " << comp.worst_violation << ")";
        report(4, comp.fraction == 1.0 && !comp.reference_outside_mu, what.str());
    }

    Trace trace5;
    {
        RunConfig cfg = benchmark_config(bench, 2000);
        cfg.strategy = SaturatingPerturb{1.0, 7};
        cfg.budget.s_schedule = PowerLawSchedule{1.0, 2.0};
        trace5 = run(cfg);
        ComplianceResult comp = check_bound_compliance(trace5, ref.x, ref.F);
        std::ostringstream what;
        what << "perturbed bound compliance + budget audit (fraction " << comp.fraction
             << ")";
        report(5, comp.fraction == 1.0 && comp.budget_audit_ok, what.str());
    }

    {
        double hint = *bench.obj.f.lipschitz_hint;
        RunConfig cfg = benchmark_config(bench, 2000);
        cfg.rule = BacktrackingStep{hint / 8.0, 2.0};
        cfg.strategy = ZeroPerturb{};
        cfg.budget.s_schedule = PowerLawSchedule{0.0, 2.0};
        Trace trace = run(cfg);
        bool monotone = true, in_range = true;
        double prev = 0.0;
        for (const auto& rec : trace.records) {
            if (rec.L < prev) monotone = false;
            if (rec.L < hint / 8.0 || rec.L > 2.0 * hint * (1.0 + 1e-12)) in_range = false;
            prev = rec.L;
        }
        ComplianceResult comp = check_bound_compliance(trace, ref.x, ref.F);
        bool tau_ok = std::abs(trace.meta.tau - 2.0 * hint) <= 1e-12 * hint;
        std::ostringstream what;
        what << "backtracking parity (compliance " << comp.fraction << ", tau "
             << trace.meta.tau << ")";
        report(6, monotone && in_range && tau_ok && comp.fraction == 1.0, what.str());
    }

    {
        bool cap_ok = true;
        for (const auto& rec : trace5.records) {
            double k2 = static_cast<double>(rec.k) * rec.k;
            double s_k = schedule_value(trace5.meta.s_schedule, rec.k);
            if (rec.e_norm > s_k / (trace5.meta.s1 * k2) * (1.0 + 1e-9)) cap_ok = false;
        }
        ThetaAudit audit = theta_audit(trace5);
        report(7, cap_ok && audit.upper_ok && audit.lower_ok,
               "per-iteration error cap s_k/(s1 k^2) and theta audit");
    }

    {
        bool all_compliant = true;
        double bound_r0 = 0.0, bound_r2 = 0.0, gap_r2 = 0.0;
        for (double r : {0.0, 1.0, 2.0}) {
            for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
                RunConfig cfg = benchmark_config(bench, 5000);
                cfg.strategy = SaturatingPerturb{1.0, seed};
                cfg.budget.s_schedule = PowerLawSchedule{1.0, r};
                Trace trace = run(cfg);
                ComplianceResult comp = check_bound_compliance(trace, ref.x, ref.F);
                if (comp.fraction != 1.0 || !comp.budget_audit_ok) all_compliant = false;
                if (seed == 1) {
                    double b = theoretical_bound(trace, 4999, ref.x, ref.F).value;
                    if (r == 0.0) bound_r0 = b;
                    if (r == 2.0) {
                        bound_r2 = b;
                        gap_r2 = trace.records.back().F - ref.F;
                    }
                }
            }
        }
        bool ordering = bound_r2 * 10.0 <= bound_r0;
        bool terminal = gap_r2 <= bound_r2 + 1e-7 * (1.0 + std::abs(ref.F));
        std::ostringstream what;
        what << "regime ordering (bound r=2: " << bound_r2 << ", r=0: " << bound_r0 << ")";
        report(8, all_compliant && ordering && terminal, what.str());
    }

    {
        ProblemInstance tv = load_problem((root / "corpus/tv_deblur_100.txt").string());
        Reference tv_ref = reference_solution(tv.obj, 100000);
        RunConfig directed = benchmark_config(tv, 400);
        directed.strategy =
            DirectedPerturb{std::make_shared<AuxCost>(make_tv_cost()), 1.0};
        directed.budget.s_schedule = PowerLawSchedule{1.0, 2.0};
        directed.report_phi.push_back(make_tv_cost());
        Trace td = run(directed);
        RunConfig zero = directed;
        zero.strategy = ZeroPerturb{};
        Trace tz = run(zero);
        ComplianceResult comp = check_bound_compliance(td, tv_ref.x, tv_ref.F);
        bool has_phi = !td.records.back().phi.empty() && !tz.records.back().phi.empty();
        std::ostringstream what;
        what << "deblurring superiorization (phi_tv directed "
             << (has_phi ? td.records.back().phi[0] : -1.0) << ", zero "
             << (has_phi ? tz.records.back().phi[0] : -1.0) << ", compliance "
             << comp.fraction << ")";
        report(9, comp.fraction == 1.0 && comp.budget_audit_ok && has_phi, what.str());
    }

    {
        bool ok = true;
        double t = 1.0;
        for (int k = 1; k <= 10000; ++k) {
            double tn = momentum_next(t);
            double lhs = tn * (tn - 1.0);
            double rhs = t * t;
            if (std::abs(lhs - rhs) >
                4.0 * rhs * std::numeric_limits<double>::epsilon()) ok = false;
            if (tn < 0.5 * (k + 1)) ok = false;
            t = tn;
        }
        report(10, ok, "momentum identity to 4 ulps and growth over 10^4 steps");
    }

    {
        fs::path out_a = fs::temp_directory_path() / "ifista_acc_a";
        fs::path out_b = fs::temp_directory_path() / "ifista_acc_b";
        fs::remove_all(out_a);
        fs::remove_all(out_b);
        fs::path prev = fs::current_path();
        fs::current_path(root);  // spec files refer to corpus/ relatively
        int rc1 = cmd_solve((root / "specs/saturate.spec").string(), out_a.string(), true);
        int rc2 = cmd_solve((root / "specs/saturate.spec").string(), out_b.string(), true);
        fs::current_path(prev);
        auto slurp = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        std::string a = slurp(out_a / "saturate.trace.csv");
        std::string b = slurp(out_b / "saturate.trace.csv");
        report(11, rc1 == 0 && rc2 == 0 && !a.empty() && a == b,
               "two executions of the shipped spec are byte-identical");
    }

    return g_failures == 0 ? 0 : 1;
}
