#include "ifista/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ifista {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string describe_strategy(const PerturbStrategy& s) {
    if (std::holds_alternative<ZeroPerturb>(s)) return "zero";
    if (const auto* rb = std::get_if<RandomBallPerturb>(&s)) {
        return "random " + std::to_string(rb->seed) + " " + format_g17(rb->fill);
    }
    if (const auto* sat = std::get_if<SaturatingPerturb>(&s)) {
        return "saturate " + format_g17(sat->fill) + " " + std::to_string(sat->direction_seed);
    }
    const auto& d = std::get<DirectedPerturb>(s);
    return "directed " + d.phi->name + " " + format_g17(d.fill);
}

double strategy_fill(const PerturbStrategy& s) {
    if (const auto* rb = std::get_if<RandomBallPerturb>(&s)) return rb->fill;
    if (const auto* sat = std::get_if<SaturatingPerturb>(&s)) return sat->fill;
    if (const auto* d = std::get_if<DirectedPerturb>(&s)) return d->fill;
    return 0.0;
}

std::string describe_rule(const StepSizeRule& r) {
    if (const auto* c = std::get_if<ConstantStep>(&r)) {
        return "constant " + format_g17(c->L);
    }
    const auto& bt = std::get<BacktrackingStep>(r);
    return "backtrack " + format_g17(bt.L1) + " " + format_g17(bt.eta);
}

std::string sigma_name(SigmaVariant v) {
    switch (v) {
        case SigmaVariant::Sigma: return "sigma";
        case SigmaVariant::SigmaPrime: return "sigma_prime";
        case SigmaVariant::SigmaTilde: return "sigma_tilde";
    }
    return "sigma";
}

}  // namespace

Trace run(const RunConfig& cfg) {
    if (cfg.iters < 2) throw std::invalid_argument("run: iters must be >= 2");
    if (cfg.t2 < 1.0) throw std::invalid_argument("run: t2 must be >= 1");
    const Objective& obj = cfg.obj;
    const int n = obj.dim;

    Vector x1 = cfg.x1.size() ? cfg.x1 : Vector::Zero(n);
    Vector y = cfg.y2.size() ? cfg.y2 : x1;
    if (x1.size() != n || y.size() != n) {
        throw std::invalid_argument("run: x1/y2 dimension mismatch");
    }

    const bool constant = std::holds_alternative<ConstantStep>(cfg.rule);
    if (constant && obj.f.lipschitz_hint &&
        std::get<ConstantStep>(cfg.rule).L < *obj.f.lipschitz_hint * (1.0 - 1e-12)) {
        throw std::invalid_argument("run: constant L below lipschitz_hint");
    }
    TauRho tr = tau_rho_bounds(cfg.rule, obj.f.lipschitz_hint);

    Trace trace;
    trace.meta.rule_desc = describe_rule(cfg.rule);
    trace.meta.strategy_desc = describe_strategy(cfg.strategy);
    trace.meta.schedule_desc = schedule_to_string(cfg.budget.s_schedule);
    trace.meta.sigma_desc = sigma_name(cfg.budget.sigma_variant);
    trace.meta.s1 = cfg.budget.s1;
    trace.meta.mu = cfg.budget.mu;
    trace.meta.fill = strategy_fill(cfg.strategy);
    trace.meta.seed = cfg.seed;
    trace.meta.rho = tr.rho;
    trace.meta.tau = tr.tau;
    trace.meta.tau_empirical = tr.empirical;
    trace.meta.L1 = constant ? std::get<ConstantStep>(cfg.rule).L
                             : std::get<BacktrackingStep>(cfg.rule).L1;
    trace.meta.t2 = cfg.t2;
    trace.meta.x1 = x1;
    trace.meta.y2 = y;
    trace.meta.F_x1 = objective_value(obj, x1);
    trace.meta.iters = cfg.iters;
    trace.meta.s_schedule = cfg.budget.s_schedule;
    trace.meta.surrogate_disagreements = cfg.diagnostic_surrogate_check ? 0 : -1;
    for (const auto& phi : cfg.report_phi) trace.meta.phi_names.push_back(phi.name);
    trace.records.reserve(static_cast<std::size_t>(cfg.iters - 1));

    double t = cfg.t2;
    double L = trace.meta.L1;
    Vector x_km1 = x1;
    double p_prev_norm = x1.norm();     // convention p_{L_1}(y_1) := x_1
    double nu_prev = x1.norm();
    double max_L = L;

    for (int k = 2; k <= cfg.iters; ++k) {
        auto t_start = std::chrono::steady_clock::now();
        Vector p;
        if (constant) {
            p = prox_point(obj, y, L);
        } else {
            auto bt = backtracking_search(obj, y, L, std::get<BacktrackingStep>(cfg.rule).eta);
            L = bt.L;
            p = std::move(bt.p);
            max_L = std::max(max_L, L);
        }

        // Lambda is certified on B[p, 3*s1] which contains B[x_k, 2*s1]
        // because ||e_k|| <= s1; this only enlarges Lambda and so only
        // shrinks the budget.
        auto [bounded, Lam] = lambda_k(obj, p, cfg.budget.s1, 3.0);

        SigmaGeometry geom;
        double nu_cur = 0.0;
        switch (cfg.budget.sigma_variant) {
            case SigmaVariant::Sigma:
                geom.p_norm = p.norm();
                geom.p_prev_norm = p_prev_norm;
                break;
            case SigmaVariant::SigmaPrime:
                // x_k is not known before e_k; ||x_k - ((t-1)/t) x_{k-1}||
                // <= ||p - ((t-1)/t) x_{k-1}|| + s1, and inflating sigma'
                // keeps the budget certified.
                geom.drift_norm =
                    (p - ((t - 1.0) / t) * x_km1).norm() + cfg.budget.s1;
                break;
            case SigmaVariant::SigmaTilde:
                nu_cur = nu_k(obj, y, L);
                geom.nu = nu_cur;
                geom.nu_prev = nu_prev;
                break;
        }
        double sig = sigma(cfg.budget.sigma_variant, t, L, Lam, cfg.budget.s1,
                           cfg.budget.mu, geom);
        double budget = admissible_budget(cfg.budget, k, sig, bounded);

        Vector e = make_perturbation(cfg.strategy, p, budget, k);
        double e_norm = e.norm();
        if (e_norm > budget * (1.0 + 1e-12)) {
            throw std::logic_error("run: perturbation exceeded budget at k=" + std::to_string(k));
        }
        Vector x = p + e;
        double F = objective_value(obj, x);
        if (!std::isfinite(F)) {
            if (e_norm == 0.0) {
                throw std::runtime_error("run: non-finite F with e=0 at k=" +
                                         std::to_string(k) + " (model bug)");
            }
            throw std::runtime_error("run: non-finite F at k=" + std::to_string(k));
        }

        if (cfg.diagnostic_surrogate_check) {
            bool exact_ok = objective_value(obj, p) <= q_upper(obj, p, y, L);
            bool surrogate_ok = F <= q_upper(obj, x, y, L);
            if (exact_ok != surrogate_ok) ++trace.meta.surrogate_disagreements;
        }

        double t_next = momentum_next(t);
        Vector y_next = extrapolate(x, x_km1, t, t_next);

        TraceRecord rec;
        rec.k = k;
        rec.F = F;
        rec.e_norm = e_norm;
        rec.budget = budget;
        rec.sigma = sig;
        rec.Lambda = Lam;
        rec.L = L;
        rec.t = t;
        for (const auto& phi : cfg.report_phi) rec.phi.push_back(phi.value(x));
        rec.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        trace.records.push_back(std::move(rec));

        x_km1 = std::move(x);
        y = std::move(y_next);
        t = t_next;
        p_prev_norm = p.norm();
        nu_prev = nu_cur;
    }

    if (trace.meta.tau_empirical) trace.meta.tau = max_L;
    trace.x_final = std::move(x_km1);
    return trace;
}

BoundValue theoretical_bound(const Trace& trace, int k, const Vector& x_ref, double F_ref) {
    if (k < 1) throw std::invalid_argument("theoretical_bound: k < 1");
    const TraceMeta& m = trace.meta;
    double sum_s = 0.0;
    for (int j = 2; j <= k + 1; ++j) sum_s += schedule_value(m.s_schedule, j);
    double head = (2.0 / m.L1) * m.t2 * (m.t2 - 1.0) * (m.F_x1 - F_ref);
    double shift = (m.t2 * m.y2 - (m.t2 - 1.0) * m.x1 - x_ref).squaredNorm();
    double kk = static_cast<double>(k + 1);
    BoundValue out;
    out.value = 2.0 * m.tau * (head + shift + sum_s) / (kk * kk);
    out.reference_outside_mu = m.mu > 0.0 && x_ref.norm() > m.mu;
    return out;
}

Reference reference_solution(const Objective& obj, int precision_iters) {
    RunConfig cfg;
    cfg.obj = obj;
    if (obj.f.lipschitz_hint && *obj.f.lipschitz_hint > 0.0) {
        cfg.rule = ConstantStep{*obj.f.lipschitz_hint};
    } else {
        cfg.rule = BacktrackingStep{1.0, 2.0};
    }
    cfg.strategy = ZeroPerturb{};
    cfg.iters = std::max(2, precision_iters);
    cfg.budget.s1 = 1.0;
    cfg.budget.mu = 0.0;
    cfg.budget.s_schedule = PowerLawSchedule{0.0, 2.0};
    Trace trace = run(cfg);

    Reference ref;
    ref.x = trace.meta.x1;
    ref.F = trace.meta.F_x1;
    // Trace has no iterates, only values; rerun-free best value tracking
    // would need them, so take the final iterate vs x1 and the best F seen.
    double best_F = ref.F;
    for (const auto& rec : trace.records) best_F = std::min(best_F, rec.F);
    double F_final = objective_value(obj, trace.x_final);
    if (F_final <= best_F * (1.0 + 1e-15) || F_final <= best_F + 1e-300) {
        ref.x = trace.x_final;
        ref.F = F_final;
    } else {
        // The final iterate is not the best one (FISTA is non-monotone);
        // polish from it with plain prox steps which are monotone.
        Vector z = trace.x_final;
        double Lz = obj.f.lipschitz_hint ? *obj.f.lipschitz_hint : 1.0;
        double Fz = F_final;
        for (int i = 0; i < 1000 && Fz > best_F; ++i) {
            z = prox_point(obj, z, Lz);
            Fz = objective_value(obj, z);
        }
        ref.x = z;
        ref.F = Fz;
    }
    if (!std::isfinite(ref.F)) throw std::runtime_error("reference_solution: diverged");
    return ref;
}

std::string serialize_trace(const Trace& trace) {
    const TraceMeta& m = trace.meta;
    std::ostringstream out;
    out << "# ifista-trace 1\n";
    out << "# rule " << m.rule_desc << "\n";
    out << "# perturb " << m.strategy_desc << "\n";
    out << "# s " << m.schedule_desc << "\n";
    out << "# sigma " << m.sigma_desc << "\n";
    out << "# s1 " << format_g17(m.s1) << "\n";
    out << "# mu " << format_g17(m.mu) << "\n";
    out << "# fill " << format_g17(m.fill) << "\n";
    out << "# seed " << m.seed << "\n";
    out << "# iters " << m.iters << "\n";
    out << "# t2 " << format_g17(m.t2) << "\n";
    out << "# L1 " << format_g17(m.L1) << "\n";
    out << "# tau " << format_g17(m.tau) << "\n";
    out << "# rho " << format_g17(m.rho) << "\n";
    out << "# tau_empirical " << (m.tau_empirical ? 1 : 0) << "\n";
    out << "# F_x1 " << format_g17(m.F_x1) << "\n";
    out << "# surrogate_disagreements " << m.surrogate_disagreements << "\n";
    out << "# x1";
    for (Eigen::Index i = 0; i < m.x1.size(); ++i) out << " " << format_g17(m.x1[i]);
    out << "\n# y2";
    for (Eigen::Index i = 0; i < m.y2.size(); ++i) out << " " << format_g17(m.y2[i]);
    out << "\n# columns k,F,e_norm,budget,sigma,Lambda,L,t";
    for (const auto& name : m.phi_names) out << ",phi_" << name;
    out << "\n";
    for (const auto& r : trace.records) {
        out << r.k << "," << format_g17(r.F) << "," << format_g17(r.e_norm) << ","
            << format_g17(r.budget) << "," << format_g17(r.sigma) << ","
            << format_g17(r.Lambda) << "," << format_g17(r.L) << "," << format_g17(r.t);
        for (double v : r.phi) out << "," << format_g17(v);
        out << "\n";
    }
    return out.str();
}

namespace {

Vector parse_vector(std::istringstream& in) {
    std::vector<double> vals;
    double v;
    while (in >> v) vals.push_back(v);
    Vector out(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) out[static_cast<Eigen::Index>(i)] = vals[i];
    return out;
}

}  // namespace

Trace parse_trace(const std::string& text) {
    Trace trace;
    TraceMeta& m = trace.meta;
    std::istringstream in(text);
    std::string line;
    bool have_schedule = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string key;
            ls >> key;
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
            if (key == "ifista-trace") continue;
            if (key == "rule") m.rule_desc = rest;
            else if (key == "perturb") m.strategy_desc = rest;
            else if (key == "s") {
                m.schedule_desc = rest;
                m.s_schedule = parse_schedule(rest);
                have_schedule = true;
            } else if (key == "sigma") m.sigma_desc = rest;
            else if (key == "s1") m.s1 = std::stod(rest);
            else if (key == "mu") m.mu = std::stod(rest);
            else if (key == "fill") m.fill = std::stod(rest);
            else if (key == "seed") m.seed = std::stoull(rest);
            else if (key == "iters") m.iters = std::stoi(rest);
            else if (key == "t2") m.t2 = std::stod(rest);
            else if (key == "L1") m.L1 = std::stod(rest);
            else if (key == "tau") m.tau = std::stod(rest);
            else if (key == "rho") m.rho = std::stod(rest);
            else if (key == "tau_empirical") m.tau_empirical = std::stoi(rest) != 0;
            else if (key == "F_x1") m.F_x1 = std::stod(rest);
            else if (key == "surrogate_disagreements") m.surrogate_disagreements = std::stoi(rest);
            else if (key == "x1") { std::istringstream vs(rest); m.x1 = parse_vector(vs); }
            else if (key == "y2") { std::istringstream vs(rest); m.y2 = parse_vector(vs); }
            else if (key == "columns") {
                std::istringstream cs(rest);
                std::string col;
                while (std::getline(cs, col, ',')) {
                    if (col.rfind("phi_", 0) == 0) m.phi_names.push_back(col.substr(4));
                }
            } else {
                throw std::invalid_argument("parse_trace: unknown metadata key '" + key + "'");
            }
            continue;
        }
        std::istringstream rs(line);
        TraceRecord rec;
        char comma;
        if (!(rs >> rec.k >> comma >> rec.F >> comma >> rec.e_norm >> comma >> rec.budget >>
              comma >> rec.sigma >> comma >> rec.Lambda >> comma >> rec.L >> comma >> rec.t)) {
            throw std::invalid_argument("parse_trace: malformed record line: " + line);
        }
        double v;
        while (rs >> comma >> v) rec.phi.push_back(v);
        if (!trace.records.empty() && rec.k <= trace.records.back().k) {
            throw std::invalid_argument("parse_trace: records not strictly ordered by k");
        }
        trace.records.push_back(std::move(rec));
    }
    if (!have_schedule) throw std::invalid_argument("parse_trace: missing s schedule");
    return trace;
}

}  // namespace ifista
