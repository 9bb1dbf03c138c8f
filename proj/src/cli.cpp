#include "ifista/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ifista/verify.hpp"

namespace fs = std::filesystem;

namespace ifista {

namespace {

[[noreturn]] void spec_error(int line, const std::string& msg) {
    throw std::runtime_error("spec error: line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

double to_double(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        spec_error(line, "expected a number, got '" + s + "'");
    }
}

AuxCost aux_cost_by_name(const std::string& name, int line) {
    if (name == "tv") return make_tv_cost();
    if (name == "sqnorm") return make_sqnorm_cost();
    spec_error(line, "unknown aux cost '" + name + "'");
}

}  // namespace

RunSpec parse_run_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file " + path);

    RunSpec spec;
    spec.name = fs::path(path).stem().string();
    bool have_problem = false, have_rule = false, have_iters = false;
    bool mu_auto = true;
    std::string problem_line;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        std::string key = toks[0];
        if (!key.empty() && key.back() == ':') key.pop_back();
        auto need = [&](std::size_t n) {
            if (toks.size() != n + 1) {
                spec_error(lineno, "'" + key + "' expects " + std::to_string(n) + " argument(s)");
            }
        };
        if (key == "problem") {
            if (toks.size() < 2) spec_error(lineno, "'problem' needs a path or generator spec");
            if (toks[1] == "gen") {
                if (toks.size() != 8 || toks[2] != "lsq") {
                    spec_error(lineno, "generator spec is 'gen lsq m n seed density lambda'");
                }
                int m = static_cast<int>(to_double(toks[3], lineno));
                int n = static_cast<int>(to_double(toks[4], lineno));
                auto gseed = static_cast<std::uint64_t>(to_double(toks[5], lineno));
                double density = to_double(toks[6], lineno);
                double lambda = to_double(toks[7], lineno);
                spec.instance = generate_lsq(m, n, gseed, density, lambda);
                spec.problem_desc = "gen lsq " + std::to_string(m) + "x" + std::to_string(n) +
                                    " seed " + std::to_string(gseed);
            } else {
                spec.instance = load_problem(toks[1]);
                spec.problem_desc = toks[1];
            }
            have_problem = true;
        } else if (key == "rule") {
            if (toks.size() >= 2 && toks[1] == "constant") {
                need(2);
                spec.rule = ConstantStep{to_double(toks[2], lineno)};
            } else if (toks.size() >= 2 && toks[1] == "backtrack") {
                need(3);
                spec.rule = BacktrackingStep{to_double(toks[2], lineno), to_double(toks[3], lineno)};
            } else {
                spec_error(lineno, "rule is 'constant L' or 'backtrack L1 eta'");
            }
            have_rule = true;
        } else if (key == "s1") {
            need(1);
            spec.budget.s1 = to_double(toks[1], lineno);
            if (spec.budget.s1 <= 0.0) spec_error(lineno, "s1 must be positive");
        } else if (key == "mu") {
            need(1);
            if (toks[1] == "auto") {
                mu_auto = true;
            } else {
                mu_auto = false;
                spec.budget.mu = to_double(toks[1], lineno);
                if (spec.budget.mu < 0.0) spec_error(lineno, "mu must be nonnegative");
            }
        } else if (key == "s") {
            std::string rest;
            for (std::size_t i = 1; i < toks.size(); ++i) rest += (i > 1 ? " " : "") + toks[i];
            try {
                spec.budget.s_schedule = parse_schedule(rest);
            } catch (const std::exception& e) {
                spec_error(lineno, e.what());
            }
        } else if (key == "sigma") {
            need(1);
            if (toks[1] == "sigma") spec.budget.sigma_variant = SigmaVariant::Sigma;
            else if (toks[1] == "sigma_prime") spec.budget.sigma_variant = SigmaVariant::SigmaPrime;
            else if (toks[1] == "sigma_tilde") spec.budget.sigma_variant = SigmaVariant::SigmaTilde;
            else spec_error(lineno, "sigma is one of sigma|sigma_prime|sigma_tilde");
        } else if (key == "perturb") {
            if (toks.size() < 2) spec_error(lineno, "'perturb' needs a strategy");
            if (toks[1] == "zero") {
                need(1);
                spec.strategy = ZeroPerturb{};
            } else if (toks[1] == "random") {
                need(3);
                spec.strategy = RandomBallPerturb{
                    static_cast<std::uint64_t>(to_double(toks[2], lineno)),
                    to_double(toks[3], lineno)};
            } else if (toks[1] == "saturate") {
                need(3);
                spec.strategy = SaturatingPerturb{
                    to_double(toks[2], lineno),
                    static_cast<std::uint64_t>(to_double(toks[3], lineno))};
            } else if (toks[1] == "directed") {
                need(3);
                spec.strategy = DirectedPerturb{
                    std::make_shared<AuxCost>(aux_cost_by_name(toks[2], lineno)),
                    to_double(toks[3], lineno)};
            } else {
                spec_error(lineno, "unknown perturb strategy '" + toks[1] + "'");
            }
        } else if (key == "iters") {
            need(1);
            spec.iters = static_cast<int>(to_double(toks[1], lineno));
            if (spec.iters < 2) spec_error(lineno, "iters must be >= 2");
            have_iters = true;
        } else if (key == "seed") {
            need(1);
            spec.seed = static_cast<std::uint64_t>(to_double(toks[1], lineno));
        } else if (key == "t2") {
            need(1);
            spec.t2 = to_double(toks[1], lineno);
            if (spec.t2 < 1.0) spec_error(lineno, "t2 must be >= 1");
        } else if (key == "ref_iters") {
            need(1);
            spec.ref_iters = static_cast<int>(to_double(toks[1], lineno));
        } else if (key == "report_phi") {
            need(1);
            spec.report_phi.push_back(aux_cost_by_name(toks[1], lineno));
        } else {
            spec_error(lineno, "unknown key '" + key + "'");
        }
    }
    if (!have_problem) throw std::runtime_error("spec error: missing required key 'problem'");
    if (!have_rule) throw std::runtime_error("spec error: missing required key 'rule'");
    if (!have_iters) throw std::runtime_error("spec error: missing required key 'iters'");
    if (mu_auto) spec.budget.mu = estimate_mu(spec.instance.obj);  // throws "supply mu"
    return spec;
}

RunConfig make_run_config(const RunSpec& spec) {
    RunConfig cfg;
    cfg.obj = spec.instance.obj;
    cfg.rule = spec.rule;
    cfg.budget = spec.budget;
    cfg.strategy = spec.strategy;
    cfg.iters = spec.iters;
    cfg.t2 = spec.t2;
    cfg.seed = spec.seed;
    cfg.report_phi = spec.report_phi;
    return cfg;
}

namespace {

struct SolveOutput {
    Trace trace;
    Reference ref;
    ComplianceResult compliance;
};

SolveOutput execute(const RunSpec& spec) {
    SolveOutput out;
    out.trace = run(make_run_config(spec));
    out.ref = reference_solution(spec.instance.obj, spec.ref_iters);
    out.compliance = check_bound_compliance(out.trace, out.ref.x, out.ref.F);
    return out;
}

void write_report(const RunSpec& spec, const SolveOutput& out, const std::string& path) {
    std::ofstream rep(path);
    if (!rep) throw std::runtime_error("cannot write report " + path);
    const auto& last = out.trace.records.back();
    rep << "spec: " << spec.name << "\n";
    rep << "problem: " << spec.problem_desc << " (n=" << spec.instance.obj.dim
        << ", m=" << spec.instance.A.rows() << ", g=" << spec.instance.g_kind << ")\n";
    rep << "rule: " << out.trace.meta.rule_desc << "\n";
    rep << "perturb: " << out.trace.meta.strategy_desc << "\n";
    rep << "s_schedule: " << out.trace.meta.schedule_desc << "\n";
    rep << "sigma_variant: " << out.trace.meta.sigma_desc << "\n";
    rep << "s1: " << format_g17(out.trace.meta.s1) << "\n";
    rep << "mu: " << format_g17(out.trace.meta.mu) << "\n";
    rep << "iters: " << out.trace.meta.iters << "\n";
    rep << "tau: " << format_g17(out.trace.meta.tau) << "\n";
    rep << "rho: " << format_g17(out.trace.meta.rho) << "\n";
    rep << "terminal_F: " << format_g17(last.F) << "\n";
    rep << "reference_F: " << format_g17(out.ref.F) << "\n";
    rep << "terminal_gap: " << format_g17(last.F - out.ref.F) << "\n";
    rep << "compliance_fraction: " << format_g17(out.compliance.fraction) << "\n";
    rep << "worst_violation: " << format_g17(out.compliance.worst_violation) << "\n";
    rep << "budget_audit: " << (out.compliance.budget_audit_ok ? "pass" : "FAIL") << "\n";
    rep << "reference_outside_mu: " << (out.compliance.reference_outside_mu ? 1 : 0) << "\n";
    try {
        RateReport rr = fit_rate(out.trace, out.ref.F);
        rep << "fitted_slope: " << format_g17(rr.fitted_slope) << "\n";
        rep << "fit_r2: " << format_g17(rr.r_squared) << "\n";
        rep << "fit_window: " << rr.k_start << ".." << rr.k_end << "\n";
    } catch (const std::exception& e) {
        rep << "fitted_slope: n/a (" << e.what() << ")\n";
    }
    for (std::size_t i = 0; i < out.trace.meta.phi_names.size(); ++i) {
        rep << "phi_" << out.trace.meta.phi_names[i] << "_final: "
            << format_g17(out.trace.records.back().phi[i]) << "\n";
    }
}

}  // namespace

int cmd_solve(const std::string& spec_path, const std::string& out_dir, bool quiet,
              bool bound_csv) {
    RunSpec spec;
    SolveOutput out;
    try {
        spec = parse_run_spec(spec_path);
        out = execute(spec);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    try {
        fs::create_directories(out_dir);
        std::string trace_path = (fs::path(out_dir) / (spec.name + ".trace.csv")).string();
        std::ofstream tf(trace_path, std::ios::binary);
        tf << serialize_trace(out.trace);
        tf.close();
        write_report(spec, out, (fs::path(out_dir) / (spec.name + ".report.txt")).string());
        if (bound_csv) {
            std::ofstream bf((fs::path(out_dir) / (spec.name + ".bound.csv")).string());
            bf << "k,gap,bound\n";
            for (const auto& rec : out.trace.records) {
                BoundValue b = theoretical_bound(out.trace, rec.k - 1, out.ref.x, out.ref.F);
                bf << rec.k << "," << format_g17(rec.F - out.ref.F) << ","
                   << format_g17(b.value) << "\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (!quiet) {
        std::cout << spec.name << ": terminal_gap="
                  << format_g17(out.trace.records.back().F - out.ref.F)
                  << " compliance=" << format_g17(out.compliance.fraction)
                  << " budget_audit=" << (out.compliance.budget_audit_ok ? "pass" : "FAIL")
                  << "\n";
    }
    return out.compliance.budget_audit_ok ? 0 : 2;
}

namespace {

void apply_sweep_value(RunSpec& spec, const std::string& param, const std::string& value) {
    if (param == "r") {
        auto* p = std::get_if<PowerLawSchedule>(&spec.budget.s_schedule);
        if (!p) throw std::runtime_error("sweep r needs a power-law s schedule");
        p->r = std::stod(value);
    } else if (param == "omega-fill") {
        double fill = std::stod(value);
        if (auto* rb = std::get_if<RandomBallPerturb>(&spec.strategy)) rb->fill = fill;
        else if (auto* sat = std::get_if<SaturatingPerturb>(&spec.strategy)) sat->fill = fill;
        else if (auto* d = std::get_if<DirectedPerturb>(&spec.strategy)) d->fill = fill;
        else throw std::runtime_error("sweep omega-fill needs a non-zero perturb strategy");
    } else if (param == "seed") {
        auto s = static_cast<std::uint64_t>(std::stoull(value));
        spec.seed = s;
        if (auto* rb = std::get_if<RandomBallPerturb>(&spec.strategy)) rb->seed = s;
        else if (auto* sat = std::get_if<SaturatingPerturb>(&spec.strategy)) sat->direction_seed = s;
    } else if (param == "L") {
        auto* c = std::get_if<ConstantStep>(&spec.rule);
        if (!c) throw std::runtime_error("sweep L needs the constant step rule");
        c->L = std::stod(value);
    } else {
        throw std::runtime_error("unknown sweep parameter '" + param +
                                 "' (expected r, omega-fill, seed, L)");
    }
}

}  // namespace

int cmd_sweep(const std::string& spec_path, const std::string& param,
              const std::vector<std::string>& values, const std::string& out_dir,
              bool quiet) {
    if (values.empty()) {
        std::cerr << "error: empty sweep value list\n";
        return 1;
    }
    RunSpec base;
    Reference ref;
    try {
        base = parse_run_spec(spec_path);
        ref = reference_solution(base.instance.obj, base.ref_iters);
        fs::create_directories(out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::string summary_path = (fs::path(out_dir) / (base.name + ".sweep.txt")).string();
    std::ofstream summary(summary_path);
    summary << "param value terminal_gap fitted_slope compliance budget_audit\n";
    if (!quiet) {
        std::cout << "param value terminal_gap fitted_slope compliance budget_audit\n";
    }
    bool any_failed = false;
    for (const auto& value : values) {
        try {
            RunSpec spec = base;
            apply_sweep_value(spec, param, value);
            Trace trace = run(make_run_config(spec));
            ComplianceResult comp = check_bound_compliance(trace, ref.x, ref.F);
            std::string slope = "n/a";
            try {
                slope = format_g17(fit_rate(trace, ref.F).fitted_slope);
            } catch (const std::exception&) {
            }
            std::ostringstream row;
            row << param << " " << value << " "
                << format_g17(trace.records.back().F - ref.F) << " " << slope << " "
                << format_g17(comp.fraction) << " "
                << (comp.budget_audit_ok ? "pass" : "FAIL");
            summary << row.str() << "\n";
            summary.flush();  // partial results preserved on later failures
            if (!quiet) std::cout << row.str() << "\n";
            if (!comp.budget_audit_ok) any_failed = true;
        } catch (const std::exception& e) {
            summary << param << " " << value << " error: " << e.what() << "\n";
            summary.flush();
            std::cerr << "error: value " << value << ": " << e.what() << "\n";
            any_failed = true;
        }
    }
    return any_failed ? 1 : 0;
}

int cmd_verify(const std::string& corpus_path, const std::string& suite, bool quiet) {
    std::vector<ProblemInstance> corpus;
    try {
        if (!fs::is_directory(corpus_path)) {
            throw std::runtime_error("corpus directory not found: " + corpus_path);
        }
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(corpus_path)) {
            if (entry.path().extension() == ".txt") files.push_back(entry.path().string());
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) corpus.push_back(load_problem(file));
        if (corpus.empty()) throw std::runtime_error("no instance files in " + corpus_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::vector<SuiteResult> results;
    try {
        results = run_verification_suites(corpus, suite);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    bool all_ok = true;
    for (const auto& r : results) {
        if (!quiet || !r.passed) {
            std::cout << r.name << ": " << (r.passed ? "PASS" : "FAIL")
                      << (r.message.empty() ? "" : " (" + r.message + ")") << "\n";
        }
        all_ok = all_ok && r.passed;
    }
    return all_ok ? 0 : 1;
}

}  // namespace ifista
