#include "ifista/verify.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ifista/budget.hpp"
#include "ifista/schedule.hpp"
#include "ifista/solver.hpp"

namespace ifista {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double g_coord(const ProblemInstance& inst, double xi) {
    if (inst.g_kind == "l1") return inst.lambda * std::abs(xi);
    if (inst.g_kind == "zero") return 0.0;
    return (xi < inst.box_lo || xi > inst.box_hi) ? kInf : 0.0;
}

}  // namespace

Vector grid_prox_minimizer(const ProblemInstance& inst, const Vector& y, double L,
                           const GridSpec& gs) {
    // Q_L(x,y) - f(y) = sum_i [ f'(y)_i (x_i - y_i) + 0.5 L (x_i - y_i)^2 + g_i(x_i) ]
    // for coordinate-separable g, so each coordinate is scanned on its own.
    Vector grad = inst.obj.f.gradient(y);
    Vector best(y.size());
    long steps = static_cast<long>(std::floor((gs.hi - gs.lo) / gs.step + 0.5));
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        double best_val = kInf;
        double best_x = gs.lo;
        for (long s = 0; s <= steps; ++s) {
            double xi = gs.lo + gs.step * static_cast<double>(s);
            double d = xi - y[i];
            double v = grad[i] * d + 0.5 * L * d * d + g_coord(inst, xi);
            if (v < best_val) {
                best_val = v;
                best_x = xi;
            }
        }
        best[i] = best_x;
    }
    return best;
}

Vector grid_prox_minimizer_joint(const ProblemInstance& inst, const Vector& y,
                                 double L, const GridSpec& gs) {
    if (y.size() > 2) throw std::invalid_argument("grid_prox_minimizer_joint: n > 2");
    long steps = static_cast<long>(std::floor((gs.hi - gs.lo) / gs.step + 0.5));
    Vector grad = inst.obj.f.gradient(y);
    double best_val = kInf;
    Vector best = Vector::Constant(y.size(), gs.lo);
    Vector x(y.size());
    if (y.size() == 1) {
        for (long s = 0; s <= steps; ++s) {
            x[0] = gs.lo + gs.step * static_cast<double>(s);
            double d = x[0] - y[0];
            double v = grad[0] * d + 0.5 * L * d * d + g_coord(inst, x[0]);
            if (v < best_val) {
                best_val = v;
                best = x;
            }
        }
        return best;
    }
    for (long s0 = 0; s0 <= steps; ++s0) {
        x[0] = gs.lo + gs.step * static_cast<double>(s0);
        double d0 = x[0] - y[0];
        double v0 = grad[0] * d0 + 0.5 * L * d0 * d0 + g_coord(inst, x[0]);
        for (long s1 = 0; s1 <= steps; ++s1) {
            x[1] = gs.lo + gs.step * static_cast<double>(s1);
            double d1 = x[1] - y[1];
            double v = v0 + grad[1] * d1 + 0.5 * L * d1 * d1 + g_coord(inst, x[1]);
            if (v < best_val) {
                best_val = v;
                best = x;
            }
        }
    }
    return best;
}

namespace {

SuiteResult suite_prox(const std::vector<ProblemInstance>& corpus) {
    SuiteResult res{"prox", true, ""};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uy(-1.0, 1.0);
    std::uniform_real_distribution<double> uL(0.5, 8.0);
    GridSpec gs;
    int checked = 0;
    for (const auto& inst : corpus) {
        if (inst.obj.dim > 3) continue;
        for (int trial = 0; trial < 5; ++trial) {
            Vector y(inst.obj.dim);
            for (int i = 0; i < inst.obj.dim; ++i) y[i] = uy(rng);
            double L = std::max(uL(rng), inst.obj.f.lipschitz_hint.value_or(1.0));
            Vector p = prox_point(inst.obj, y, L);
            Vector q = grid_prox_minimizer(inst, y, L, gs);
            double arg_err = (p - q).lpNorm<Eigen::Infinity>();
            double val_err = q_upper(inst.obj, q, y, L) - q_upper(inst.obj, p, y, L);
            if (arg_err > 2.0 * gs.step || std::abs(val_err) > 1e-5) {
                res.passed = false;
                res.message = "prox/grid mismatch: arg_err=" + format_g17(arg_err) +
                              " val_err=" + format_g17(val_err);
                return res;
            }
            ++checked;
        }
    }
    if (checked == 0) {
        res.passed = false;
        res.message = "no instance with n <= 3 in corpus";
    } else {
        res.message = std::to_string(checked) + " prox/grid comparisons";
    }
    return res;
}

SuiteResult suite_lemma_a2(const std::vector<ProblemInstance>& corpus) {
    SuiteResult res{"lemma_a2", true, ""};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uy(-2.0, 2.0);
    std::uniform_real_distribution<double> uL(0.5, 16.0);
    int checked = 0;
    for (const auto& inst : corpus) {
        if (inst.g_kind != "l1") continue;
        for (int trial = 0; trial < 200; ++trial) {
            Vector y(inst.obj.dim);
            for (int i = 0; i < inst.obj.dim; ++i) y[i] = uy(rng);
            double L = uL(rng);
            Vector p = prox_point(inst.obj, y, L);
            Vector r = L * (y - p) - inst.obj.f.gradient(y);
            for (int i = 0; i < inst.obj.dim; ++i) {
                bool ok = p[i] != 0.0
                              ? std::abs(r[i] - inst.lambda * (p[i] > 0 ? 1.0 : -1.0)) <= 1e-8
                              : std::abs(r[i]) <= inst.lambda + 1e-8;
                if (!ok) {
                    res.passed = false;
                    res.message = "subgradient residual violated at coordinate " +
                                  std::to_string(i);
                    return res;
                }
            }
            ++checked;
        }
    }
    res.message = std::to_string(checked) + " residual checks";
    if (checked == 0) {
        res.passed = false;
        res.message = "no l1 instance in corpus";
    }
    return res;
}

SuiteResult suite_lemma_a1(const std::vector<ProblemInstance>& corpus) {
    SuiteResult res{"lemma_a1", true, ""};
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (const auto& inst : corpus) {
        double L = inst.obj.f.lipschitz_hint.value_or(0.0);
        for (int trial = 0; trial < 200; ++trial) {
            Vector x(inst.obj.dim), y(inst.obj.dim);
            for (int i = 0; i < inst.obj.dim; ++i) {
                x[i] = u(rng);
                y[i] = u(rng);
            }
            double lhs = inst.obj.f.value(x);
            double rhs = inst.obj.f.value(y) + inst.obj.f.gradient(y).dot(x - y) +
                         0.5 * L * (x - y).squaredNorm();
            if (rhs - lhs < -1e-9) {
                res.passed = false;
                res.message = "descent lemma violated, slack=" + format_g17(rhs - lhs);
                return res;
            }
        }
    }
    res.message = "descent lemma held on all sampled pairs";
    return res;
}

SuiteResult suite_fb(const std::vector<ProblemInstance>& corpus) {
    SuiteResult res{"fb", true, ""};
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (const auto& inst : corpus) {
        double L = std::max(1.0, inst.obj.f.lipschitz_hint.value_or(1.0));
        for (int trial = 0; trial < 100; ++trial) {
            Vector y(inst.obj.dim), probe(inst.obj.dim);
            for (int i = 0; i < inst.obj.dim; ++i) {
                y[i] = u(rng);
                probe[i] = u(rng);
            }
            Vector p = prox_point(inst.obj, y, L);
            double Fp = objective_value(inst.obj, p);
            double Fx = objective_value(inst.obj, probe);
            if (std::isinf(Fx)) continue;  // probe outside dom(g)
            double rhs = 0.5 * L * (p - y).squaredNorm() + L * (p - y).dot(y - probe);
            if (Fx - Fp - rhs < -1e-8) {
                res.passed = false;
                res.message = "FB inequality violated, slack=" + format_g17(Fx - Fp - rhs);
                return res;
            }
        }
    }
    res.message = "FB inequality held on all probes";
    return res;
}

SuiteResult suite_momentum() {
    SuiteResult res{"momentum", true, ""};
    double t = 1.0;
    for (int k = 1; k <= 10000; ++k) {
        double tn = momentum_next(t);
        double lhs = tn * (tn - 1.0);
        double rhs = t * t;
        if (std::abs(lhs - rhs) > 4.0 * std::abs(rhs) * std::numeric_limits<double>::epsilon() + 1e-12) {
            res.passed = false;
            res.message = "identity t'(t'-1)=t^2 violated at k=" + std::to_string(k);
            return res;
        }
        if (tn < 0.5 * (k + 1)) {
            res.passed = false;
            res.message = "growth t_{k+1} >= (k+1)/2 violated at k=" + std::to_string(k);
            return res;
        }
        t = tn;
    }
    res.message = "identity and growth over 10^4 steps";
    return res;
}

SuiteResult suite_budget(const std::vector<ProblemInstance>& corpus) {
    SuiteResult res{"budget", true, ""};
    for (const auto& inst : corpus) {
        RunConfig cfg;
        cfg.obj = inst.obj;
        double hint = inst.obj.f.lipschitz_hint.value_or(1.0);
        cfg.rule = ConstantStep{std::max(hint, 1e-8)};
        cfg.budget.s1 = 1.0;
        cfg.budget.mu = inst.obj.l1l2 ? estimate_mu(inst.obj) : 1.0;
        cfg.budget.s_schedule = PowerLawSchedule{1.0, 2.0};
        cfg.strategy = SaturatingPerturb{1.0, 99};
        cfg.iters = 60;
        Trace trace = run(cfg);
        for (const auto& rec : trace.records) {
            double k2 = static_cast<double>(rec.k) * rec.k;
            double s_k = schedule_value(cfg.budget.s_schedule, rec.k);
            bool cap_ok = rec.budget <= s_k / (cfg.budget.s1 * k2) * (1.0 + 1e-9);
            bool sigma_ok = rec.budget == 0.0 || rec.sigma >= 4.0 * rec.t * rec.t * cfg.budget.s1;
            bool e_ok = rec.e_norm <= rec.budget * (1.0 + 1e-12);
            if (!cap_ok || !sigma_ok || !e_ok) {
                res.passed = false;
                res.message = "budget invariant failed at k=" + std::to_string(rec.k);
                return res;
            }
        }
    }
    res.message = "budget caps, sigma positivity, e within budget";
    return res;
}

}  // namespace

std::vector<SuiteResult> run_verification_suites(
    const std::vector<ProblemInstance>& corpus, const std::string& suite_filter) {
    std::vector<SuiteResult> out;
    auto want = [&](const std::string& name) {
        return suite_filter.empty() || suite_filter == name;
    };
    if (want("prox")) out.push_back(suite_prox(corpus));
    if (want("lemma_a2")) out.push_back(suite_lemma_a2(corpus));
    if (want("lemma_a1")) out.push_back(suite_lemma_a1(corpus));
    if (want("fb")) out.push_back(suite_fb(corpus));
    if (want("momentum")) out.push_back(suite_momentum());
    if (want("budget")) out.push_back(suite_budget(corpus));
    if (out.empty()) throw std::invalid_argument("unknown suite '" + suite_filter + "'");
    return out;
}

}  // namespace ifista
