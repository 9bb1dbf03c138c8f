#include "ifista/budget.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ifista {

double schedule_value(const SSchedule& s, int k) {
    if (k < 2) throw std::invalid_argument("schedule_value: k < 2");
    if (const auto* p = std::get_if<PowerLawSchedule>(&s)) {
        return p->c * std::pow(static_cast<double>(k), -p->r);
    }
    const auto& e = std::get<ExplicitSchedule>(s);
    std::size_t idx = static_cast<std::size_t>(k - 2);
    return idx < e.values.size() ? e.values[idx] : 0.0;
}

std::string schedule_to_string(const SSchedule& s) {
    char buf[64];
    std::string out;
    if (const auto* p = std::get_if<PowerLawSchedule>(&s)) {
        out = "power";
        std::snprintf(buf, sizeof(buf), " %.17g %.17g", p->c, p->r);
        out += buf;
        return out;
    }
    out = "list";
    for (double v : std::get<ExplicitSchedule>(s).values) {
        std::snprintf(buf, sizeof(buf), " %.17g", v);
        out += buf;
    }
    return out;
}

SSchedule parse_schedule(const std::string& text) {
    std::istringstream in(text);
    std::string kind;
    in >> kind;
    if (kind == "power") {
        PowerLawSchedule p;
        if (!(in >> p.c >> p.r)) throw std::invalid_argument("parse_schedule: power needs c r");
        if (p.c < 0.0) throw std::invalid_argument("parse_schedule: c must be >= 0");
        return p;
    }
    if (kind == "list") {
        ExplicitSchedule e;
        double v;
        while (in >> v) {
            if (v < 0.0) throw std::invalid_argument("parse_schedule: negative s_k");
            e.values.push_back(v);
        }
        return e;
    }
    throw std::invalid_argument("parse_schedule: expected 'power' or 'list', got '" + kind + "'");
}

std::pair<bool, double> lambda_k(const Objective& obj, const Vector& center,
                                 double s1, double radius_mult) {
    if (!(s1 > 0.0)) throw std::invalid_argument("lambda_k: s1 <= 0");
    auto iv = ball_bounds(obj, center, radius_mult * s1);
    if (!iv) return {false, 0.0};
    double M = iv->hi;
    double m = iv->lo;
    if (M <= m) M = m + 1e-12 * (1.0 + std::abs(M));
    return {true, (M - m) / s1};
}

double estimate_mu(const Objective& obj) {
    if (!obj.l1l2) {
        throw std::runtime_error("estimate_mu: not an l1-l2 instance, supply mu");
    }
    double lambda = obj.l1l2->lambda;
    double b2 = obj.l1l2->b_sqnorm;
    if (lambda <= 0.0) throw std::runtime_error("estimate_mu: lambda must be positive, supply mu");
    // F(x) >= lambda*||x||_1 >= lambda*||x||, so F(x) > F(0) = ||b||^2
    // whenever ||x|| > ||b||^2 / min(lambda, 1).
    return lambda >= 1.0 ? b2 : b2 / lambda;
}

double nu_k(const Objective& obj, const Vector& y, double L) {
    if (!(L > 0.0)) throw std::invalid_argument("nu_k: L <= 0");
    if (std::isinf(obj.g.lower_bound)) {
        throw std::runtime_error("nu_k: g has no finite lower bound");
    }
    Vector c = y - obj.f.gradient(y) / L;
    double gc = obj.g.value(c);
    if (std::isinf(gc)) {
        // c outside dom(g): fall back on the generic bound through any
        // interior point is not available; signal the caller.
        throw std::runtime_error("nu_k: g(c) = +inf, nu unavailable");
    }
    return c.norm() + std::sqrt(std::max(0.0, 2.0 * (gc - obj.g.lower_bound) / L));
}

double sigma(SigmaVariant variant, double t_k, double L_k, double Lambda_k,
             double s1, double mu, const SigmaGeometry& geom) {
    double base = Lambda_k / L_k + mu / t_k;
    double tt = 2.0 * t_k * t_k;
    switch (variant) {
        case SigmaVariant::Sigma:
            if (!geom.p_norm || !geom.p_prev_norm) {
                throw std::invalid_argument("sigma: missing p norms for Sigma");
            }
            return tt * (base + *geom.p_norm + *geom.p_prev_norm + 4.0 * s1);
        case SigmaVariant::SigmaPrime:
            if (!geom.drift_norm) {
                throw std::invalid_argument("sigma: missing drift norm for SigmaPrime");
            }
            return tt * (base + *geom.drift_norm + 2.0 * s1);
        case SigmaVariant::SigmaTilde:
            if (!geom.nu || !geom.nu_prev) {
                throw std::invalid_argument("sigma: missing nu values for SigmaTilde");
            }
            return tt * (base + *geom.nu + *geom.nu_prev + 4.0 * s1);
    }
    throw std::logic_error("sigma: unknown variant");
}

double admissible_budget(const BudgetConfig& cfg, int k, double sigma_k, bool bounded) {
    if (!bounded) return 0.0;
    if (!(sigma_k > 0.0)) throw std::invalid_argument("admissible_budget: sigma <= 0");
    return std::min(cfg.s1, schedule_value(cfg.s_schedule, k) / sigma_k);
}

}  // namespace ifista
