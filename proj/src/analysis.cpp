#include "ifista/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ifista {

ComplianceResult check_bound_compliance(const Trace& trace, const Vector& x_ref,
                                        double F_ref) {
    if (trace.records.empty()) throw std::invalid_argument("check_bound_compliance: empty trace");
    ComplianceResult res;
    res.worst_violation = -std::numeric_limits<double>::infinity();
    double tol = 1e-7 * (1.0 + std::abs(F_ref));
    int satisfied = 0;
    for (const auto& rec : trace.records) {
        BoundValue b = theoretical_bound(trace, rec.k - 1, x_ref, F_ref);
        res.reference_outside_mu = b.reference_outside_mu;
        double gap = rec.F - F_ref;
        double slack = gap - b.value;
        res.worst_violation = std::max(res.worst_violation, slack);
        if (slack <= tol) ++satisfied;
        if (rec.e_norm > rec.budget * (1.0 + 1e-12)) res.budget_audit_ok = false;
    }
    res.fraction = static_cast<double>(satisfied) / static_cast<double>(trace.records.size());
    return res;
}

namespace {
std::string pow_text(double exponent) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "O(1/k^%g)", exponent);
    return buf;
}
}  // namespace

RegimeTag predicted_regime_r(double r) {
    if (r < -1.0) throw std::invalid_argument("predicted_regime_r: r < -1");
    if (r > 1.0) return {Regime::InvKSquared, 2.0, "O(1/k^2)"};
    if (r == 1.0) return {Regime::LogKOverKSquared, 2.0, "O(ln k/k^2)"};
    return {Regime::InvKPow, 1.0 + r, pow_text(1.0 + r)};
}

RegimeTag predicted_regime_omega(double omega) {
    if (omega < 1.0) throw std::invalid_argument("predicted_regime_omega: omega < 1");
    if (omega > 3.0) return {Regime::InvKSquared, 2.0, "O(1/k^2)"};
    if (omega == 3.0) return {Regime::LogKOverKSquared, 2.0, "O(ln k/k^2)"};
    return {Regime::InvKPow, omega - 1.0, pow_text(omega - 1.0)};
}

RateReport fit_rate(const Trace& trace, double F_ref, double window_fraction) {
    if (trace.records.size() < 100) throw std::invalid_argument("fit_rate: trace too short");
    if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
        throw std::invalid_argument("fit_rate: window_fraction outside (0,1]");
    }
    std::size_t n = trace.records.size();
    std::size_t take = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                    std::ceil(window_fraction * n)));
    std::size_t first = n - take;
    double floor_v = 1e-14 * (1.0 + std::abs(F_ref));

    RateReport rep;
    std::vector<std::pair<double, double>> pts;  // (log k, log gap)
    for (std::size_t i = first; i < n; ++i) {
        const auto& rec = trace.records[i];
        if (rec.k < 50) continue;
        double gap = rec.F - F_ref;
        if (gap <= floor_v) {
            ++rep.excluded_points;
            continue;
        }
        pts.emplace_back(std::log(static_cast<double>(rec.k)), std::log(gap));
        if (rep.k_start == 0) rep.k_start = rec.k;
        rep.k_end = rec.k;
    }
    if (pts.size() < 10) throw std::runtime_error("fit_rate: fewer than 10 usable points");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (auto [x, y] : pts) {
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    }
    double m = static_cast<double>(pts.size());
    double cov = sxy - sx * sy / m;
    double varx = sxx - sx * sx / m;
    double vary = syy - sy * sy / m;
    rep.fitted_slope = cov / varx;
    rep.r_squared = vary > 0.0 ? (cov * cov) / (varx * vary) : 1.0;
    return rep;
}

ThetaAudit theta_audit(const Trace& trace) {
    const TraceMeta& m = trace.meta;
    bool is_zero = m.strategy_desc == "zero";
    bool is_sat = m.strategy_desc.rfind("saturate", 0) == 0;
    if (!is_zero && !is_sat) {
        throw std::invalid_argument("theta_audit: needs a Saturating (or Zero) run");
    }
    ThetaAudit audit;
    double c = m.fill;

    // Reconstruct the running maxima entering the lower-bound denominator
    // from the recorded sigma values (Sigma variant only):
    // sigma_k/(2 t_k^2) - Lambda_k/L_k - 4 s1 - mu/t_k = ||p_k|| + ||p_{k-1}||.
    bool sigma_variant = m.sigma_desc == "sigma";
    double lam_max = 0.0;
    double pp_max = 0.0;
    for (const auto& rec : trace.records) {
        lam_max = std::max(lam_max, rec.Lambda);
        if (sigma_variant && rec.sigma > 0.0) {
            double pp = rec.sigma / (2.0 * rec.t * rec.t) - rec.Lambda / rec.L -
                        4.0 * m.s1 - m.mu / rec.t;
            pp_max = std::max(pp_max, pp);
        }
    }
    double M = std::max({4.0 * m.s1, 2.0 * m.mu, 2.0 * (pp_max + m.s1)}) * (1.0 + 1e-9) + 1e-12;

    for (const auto& rec : trace.records) {
        double k2 = static_cast<double>(rec.k) * static_cast<double>(rec.k);
        double s_k = schedule_value(m.s_schedule, rec.k);
        if (rec.e_norm > (s_k / (m.s1 * k2)) * (1.0 + 1e-9)) audit.upper_ok = false;
        if (rec.e_norm == 0.0) continue;  // the corollary's "either e_k = 0 or" branch
        double min_e = c * std::min(m.s1, s_k / rec.sigma);
        if (rec.e_norm < min_e * (1.0 - 1e-9)) audit.lower_ok = false;
        if (sigma_variant) {
            double denom = 2.0 * m.t2 * m.t2 * k2 *
                           (lam_max / m.rho + 1.5 * M + 6.0 * m.s1);
            if (rec.sigma > denom * (1.0 + 1e-9)) audit.lower_ok = false;
        }
    }
    return audit;
}

}  // namespace ifista
