#pragma once

#include <string>

#include "ifista/solver.hpp"

namespace ifista {

struct ComplianceResult {
    double fraction = 0.0;        // iterations with gap <= bound + tol
    double worst_violation = 0.0; // max over k of gap - bound (signed slack)
    bool budget_audit_ok = true;  // every ||e_k|| <= recorded budget
    bool reference_outside_mu = false;
};

// Evaluates the convergence bound at every recorded iteration and audits
// the budgets. Tolerance: 1e-7 * (1 + |F_ref|).
ComplianceResult check_bound_compliance(const Trace& trace, const Vector& x_ref,
                                        double F_ref);

// Decay-regime tags from the rate tables.
enum class Regime { InvKSquared, LogKOverKSquared, InvKPow };

struct RegimeTag {
    Regime regime = Regime::InvKSquared;
    double exponent = 2.0;  // the k-exponent of the predicted decay
    std::string text;       // e.g. "O(1/k^2)", "O(ln k/k^2)", "O(1/k^1.5)"
};

// s_k = O(1/k^r): r > 1 -> O(1/k^2); r = 1 -> O(ln k/k^2); r in [-1,1) -> O(1/k^{1+r}).
RegimeTag predicted_regime_r(double r);

// ||e_k|| = Theta(1/k^w), w >= 1: w > 3 -> O(1/k^2); w = 3 -> O(ln k/k^2);
// w in [1,3) -> O(1/k^{w-1}).
RegimeTag predicted_regime_omega(double omega);

struct RateReport {
    double fitted_slope = 0.0;
    double r_squared = 0.0;
    int k_start = 0;
    int k_end = 0;
    int excluded_points = 0;  // gap under the positivity floor
    double compliance = 0.0;
    std::string predicted_regime;
};

// OLS of log(F(x_k) - F_ref) against log k over the tail window.
RateReport fit_rate(const Trace& trace, double F_ref, double window_fraction = 0.5);

struct ThetaAudit {
    bool lower_ok = true;
    bool upper_ok = true;
};

// Upper: ||e_k|| <= s_k/(s1*k^2). Lower (Saturating runs): ||e_k|| >=
// fill * s_k/sigma_k with sigma_k within the reconstructed denominator shape.
ThetaAudit theta_audit(const Trace& trace);

}  // namespace ifista
