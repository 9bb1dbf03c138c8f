#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ifista/problem.hpp"

namespace ifista {

enum class SigmaVariant { Sigma, SigmaPrime, SigmaTilde };

struct PowerLawSchedule {
    double c = 1.0;
    double r = 2.0;
};

// Explicit values for s_2, s_3, ...; indices past the end are 0.
struct ExplicitSchedule {
    std::vector<double> values;
};

using SSchedule = std::variant<PowerLawSchedule, ExplicitSchedule>;

double schedule_value(const SSchedule& s, int k);

// "power c r" / "list v2 v3 ...", round-trippable at 17 significant digits.
std::string schedule_to_string(const SSchedule& s);
SSchedule parse_schedule(const std::string& text);

struct BudgetConfig {
    double s1 = 1.0;
    double mu = 0.0;
    SSchedule s_schedule = PowerLawSchedule{1.0, 2.0};
    SigmaVariant sigma_variant = SigmaVariant::Sigma;
};

struct BudgetReport {
    bool bounded = false;
    double Lambda = 0.0;
    double sigma = 0.0;
    double budget = 0.0;
    std::optional<double> nu;
};

// (bounded, Lambda) with Lambda = (M - m)/s1 from certified bounds of F on
// B[center, radius_mult * s1]. Lambda is then a Lipschitz constant of F on
// B[center, (radius_mult - 1) * s1]. Degenerate M = m is inflated by
// 1e-12 * (1 + |M|).
std::pair<bool, double> lambda_k(const Objective& obj, const Vector& center,
                                 double s1, double radius_mult = 2.0);

// Coercivity radius: any minimizer of the l1-l2 family lies in B[0, mu].
double estimate_mu(const Objective& obj);

// nu with ||p_L(y)|| <= nu, from supercoercivity of Q_L(., y):
// nu = ||c|| + sqrt(max(0, 2 (g(c) - g_lb) / L)) at c = y - f'(y)/L.
double nu_k(const Objective& obj, const Vector& y, double L);

// Geometry inputs for the selected sigma variant.
struct SigmaGeometry {
    std::optional<double> p_norm;        // ||p_{L_k}(y_k)||        (Sigma)
    std::optional<double> p_prev_norm;   // ||p_{L_{k-1}}(y_{k-1})|| (Sigma)
    std::optional<double> drift_norm;    // ||x_k - ((t_k-1)/t_k) x_{k-1}|| (SigmaPrime)
    std::optional<double> nu;            // nu_k   (SigmaTilde)
    std::optional<double> nu_prev;       // nu_{k-1} (SigmaTilde)
};

double sigma(SigmaVariant variant, double t_k, double L_k, double Lambda_k,
             double s1, double mu, const SigmaGeometry& geom);

// min{s1, s_k/sigma_k} when F is bounded on the ball, 0 otherwise.
double admissible_budget(const BudgetConfig& cfg, int k, double sigma_k, bool bounded);

}  // namespace ifista
