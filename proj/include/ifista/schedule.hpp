#pragma once

#include <optional>
#include <utility>
#include <variant>

#include "ifista/problem.hpp"

namespace ifista {

struct ConstantStep {
    double L = 1.0;
};

struct BacktrackingStep {
    double L1 = 1.0;
    double eta = 2.0;
};

using StepSizeRule = std::variant<ConstantStep, BacktrackingStep>;

// t_{k+1} = (1 + sqrt(1 + 4 t_k^2)) / 2; satisfies t'(t'-1) = t^2.
double momentum_next(double t);

// y = x_k + ((t_k - 1)/t_next) * (x_k - x_prev).
Vector extrapolate(const Vector& x_k, const Vector& x_prev, double t_k, double t_next);

struct BacktrackResult {
    double L = 0.0;
    Vector p;
    int trials = 0;
};

// Smallest L = eta^i * L_prev with F(p_L(y)) <= Q_L(p_L(y), y).
// Aborts after trial_cap doublings; that signals a broken oracle.
BacktrackResult backtracking_search(const Objective& obj, const Vector& y,
                                    double L_prev, double eta, int trial_cap = 200);

// (rho, tau) with rho <= L_k <= tau for the whole run. The bool is true
// when tau is only an empirical running-max placeholder (no hint).
struct TauRho {
    double rho = 0.0;
    double tau = 0.0;
    bool empirical = false;
};

TauRho tau_rho_bounds(const StepSizeRule& rule, std::optional<double> lipschitz_hint);

}  // namespace ifista
