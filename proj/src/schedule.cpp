#include "ifista/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace ifista {

double momentum_next(double t) {
    if (t < 1.0) throw std::invalid_argument("momentum_next: t < 1");
    return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
}

Vector extrapolate(const Vector& x_k, const Vector& x_prev, double t_k, double t_next) {
    if (x_k.size() != x_prev.size()) {
        throw std::invalid_argument("extrapolate: dimension mismatch");
    }
    if (t_k < 1.0 || t_next < 1.0) throw std::invalid_argument("extrapolate: t < 1");
    return x_k + ((t_k - 1.0) / t_next) * (x_k - x_prev);
}

BacktrackResult backtracking_search(const Objective& obj, const Vector& y,
                                    double L_prev, double eta, int trial_cap) {
    if (!(L_prev > 0.0)) throw std::invalid_argument("backtracking_search: L_prev <= 0");
    if (!(eta > 1.0)) throw std::invalid_argument("backtracking_search: eta <= 1");
    double L = L_prev;
    for (int i = 0; i <= trial_cap; ++i) {
        Vector p = prox_point(obj, y, L);
        double q = q_upper(obj, p, y, L);
        if (std::isinf(q)) {
            // Q_L(p_L(y), y) is finite by construction; +inf means the
            // prox oracle stepped outside dom(g).
            throw std::runtime_error("backtracking_search: Q_L(p,y) not finite");
        }
        double Fp = objective_value(obj, p);
        // relative slack: near a minimizer F(p) and Q agree to rounding error,
        // and a strict test would keep doubling L forever
        if (Fp <= q + 1e-12 * (1.0 + std::abs(q))) return BacktrackResult{L, std::move(p), i};
        L *= eta;
    }
    throw std::runtime_error("backtracking_search: trial cap exceeded (broken oracle?)");
}

TauRho tau_rho_bounds(const StepSizeRule& rule, std::optional<double> lipschitz_hint) {
    if (const auto* c = std::get_if<ConstantStep>(&rule)) {
        return TauRho{c->L, c->L, false};
    }
    const auto& bt = std::get<BacktrackingStep>(rule);
    if (!lipschitz_hint) {
        return TauRho{bt.L1, bt.L1, true};  // tau tracked empirically by the run
    }
    if (bt.L1 >= *lipschitz_hint) return TauRho{bt.L1, bt.L1, false};
    return TauRho{bt.L1, bt.eta * *lipschitz_hint, false};
}

}  // namespace ifista
