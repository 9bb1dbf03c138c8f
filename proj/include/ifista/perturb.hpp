#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <variant>

#include "ifista/problem.hpp"

namespace ifista {

struct ZeroPerturb {};

// Uniform direction, magnitude = fill * budget, stream keyed by (seed, k).
struct RandomBallPerturb {
    std::uint64_t seed = 0;
    double fill = 1.0;
};

// Magnitude exactly fill * budget, direction from a seeded fixed stream.
struct SaturatingPerturb {
    double fill = 1.0;
    std::uint64_t direction_seed = 0;
};

// Superiorization: step of length fill * budget against phi's subgradient
// at the unperturbed prox point.
struct DirectedPerturb {
    std::shared_ptr<AuxCost> phi;
    double fill = 1.0;
};

using PerturbStrategy =
    std::variant<ZeroPerturb, RandomBallPerturb, SaturatingPerturb, DirectedPerturb>;

// Error vector with ||e|| <= budget; deterministic in (strategy, p, budget, k).
Vector make_perturbation(const PerturbStrategy& strategy, const Vector& p,
                         double budget, int k);

// Total variation sum |x_{i+1} - x_i| with the sign-pattern subgradient
// (0 selected at ties).
std::pair<double, Vector> phi_total_variation_1d(const Vector& x);

AuxCost make_tv_cost();
AuxCost make_sqnorm_cost();

}  // namespace ifista
