#include "ifista/perturb.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ifista {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based stream keyed by (seed, k) so any iteration can be replayed.
Vector unit_direction(std::uint64_t seed, int k, Eigen::Index n) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(k))));
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector u(n);
    double norm = 0.0;
    do {
        for (Eigen::Index i = 0; i < n; ++i) u[i] = normal(rng);
        norm = u.norm();
    } while (norm < 1e-300);
    return u / norm;
}

}  // namespace

Vector make_perturbation(const PerturbStrategy& strategy, const Vector& p,
                         double budget, int k) {
    if (budget < 0.0) throw std::invalid_argument("make_perturbation: negative budget");
    if (budget == 0.0 || std::holds_alternative<ZeroPerturb>(strategy)) {
        return Vector::Zero(p.size());
    }
    if (const auto* rb = std::get_if<RandomBallPerturb>(&strategy)) {
        return (rb->fill * budget) * unit_direction(rb->seed, k, p.size());
    }
    if (const auto* sat = std::get_if<SaturatingPerturb>(&strategy)) {
        return (sat->fill * budget) * unit_direction(sat->direction_seed, k, p.size());
    }
    const auto& dir = std::get<DirectedPerturb>(strategy);
    Vector s = dir.phi->subgradient(p);
    double sn = s.norm();
    if (sn <= 1e-12) return Vector::Zero(p.size());
    return (-dir.fill * budget / sn) * s;
}

std::pair<double, Vector> phi_total_variation_1d(const Vector& x) {
    if (x.size() < 2) throw std::invalid_argument("phi_total_variation_1d: n < 2");
    double value = 0.0;
    Vector sub = Vector::Zero(x.size());
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
        double d = x[i + 1] - x[i];
        value += std::abs(d);
        double sg = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
        sub[i + 1] += sg;
        sub[i] -= sg;
    }
    return {value, sub};
}

AuxCost make_tv_cost() {
    AuxCost phi;
    phi.name = "tv";
    phi.value = [](const Vector& x) { return phi_total_variation_1d(x).first; };
    phi.subgradient = [](const Vector& x) { return phi_total_variation_1d(x).second; };
    return phi;
}

AuxCost make_sqnorm_cost() {
    AuxCost phi;
    phi.name = "sqnorm";
    phi.value = [](const Vector& x) { return x.squaredNorm(); };
    phi.subgradient = [](const Vector& x) { return Vector(2.0 * x); };
    return phi;
}

}  // namespace ifista
