#pragma once

#include <cstdint>
#include <string>

#include "ifista/problem.hpp"

namespace ifista {

// A concrete l1/zero/box least-squares instance together with the data it
// was built from (the raw pieces are what the verification oracles need).
struct ProblemInstance {
    Matrix A;
    Vector b;
    double lambda = 0.0;
    std::string g_kind;  // "l1" | "zero" | "box"
    double box_lo = 0.0;
    double box_hi = 1.0;
    Objective obj;
};

ProblemInstance build_instance(Matrix A, Vector b, double lambda,
                               const std::string& g_kind, double box_lo = 0.0,
                               double box_hi = 1.0);

// Plain-text format: header "n m lambda", m rows of n reals (A), m reals
// (b), then a "g=" line: "g= l1" | "g= zero" | "g= box lo hi".
ProblemInstance load_problem(const std::string& path);
void save_problem(const ProblemInstance& inst, const std::string& path);

// Compressed-sensing style fixture: A iid standard normal, b = A*x0 + noise
// with x0 sparse at the given density.
ProblemInstance generate_lsq(int m, int n, std::uint64_t seed, double density,
                             double lambda, const std::string& g_kind = "l1");

}  // namespace ifista
