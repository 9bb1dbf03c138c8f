#pragma once

#include <string>
#include <vector>

#include "ifista/instance.hpp"

namespace ifista {

struct GridSpec {
    double lo = -3.0;
    double hi = 3.0;
    double step = 1e-3;
};

// Independent prox oracle: minimizes Q_L(., y) over the grid. Exploits only
// that the shipped g terms are coordinate-separable; it never calls the
// prox oracle.
Vector grid_prox_minimizer(const ProblemInstance& inst, const Vector& y, double L,
                           const GridSpec& gs = {});

// Full joint grid scan (n <= 2), used to validate the separable oracle.
Vector grid_prox_minimizer_joint(const ProblemInstance& inst, const Vector& y,
                                 double L, const GridSpec& gs = {});

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string message;
};

// Invariant suites driven by a corpus of instances. Names: prox, lemma_a2,
// lemma_a1, fb, momentum, budget.
std::vector<SuiteResult> run_verification_suites(
    const std::vector<ProblemInstance>& corpus, const std::string& suite_filter = "");

}  // namespace ifista
