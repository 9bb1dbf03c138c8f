#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>

namespace ifista {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Smooth convex term f with Lipschitz-continuous gradient. All oracles are
// pure; ball_bounds must return a certified interval containing
// {f(x) : ||x - center|| <= radius}.
struct SmoothTerm {
    std::function<double(const Vector&)> value;
    std::function<Vector(const Vector&)> gradient;
    std::optional<double> lipschitz_hint;
    std::function<Interval(const Vector&, double)> ball_bounds;
};

// Proper convex lsc term g. value may return +inf. ball_bounds returns
// nullopt when g attains +inf somewhere on the ball ("unbounded").
struct NonsmoothTerm {
    std::function<double(const Vector&)> value;
    std::function<Vector(const Vector&, double)> prox;  // (v, step)
    std::function<std::optional<Interval>(const Vector&, double)> ball_bounds;
    double lower_bound = 0.0;
    bool is_indicator = false;
};

// Metadata kept when the objective is the l1-l2 family
// f = ||Ax-b||^2, g = lambda*||x||_1; enables the coercivity bound mu.
struct L1L2Info {
    double lambda = 0.0;
    double b_sqnorm = 0.0;
};

struct Objective {
    SmoothTerm f;
    NonsmoothTerm g;
    int dim = 0;
    bool double_bounded = true;
    std::optional<L1L2Info> l1l2;
};

// f(x) = ||Ax-b||^2, gradient 2*A^T(Ax-b), lipschitz_hint = 2*||A||^2.
// The spectral norm is computed by power iteration (rel. tol 1e-6) and
// inflated by 1+1e-4 so the hint stays a true upper bound.
SmoothTerm make_least_squares(const Matrix& A, const Vector& b);

NonsmoothTerm make_l1(double lambda);
NonsmoothTerm make_zero();
NonsmoothTerm make_box(double lo, double hi);

Objective make_objective(SmoothTerm f, NonsmoothTerm g, int dim,
                         std::optional<L1L2Info> l1l2 = std::nullopt);

double spectral_norm_upper(const Matrix& A);

// F(x) = f(x) + g(x); +inf exactly when g(x) = +inf.
double objective_value(const Objective& obj, const Vector& x);

// Componentwise max{|v_i|-alpha,0}*sign(v_i).
Vector soft_threshold(const Vector& v, double alpha);

// p_L(y) = prox_g(y - f'(y)/L, 1/L), the unique minimizer of Q_L(., y).
Vector prox_point(const Objective& obj, const Vector& y, double L);

// Q_L(x,y) = f(y) + <f'(y), x-y> + 0.5*L*||x-y||^2 + g(x).
double q_upper(const Objective& obj, const Vector& x, const Vector& y, double L);

// Certified interval containing F over the closed ball B[center, radius];
// nullopt when g's oracle reports unbounded.
std::optional<Interval> ball_bounds(const Objective& obj, const Vector& center,
                                    double radius);

// Auxiliary cost phi for superiorization: convex, finite, with a
// subgradient selection.
struct AuxCost {
    std::string name;
    std::function<double(const Vector&)> value;
    std::function<Vector(const Vector&)> subgradient;
};

}  // namespace ifista
