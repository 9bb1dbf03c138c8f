#include "ifista/problem.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace ifista {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(const Objective& obj, const Vector& x, const char* where) {
    if (x.size() != obj.dim) {
        throw std::invalid_argument(std::string(where) + ": dimension mismatch, got " +
                                    std::to_string(x.size()) + " expected " +
                                    std::to_string(obj.dim));
    }
}
}  // namespace

double spectral_norm_upper(const Matrix& A) {
    if (A.size() == 0) return 0.0;
    // Power iteration on A^T A with a fixed deterministic start.
    Vector v = Vector::Ones(A.cols());
    v.normalize();
    double est = 0.0;
    double prev = -1.0;
    for (int it = 0; it < 10000; ++it) {
        Vector w = A.transpose() * (A * v);
        double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = w / nw;
        est = std::sqrt(nw);
        if (prev > 0.0 && std::abs(est - prev) <= 1e-6 * est) break;
        prev = est;
    }
    return est * (1.0 + 1e-4);
}

SmoothTerm make_least_squares(const Matrix& A, const Vector& b) {
    if (A.rows() != b.size()) {
        throw std::invalid_argument("make_least_squares: A rows != b size");
    }
    auto data = std::make_shared<std::pair<Matrix, Vector>>(A, b);
    SmoothTerm f;
    double norm_bound = spectral_norm_upper(A);
    f.lipschitz_hint = 2.0 * norm_bound * norm_bound;
    f.value = [data](const Vector& x) {
        return (data->first * x - data->second).squaredNorm();
    };
    f.gradient = [data](const Vector& x) {
        return Vector(2.0 * data->first.transpose() * (data->first * x - data->second));
    };
    double hint = *f.lipschitz_hint;
    auto val = f.value;
    auto grad = f.gradient;
    // Convexity gives the lower bound, the descent lemma the upper one.
    f.ball_bounds = [val, grad, hint](const Vector& c, double r) {
        double fc = val(c);
        double gn = grad(c).norm();
        return Interval{fc - gn * r, fc + gn * r + 0.5 * hint * r * r};
    };
    return f;
}

NonsmoothTerm make_l1(double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("make_l1: negative lambda");
    NonsmoothTerm g;
    g.lower_bound = 0.0;
    g.is_indicator = false;
    g.value = [lambda](const Vector& x) { return lambda * x.lpNorm<1>(); };
    g.prox = [lambda](const Vector& v, double step) {
        return soft_threshold(v, lambda * step);
    };
    g.ball_bounds = [lambda](const Vector& c, double r) -> std::optional<Interval> {
        double l1c = c.lpNorm<1>();
        double slack = std::sqrt(static_cast<double>(c.size())) * r;
        return Interval{std::max(0.0, lambda * (l1c - slack)), lambda * (l1c + slack)};
    };
    return g;
}

NonsmoothTerm make_zero() {
    NonsmoothTerm g;
    g.lower_bound = 0.0;
    g.is_indicator = false;
    g.value = [](const Vector&) { return 0.0; };
    g.prox = [](const Vector& v, double) { return v; };
    g.ball_bounds = [](const Vector&, double) -> std::optional<Interval> {
        return Interval{0.0, 0.0};
    };
    return g;
}

NonsmoothTerm make_box(double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("make_box: lo > hi");
    NonsmoothTerm g;
    g.lower_bound = 0.0;
    g.is_indicator = true;
    g.value = [lo, hi](const Vector& x) {
        for (int i = 0; i < x.size(); ++i) {
            if (x[i] < lo || x[i] > hi) return kInf;
        }
        return 0.0;
    };
    g.prox = [lo, hi](const Vector& v, double) {
        return Vector(v.cwiseMax(lo).cwiseMin(hi));
    };
    // Unbounded unless the ball sits inside the box; the per-coordinate
    // check c_i -+ r in [lo,hi] contains the Euclidean ball, so it is a
    // conservative (safe) test.
    g.ball_bounds = [lo, hi](const Vector& c, double r) -> std::optional<Interval> {
        for (int i = 0; i < c.size(); ++i) {
            if (c[i] - r < lo || c[i] + r > hi) return std::nullopt;
        }
        return Interval{0.0, 0.0};
    };
    return g;
}

Objective make_objective(SmoothTerm f, NonsmoothTerm g, int dim,
                         std::optional<L1L2Info> l1l2) {
    Objective obj;
    obj.f = std::move(f);
    obj.g = std::move(g);
    obj.dim = dim;
    obj.double_bounded = !obj.g.is_indicator;
    obj.l1l2 = l1l2;
    return obj;
}

double objective_value(const Objective& obj, const Vector& x) {
    check_dim(obj, x, "objective_value");
    double gx = obj.g.value(x);
    if (std::isinf(gx)) return kInf;
    return obj.f.value(x) + gx;
}

Vector soft_threshold(const Vector& v, double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("soft_threshold: negative alpha");
    Vector out(v.size());
    for (int i = 0; i < v.size(); ++i) {
        double m = std::abs(v[i]) - alpha;
        out[i] = m > 0.0 ? (v[i] > 0.0 ? m : -m) : 0.0;
    }
    return out;
}

Vector prox_point(const Objective& obj, const Vector& y, double L) {
    check_dim(obj, y, "prox_point");
    if (!(L > 0.0)) throw std::invalid_argument("prox_point: nonpositive L");
    Vector c = y - obj.f.gradient(y) / L;
    Vector p = obj.g.prox(c, 1.0 / L);
    if (!p.allFinite()) throw std::runtime_error("prox_point: prox oracle returned non-finite value");
    return p;
}

double q_upper(const Objective& obj, const Vector& x, const Vector& y, double L) {
    check_dim(obj, x, "q_upper");
    check_dim(obj, y, "q_upper");
    if (!(L > 0.0)) throw std::invalid_argument("q_upper: nonpositive L");
    double gx = obj.g.value(x);
    if (std::isinf(gx)) return kInf;
    Vector d = x - y;
    return obj.f.value(y) + obj.f.gradient(y).dot(d) + 0.5 * L * d.squaredNorm() + gx;
}

std::optional<Interval> ball_bounds(const Objective& obj, const Vector& center,
                                    double radius) {
    check_dim(obj, center, "ball_bounds");
    if (!(radius > 0.0)) throw std::invalid_argument("ball_bounds: nonpositive radius");
    auto gi = obj.g.ball_bounds(center, radius);
    if (!gi) return std::nullopt;
    Interval fi = obj.f.ball_bounds(center, radius);
    return Interval{fi.lo + gi->lo, fi.hi + gi->hi};
}

}  // namespace ifista
