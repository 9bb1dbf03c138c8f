#include "ifista/instance.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ifista/solver.hpp"

namespace ifista {

ProblemInstance build_instance(Matrix A, Vector b, double lambda,
                               const std::string& g_kind, double box_lo,
                               double box_hi) {
    ProblemInstance inst;
    inst.A = std::move(A);
    inst.b = std::move(b);
    inst.lambda = lambda;
    inst.g_kind = g_kind;
    inst.box_lo = box_lo;
    inst.box_hi = box_hi;
    int n = static_cast<int>(inst.A.cols());
    SmoothTerm f = make_least_squares(inst.A, inst.b);
    if (g_kind == "l1") {
        inst.obj = make_objective(std::move(f), make_l1(lambda), n,
                                  L1L2Info{lambda, inst.b.squaredNorm()});
    } else if (g_kind == "zero") {
        inst.obj = make_objective(std::move(f), make_zero(), n);
    } else if (g_kind == "box") {
        inst.obj = make_objective(std::move(f), make_box(box_lo, box_hi), n);
    } else {
        throw std::invalid_argument("build_instance: unknown g kind '" + g_kind + "'");
    }
    return inst;
}

ProblemInstance load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_problem: cannot open " + path);
    int n = 0, m = 0;
    double lambda = 0.0;
    if (!(in >> n >> m >> lambda) || n <= 0 || m <= 0) {
        throw std::runtime_error("load_problem: bad header in " + path);
    }
    Matrix A(m, n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!(in >> A(i, j))) {
                throw std::runtime_error("load_problem: truncated matrix in " + path);
            }
        }
    }
    Vector b(m);
    for (int i = 0; i < m; ++i) {
        if (!(in >> b[i])) throw std::runtime_error("load_problem: truncated b in " + path);
    }
    std::string tok;
    if (!(in >> tok) || tok != "g=") {
        throw std::runtime_error("load_problem: expected 'g=' line in " + path);
    }
    std::string kind;
    in >> kind;
    if (kind == "box") {
        double lo, hi;
        if (!(in >> lo >> hi)) {
            throw std::runtime_error("load_problem: box needs 'lo hi' in " + path);
        }
        return build_instance(std::move(A), std::move(b), lambda, kind, lo, hi);
    }
    if (kind != "l1" && kind != "zero") {
        throw std::runtime_error("load_problem: unknown g kind '" + kind + "' in " + path);
    }
    return build_instance(std::move(A), std::move(b), lambda, kind);
}

void save_problem(const ProblemInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_problem: cannot open " + path);
    out << inst.A.cols() << " " << inst.A.rows() << " " << format_g17(inst.lambda) << "\n";
    for (Eigen::Index i = 0; i < inst.A.rows(); ++i) {
        for (Eigen::Index j = 0; j < inst.A.cols(); ++j) {
            out << (j ? " " : "") << format_g17(inst.A(i, j));
        }
        out << "\n";
    }
    for (Eigen::Index i = 0; i < inst.b.size(); ++i) {
        out << (i ? " " : "") << format_g17(inst.b[i]);
    }
    out << "\ng= " << inst.g_kind;
    if (inst.g_kind == "box") {
        out << " " << format_g17(inst.box_lo) << " " << format_g17(inst.box_hi);
    }
    out << "\n";
}

ProblemInstance generate_lsq(int m, int n, std::uint64_t seed, double density,
                             double lambda, const std::string& g_kind) {
    if (m <= 0 || n <= 0) throw std::invalid_argument("generate_lsq: bad dimensions");
    if (density < 0.0 || density > 1.0) throw std::invalid_argument("generate_lsq: bad density");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix A(m, n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) A(i, j) = normal(rng);
    }
    Vector x0 = Vector::Zero(n);
    int nnz = std::max(1, static_cast<int>(density * n));
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int placed = 0; placed < nnz;) {
        int j = pick(rng);
        if (x0[j] == 0.0) {
            x0[j] = normal(rng);
            ++placed;
        }
    }
    Vector b = A * x0;
    for (int i = 0; i < m; ++i) b[i] += 0.01 * normal(rng);
    return build_instance(std::move(A), std::move(b), lambda, g_kind);
}

}  // namespace ifista
