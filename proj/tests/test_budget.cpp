#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ifista/budget.hpp"
#include "ifista/instance.hpp"
#include "ifista/problem.hpp"

using namespace ifista;

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("schedule_value") {
    SSchedule power = PowerLawSchedule{3.0, 2.0};
    CHECK(schedule_value(power, 2) == doctest::Approx(0.75));
    CHECK(schedule_value(power, 10) == doctest::Approx(0.03));
    SSchedule list = ExplicitSchedule{{0.5, 0.25}};
    CHECK(schedule_value(list, 2) == 0.5);
    CHECK(schedule_value(list, 3) == 0.25);
    CHECK(schedule_value(list, 4) == 0.0);  // past the end
    CHECK_THROWS(schedule_value(power, 1));
}

TEST_CASE("schedule string round trip") {
    SSchedule power = PowerLawSchedule{1.5, -0.25};
    std::string s = schedule_to_string(power);
    auto back = std::get<PowerLawSchedule>(parse_schedule(s));
    CHECK(back.c == 1.5);
    CHECK(back.r == -0.25);
    SSchedule list = ExplicitSchedule{{0.1, 0.01, 0.001}};
    auto lb = std::get<ExplicitSchedule>(parse_schedule(schedule_to_string(list)));
    CHECK(lb.values == std::vector<double>{0.1, 0.01, 0.001});
    CHECK_THROWS(parse_schedule("power 1"));
    CHECK_THROWS(parse_schedule("weird 1 2"));
    CHECK_THROWS(parse_schedule("power -1 2"));
}

TEST_CASE("lambda_k") {
    SUBCASE("box ball exiting the feasible set is unbounded") {
        ProblemInstance inst =
            build_instance(Matrix::Identity(2, 2), Vector::Zero(2), 0.0, "box", 0.0, 1.0);
        auto [bounded, Lam] = lambda_k(inst.obj, vec2(0.5, 0.5), 1.0);
        CHECK(!bounded);
        CHECK(Lam == 0.0);
    }
    SUBCASE("f = ||x||^2 at the origin and the Lipschitz property") {
        Objective obj = make_objective(make_least_squares(Matrix::Identity(2, 2),
                                                          Vector::Zero(2)),
                                       make_zero(), 2);
        auto [bounded, Lam] = lambda_k(obj, Vector::Zero(2), 1.0);
        REQUIRE(bounded);
        CHECK(Lam >= 4.0);  // M >= f at radius 2 >= 4, m = 0, s1 = 1
        std::mt19937_64 rng(7);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::uniform_real_distribution<double> ur(0.0, 1.0);
        for (int i = 0; i < 10000; ++i) {
            Vector u = vec2(normal(rng), normal(rng));
            Vector v = vec2(normal(rng), normal(rng));
            u *= std::sqrt(ur(rng)) / u.norm();
            v *= std::sqrt(ur(rng)) / v.norm();
            double dF = std::abs(objective_value(obj, u) - objective_value(obj, v));
            CHECK(dF <= Lam * (u - v).norm() + 1e-8 * (1.0 + dF));
        }
    }
    SUBCASE("degenerate constant F still gives Lambda > 0") {
        SmoothTerm f;
        f.value = [](const Vector&) { return 1.0; };
        f.gradient = [](const Vector& x) { return Vector(Vector::Zero(x.size())); };
        f.lipschitz_hint = 0.0;
        f.ball_bounds = [](const Vector&, double) { return Interval{1.0, 1.0}; };
        Objective obj = make_objective(f, make_zero(), 2);
        auto [bounded, Lam] = lambda_k(obj, Vector::Zero(2), 1.0);
        REQUIRE(bounded);
        CHECK(Lam > 0.0);
    }
    SUBCASE("bad s1 rejected") {
        Objective obj = make_objective(make_least_squares(Matrix::Identity(2, 2),
                                                          Vector::Zero(2)),
                                       make_zero(), 2);
        CHECK_THROWS(lambda_k(obj, Vector::Zero(2), 0.0));
    }
}

TEST_CASE("estimate_mu") {
    SUBCASE("zero data gives mu = 0") {
        ProblemInstance inst =
            build_instance(Matrix::Identity(2, 2), Vector::Zero(2), 1.0, "l1");
        CHECK(estimate_mu(inst.obj) == 0.0);
    }
    SUBCASE("lambda = 1, b = (3,4) gives 25") {
        ProblemInstance inst =
            build_instance(Matrix::Identity(2, 2), vec2(3.0, 4.0), 1.0, "l1");
        CHECK(estimate_mu(inst.obj) == doctest::Approx(25.0));
    }
    SUBCASE("lambda = 0.5, b = (1,0) gives 2, containing the true minimizer") {
        ProblemInstance inst =
            build_instance(Matrix::Identity(2, 2), vec2(1.0, 0.0), 0.5, "l1");
        double mu = estimate_mu(inst.obj);
        CHECK(mu == doctest::Approx(2.0));
        // dense grid search for the minimizer of (x1-1)^2 + x2^2 + 0.5|x|_1
        double best = 1e300;
        Vector arg = Vector::Zero(2);
        for (int i = -300; i <= 300; ++i) {
            for (int j = -300; j <= 300; ++j) {
                Vector x = vec2(i / 100.0, j / 100.0);
                double F = objective_value(inst.obj, x);
                if (F < best) {
                    best = F;
                    arg = x;
                }
            }
        }
        CHECK(arg.norm() <= mu);
    }
    SUBCASE("non l1-l2 instances must supply mu") {
        ProblemInstance inst =
            build_instance(Matrix::Identity(2, 2), Vector::Zero(2), 0.0, "zero");
        CHECK_THROWS_WITH_AS(estimate_mu(inst.obj), doctest::Contains("supply mu"),
                             std::runtime_error);
    }
}

TEST_CASE("nu_k") {
    SUBCASE("g = 0 gives nu = ||c|| with p = c") {
        Matrix A(2, 2);
        A << 1.0, 0.3, -0.2, 0.8;
        Vector b = vec2(0.5, -0.1);
        Objective obj = make_objective(make_least_squares(A, b), make_zero(), 2);
        Vector y = vec2(0.4, 0.9);
        double L = 5.0;
        Vector c = y - obj.f.gradient(y) / L;
        CHECK(nu_k(obj, y, L) == doctest::Approx(c.norm()));
        CHECK((prox_point(obj, y, L) - c).norm() == 0.0);
    }
    SUBCASE("l1 containment on 1000 random 5-dim draws") {
        std::mt19937_64 rng(23);
        std::normal_distribution<double> normal(0.0, 1.0);
        Matrix A(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) A(i, j) = normal(rng);
        Vector b(5);
        for (int i = 0; i < 5; ++i) b[i] = normal(rng);
        ProblemInstance inst = build_instance(A, b, 0.8, "l1");
        std::uniform_real_distribution<double> uL(0.5, 30.0);
        for (int trial = 0; trial < 1000; ++trial) {
            Vector y(5);
            for (int i = 0; i < 5; ++i) y[i] = normal(rng);
            double L = uL(rng);
            double nu = nu_k(inst.obj, y, L);
            Vector c = y - inst.obj.f.gradient(y) / L;
            Vector p = prox_point(inst.obj, y, L);
            CHECK(p.norm() <= c.norm() + 1e-12);  // shrinkage never grows the norm
            CHECK(p.norm() <= nu + 1e-12);
        }
    }
}

TEST_CASE("sigma") {
    SUBCASE("hand value 8 for the basic Sigma case") {
        SigmaGeometry g;
        g.p_norm = 0.0;
        g.p_prev_norm = 0.0;
        CHECK(sigma(SigmaVariant::Sigma, 1.0, 1.0, 0.0, 1.0, 0.0, g) ==
              doctest::Approx(8.0));
    }
    SUBCASE("SigmaTilde dominates Sigma when nu bounds the prox norms") {
        SigmaGeometry gs;
        gs.p_norm = 0.4;
        gs.p_prev_norm = 0.7;
        SigmaGeometry gt;
        gt.nu = 0.9;       // >= p_norm
        gt.nu_prev = 1.1;  // >= p_prev_norm
        double s = sigma(SigmaVariant::Sigma, 2.0, 3.0, 1.5, 1.0, 0.5, gs);
        double st = sigma(SigmaVariant::SigmaTilde, 2.0, 3.0, 1.5, 1.0, 0.5, gt);
        CHECK(st >= s);
    }
    SUBCASE("doubling t quadruples sigma with mu = 0") {
        SigmaGeometry g;
        g.p_norm = 0.3;
        g.p_prev_norm = 0.2;
        double s1v = sigma(SigmaVariant::Sigma, 1.5, 2.0, 1.0, 0.5, 0.0, g);
        double s2v = sigma(SigmaVariant::Sigma, 3.0, 2.0, 1.0, 0.5, 0.0, g);
        CHECK(s2v == doctest::Approx(4.0 * s1v));
    }
    SUBCASE("positivity floors") {
        SigmaGeometry g;
        g.drift_norm = 0.0;
        CHECK(sigma(SigmaVariant::SigmaPrime, 2.0, 1.0, 0.0, 1.0, 0.0, g) >=
              4.0 * 2.0 * 2.0 * 1.0 / 2.0);  // >= 2 t^2 * 2 s1
    }
    SUBCASE("missing geometry throws") {
        SigmaGeometry g;
        CHECK_THROWS(sigma(SigmaVariant::Sigma, 1.0, 1.0, 0.0, 1.0, 0.0, g));
        CHECK_THROWS(sigma(SigmaVariant::SigmaPrime, 1.0, 1.0, 0.0, 1.0, 0.0, g));
        CHECK_THROWS(sigma(SigmaVariant::SigmaTilde, 1.0, 1.0, 0.0, 1.0, 0.0, g));
    }
}

TEST_CASE("admissible_budget") {
    BudgetConfig cfg;
    cfg.s1 = 1.0;
    cfg.s_schedule = ExplicitSchedule{{16.0}};
    SUBCASE("unbounded gives 0") {
        CHECK(admissible_budget(cfg, 2, 8.0, false) == 0.0);
    }
    SUBCASE("zero s_k gives 0") {
        cfg.s_schedule = PowerLawSchedule{0.0, 2.0};
        CHECK(admissible_budget(cfg, 2, 8.0, true) == 0.0);
    }
    SUBCASE("min with s1") {
        CHECK(admissible_budget(cfg, 2, 8.0, true) == 1.0);  // min{1, 16/8}
        cfg.s1 = 5.0;
        CHECK(admissible_budget(cfg, 2, 8.0, true) == doctest::Approx(2.0));
    }
    SUBCASE("nonpositive sigma rejected when bounded") {
        CHECK_THROWS(admissible_budget(cfg, 2, 0.0, true));
    }
}
