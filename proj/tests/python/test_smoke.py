import numpy as np
import pytest

m = pytest.importorskip("_ifista")


@pytest.fixture(scope="module")
def inst():
    return m.generate_lsq(10, 20, seed=3, density=0.2, lam=1.5)


def test_instance_shape(inst):
    assert inst.n == 20
    assert inst.m == 10
    assert inst.g_kind == "l1"
    assert inst.A.shape == (10, 20)


def test_prox_matches_soft_threshold(inst):
    y = np.zeros(20)
    L = m.lipschitz_hint(inst)
    grad = 2.0 * inst.A.T @ (inst.A @ y - inst.b)
    expected = m.soft_threshold(y - grad / L, inst.lam / L)
    got = m.prox_point(inst, y, L)
    np.testing.assert_allclose(got, expected, rtol=0, atol=1e-14)


def test_momentum():
    t = m.momentum_next(1.0)
    assert abs(t * (t - 1.0) - 1.0) < 1e-12


def test_run_and_compliance(inst):
    trace = m.run(inst, iters=200, strategy="saturate", fill=1.0, seed=5)
    assert len(trace["k"]) == 199
    assert np.all(trace["e_norm"] <= trace["budget"] * (1 + 1e-12))
    x_ref, f_ref = m.reference(inst, iters=20000)
    assert m.objective_value(inst, trace["x_final"]) >= f_ref - 1e-9
    comp = m.check_compliance(inst, iters=200, strategy="saturate", fill=1.0,
                              seed=5, ref_iters=20000)
    assert comp["fraction"] == 1.0
    assert comp["budget_audit_ok"]


def test_run_determinism(inst):
    a = m.run(inst, iters=100, strategy="random", fill=0.7, seed=11)
    b = m.run(inst, iters=100, strategy="random", fill=0.7, seed=11)
    np.testing.assert_array_equal(a["F"], b["F"])
    np.testing.assert_array_equal(a["x_final"], b["x_final"])


def test_zero_strategy_converges(inst):
    trace = m.run(inst, iters=500)
    x_ref, f_ref = m.reference(inst, iters=20000)
    assert trace["F"][-1] - f_ref < 1e-6 * (1 + abs(f_ref))
