import numpy as np
import pytest

import srkmmv


def test_kaczmarz_step_lands_on_hyperplane():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(7)
    a = rng.standard_normal(7)
    xp = srkmmv.kaczmarz_step(x, a, 1.5)
    assert abs(a @ xp - 1.5) < 1e-12 * max(1.0, a @ a)
    assert np.array_equal(srkmmv.kaczmarz_step(x, a, float(a @ x)), x)


def test_weighted_step_single_coordinate():
    xp = srkmmv.weighted_kaczmarz_step(np.zeros(3), np.array([0.0, 1.0, 0.0]), 3.0,
                                       np.array([1.0, 0.5, 1.0]), 4)
    assert np.allclose(xp, [0.0, 6.0, 0.0])


def test_support_estimates():
    assert srkmmv.estimate_support_smv(np.array([0.0, 5.0, -3.0]), 2) == [1, 2]
    assert srkmmv.estimate_support_mmv(np.array([[1.0, 0.0], [3.0, 4.0], [0.0, 0.0]]), 1) == [1]
    assert np.allclose(srkmmv.build_weight_vector([0], 3, 4), [1.0, 0.5, 0.5])


def test_generate_and_solve():
    p = srkmmv.generate_problem(200, 60, 3, 4, seed=11)
    assert p["A"].shape == (200, 60)
    assert p["X"].shape == (60, 3)
    assert np.allclose(p["A"] @ p["X"], p["B"])
    assert len(p["support"]) == 4

    r = srkmmv.solve(p["A"], p["B"], variant="srk-mmv", khat=8, sweeps=5, seed=1, trace_every=200)
    assert r["solution"].shape == (60, 3)
    assert r["iterations_run"] == 1000
    assert r["dot_products"] == 2 * 3 * 1000
    assert len(r["trace"]) == 5
    assert srkmmv.relative_error(p["X"], r["solution"]) < 1e-3
    again = srkmmv.solve(p["A"], p["B"], variant="srk-mmv", khat=8, sweeps=5, seed=1)
    assert np.array_equal(again["solution"], r["solution"])


def test_rk_matches_least_squares():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((120, 10))
    b = a @ rng.standard_normal(10)
    ls = srkmmv.least_squares_oracle(a, b)
    assert np.allclose(ls, np.linalg.lstsq(a, b, rcond=None)[0], atol=1e-10)
    r = srkmmv.solve(a, b, variant="rk", sweeps=30, seed=2)
    assert np.allclose(r["solution"][:, 0], ls, atol=1e-6)


def test_metrics():
    x = np.array([[1.0, 2.0], [0.0, 2.0]])
    assert srkmmv.relative_error(x, x) == 0.0
    assert srkmmv.relative_error(x, np.zeros_like(x)) == 1.0
    assert srkmmv.is_success(9e-4)
    assert not srkmmv.is_success(1e-3)


def test_run_experiment():
    spec = """
    kind = phase-transition
    m = 60
    n = 30
    L = 2
    K = 2,12
    khat_rule = offset
    khat_offset = 3
    sweeps = 4
    trials = 5
    """
    r = srkmmv.run_experiment(spec)
    assert r["kind"] == "phase-transition"
    assert [p["K"] for p in r["points"]] == [2, 12]
    assert r["points"][0]["recovery_rate_pct"] == 100.0
    assert srkmmv.run_experiment(spec, threads=2) == r
    assert srkmmv.run_experiment(spec, seed=9) != r


def test_classify():
    train = np.array([[1.0, 0, 0, 0], [0, 1.0, 0, 0], [0, 0, 1.0, 0], [0, 0, 0, 1.0]])
    labels = [10, 10, 20, 20]
    test = np.array([[0, 0, 1.0, 0.5], [0, 0, 2.0, 0.0]])
    out = srkmmv.classify(train, labels, test)
    assert out["predicted"] == 20
    assert out["classes"] == [10, 20]
    assert out["residuals"][1] < 1e-8
    assert srkmmv.classify(train, labels, test, mode="smv")["predicted"] == 20


def test_errors():
    with pytest.raises(srkmmv.ValidationError):
        srkmmv.solve(np.eye(3), np.ones((3, 2)), variant="rk")
    with pytest.raises(srkmmv.ValidationError):
        srkmmv.run_experiment("kind = convergence\nm = 5\n")
    with pytest.raises(srkmmv.SingularMatrixError):
        srkmmv.least_squares_oracle(np.ones((3, 2)), np.ones(3))
    with pytest.raises(srkmmv.ZeroRowError):
        srkmmv.kaczmarz_step(np.ones(2), np.zeros(2), 1.0)
    with pytest.raises(srkmmv.SrkError):
        srkmmv.relative_error(np.zeros((2, 1)), np.ones((2, 1)))
