import math

import numpy as np
import pytest

import orthodual


def test_kappa_from_rational_text():
    k = orthodual.kappa_from_p_text("1/2,1/4,1/4")
    assert k.exact
    np.testing.assert_array_equal(k.U, [[1, 1, 1], [1, -3, 0], [1, 1, -2]])
    np.testing.assert_allclose(k.p_hat, [1 / 2, 1 / 6, 1 / 3], rtol=0, atol=1e-15)


def test_bad_probability_raises():
    with pytest.raises(orthodual.OrthodualError):
        orthodual.kappa_from_p(np.array([0.5, 0.3]))


def test_krawtchouk_routes_agree():
    k = orthodual.kappa_from_p(np.array([0.2, 0.3, 0.5]))
    a = orthodual.krawtchouk_table(k, 3)
    b = orthodual.krawtchouk_table_bilinear(k, 3)
    assert a.shape == (10, 10)
    np.testing.assert_allclose(a, b, rtol=1e-10, atol=1e-10)
    np.testing.assert_allclose(a[0], 1.0)


def test_orthogonality_report():
    r = orthodual.orthogonality(orthodual.kappa_from_p_text("1/3,1/3,1/3"), 2)
    assert r["pass"] and r["exact"]


def test_generators_are_conservative():
    L = orthodual.sep_generator("triangle", 2, 2)
    assert L.shape == (216, 216)
    np.testing.assert_allclose(L.sum(axis=1), 0.0, atol=1e-12)
    W = orthodual.irw_generator("edge", [1])
    np.testing.assert_array_equal(W, [[-1, 1], [1, -1]])


def test_self_duality_residuals():
    k = orthodual.kappa_from_p(np.array([0.25, 0.35, 0.4]))
    assert orthodual.verify_sep("path-3", k, 2)["pass"]
    assert orthodual.verify_irw("triangle", [2, 1], [1, 2], 0.5)["pass"]


def test_charlier_values():
    assert orthodual.charlier(1, 2, 1.0) == -1.0
    assert orthodual.charlier_norm(3, 2.0) == pytest.approx(6 / 8)


def test_philox_known_answer():
    assert orthodual.philox_block([0, 0, 0, 0], [0, 0]) == [0x6627E8D5, 0xE169C58D, 0xBC57AC4C, 0x9B00DBD8]


def test_suite_runs_and_is_deterministic():
    assert orthodual.suite_count() == 10
    assert orthodual.suite_name(1) == "kappa-validity"
    a = orthodual.run_suite(1, seed=11)
    b = orthodual.run_suite(1, seed=11)
    assert a["pass"]
    assert a["records"] == b["records"]
    assert all(math.isfinite(r["value"]) for r in a["records"])
