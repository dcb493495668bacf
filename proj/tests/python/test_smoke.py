import math

import numpy as np
import pytest

import holmc


def test_double_well_closed_forms():
    p = holmc.potential("doublewell", 5)
    th = np.array([2.0, 0, 0, 0, 0])
    assert p.gradient(th)[0] == pytest.approx(6.0)
    assert np.allclose(p.upsilon(th), 14 * th)
    assert not p.linear


def test_taming_factor():
    assert holmc.taming_factor(1.0, 1.0) == pytest.approx(2 ** (1 / 3))
    assert holmc.taming_factor(0.3, 0.0) == 1.0


def test_chain_is_reproducible():
    p = holmc.potential("gaussian", 3)
    a, states = holmc.run_chain(p, "aHOLLA", 0.1, 50, np.zeros(3), seed=7, thin=10)
    b, _ = holmc.run_chain(p, "aHOLLA", 0.1, 50, np.zeros(3), seed=7)
    assert np.array_equal(a, b)
    assert states.shape == (6, 3)


def test_regime_mismatch_raises():
    p = holmc.potential("gaussian", 2)
    with pytest.raises(ValueError):
        holmc.run_chain(p, "aHOLA", 0.1, 5, np.zeros(2))


def test_lmc_abort():
    p = holmc.potential("doublewell", 100)
    with pytest.raises(holmc.ChainAborted):
        holmc.run_chain(p, "LMC", 0.25, 1000, np.full(100, 2.0))


def test_constants_report():
    rep = holmc.constants("doublewell", 100)
    assert rep["constants"]["lambda_max"]["value"] == pytest.approx(1.088e-5, rel=1e-3)
    assert rep["constants"]["chat"]["value"] is None
    sel = holmc.select_hyperparams("gaussian", 2, 0.1)
    assert sel["log10_lambda"] < 0


def test_marginal_and_w1(tmp_path):
    m = holmc.marginal("doublewell", 100)
    assert m.pdf(0.5) == pytest.approx(m.pdf(-0.5))
    xs = [m.quantile((i + 0.5) / 1000) for i in range(1000)]
    lo, hi = m.support()
    assert holmc.w1_vs_marginal(xs, m) < (hi - lo) / 2000 * 1.01
    path = tmp_path / "grid.csv"
    holmc.write_density_grid(holmc.marginal("mixture", 100), str(path), 11)
    rows = path.read_text().splitlines()
    assert rows[0] == "x,pdf" and len(rows) == 12


def test_experiment_summary():
    s = holmc.run_experiment("tables", "gaussian", [5], [0.25], ["aHOLLA"], chains=20, iterations=50)
    cell = s["cells"][0]
    assert cell["key"] == "gaussian_d5_aHOLLA_lam0.25"
    assert cell["aborted"] == 0


def test_logistic_data():
    z, y = holmc.generate_logistic_data(2, 100, np.ones(2), 3)
    assert set(np.unique(z)) <= {-1.0, 1.0}
    p = holmc.logistic_potential(z, y)
    assert p.linear and p.dimension == 2
    assert math.isfinite(p.value(np.zeros(2)))
