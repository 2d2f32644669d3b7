import math

import numpy as np
import pytest

import mdnls


def gaussian(grid):
    x = np.array(grid.nodes())
    return np.exp(-x**2).astype(complex)


def test_gaussian_norms():
    g = mdnls.Grid(1, 256, 8.0)
    u = gaussian(g)
    assert mdnls.sobolev_norm(g, u, 0.0) == pytest.approx((math.pi / 2) ** 0.25, rel=1e-13)
    assert mdnls.lebesgue_norm(g, u, 4.0) == pytest.approx((math.sqrt(math.pi) / 2) ** 0.25, rel=1e-13)


def test_transform_round_trip_and_unitarity():
    g = mdnls.Grid(2, 32, 4.0)
    rng = np.random.default_rng(0)
    u = rng.normal(size=(32, 32)) + 1j * rng.normal(size=(32, 32))
    back = mdnls.inverse_transform(g, mdnls.transform(g, u))
    assert np.max(np.abs(back - u)) < 1e-12
    P = mdnls.parse_symbol("arctan_step(h=1)")
    v = mdnls.free_propagate(g, u, P, 0.7)
    assert mdnls.sobolev_norm(g, v, 1.0) == pytest.approx(mdnls.sobolev_norm(g, u, 1.0), rel=1e-12)


def test_symbols():
    assert "laplacian" in mdnls.symbol_keys()
    assert mdnls.make_symbol("laplacian")([1.0, 1.0]) == pytest.approx(-2.0)
    assert mdnls.parse_symbol("arctan_step(h=1)")([1.0]) == pytest.approx(-math.pi / 4)
    with pytest.raises(ValueError):
        mdnls.make_symbol("nope")


def test_evolve_conserves_mass():
    g = mdnls.Grid(1, 128, 8.0)
    times, fields = mdnls.evolve(g, gaussian(g), mdnls.make_symbol("laplacian"), lambda_=1.0, dt=1e-3, T=0.1,
                                 snapshot_every=50)
    assert times[0] == 0.0 and times[-1] == pytest.approx(0.1)
    m0 = mdnls.sobolev_norm(g, fields[0], 0.0)
    assert mdnls.sobolev_norm(g, fields[-1], 0.0) == pytest.approx(m0, rel=1e-10)


def test_scaling_plan():
    plan = mdnls.compute_scaling(2, 2.0, 0.25, mdnls.make_symbol("laplacian"))
    assert plan.two_plus_alpha == pytest.approx(8 / 3)
    assert plan.eps_exponent == pytest.approx(1 / 3)


def test_run_singular_and_config_errors():
    report = mdnls.run("[singular]\nsigma = 1\n", "singular")
    assert report["verdict"]
    assert report["columns"][:3] == ["rho", "I0", "Iv"]
    assert report["csv"].startswith("rho,I0,Iv")
    with pytest.raises(ValueError, match="s < d/2 required"):
        mdnls.resolve_config("[inflate]\nsymbol=arctan_step(h=1)\nd=1\nsigma=2\ns=0.6\nh_list=0.1\n", "inflate")


def test_cli_usage_error():
    code, _, err = mdnls.run_cli(["inflate"])
    assert code == 2
    assert "--config" in err
