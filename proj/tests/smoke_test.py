"""Smoke tests for the wedgecpp python module."""

import math

import pytest

wedgecpp = pytest.importorskip("wedgecpp")


def test_limit_eigenvalues_closed_form():
    p = wedgecpp.ModelParams(a_inf=2.0, epsilon=0.0, tau2=0.0, b0=0.0)
    lam1, lam2 = wedgecpp.eigenvalues(wedgecpp.State(1.3, 0.15), p)
    assert lam1 == pytest.approx(0.15 - 0.5, abs=1e-15)
    assert lam2 == pytest.approx(0.15 + 0.5, abs=1e-15)


def test_u_plus_psi_is_zero():
    p = wedgecpp.ModelParams(a_inf=1.0, epsilon=0.02, tau2=0.03, b0=0.0)
    s = wedgecpp.State(1.4, -0.2)
    assert wedgecpp.u_from_state(s, p) + wedgecpp.psi(s, p) == pytest.approx(0.0, abs=1e-15)


def test_symmetric_interior_solution():
    p = wedgecpp.ModelParams(a_inf=1.0, epsilon=0.0, tau2=0.0, b0=0.0)
    sol = wedgecpp.solve_interior(wedgecpp.State(1.0, 0.2), wedgecpp.State(1.0, -0.2), p)
    assert sol["alpha1"] == pytest.approx(1.22181070776110239448, rel=1e-12)
    # Mirror symmetry of the limit system.
    assert sol["alpha2"] == pytest.approx(1.0 / sol["alpha1"], rel=1e-12)
    assert len(sol["waves"]) == 2


def test_boundary_rarefaction_closed_form():
    p = wedgecpp.ModelParams(a_inf=1.0, epsilon=0.0, tau2=0.0, b0=0.0)
    sol = wedgecpp.solve_boundary(wedgecpp.State(1.0, -0.2), p)
    # v_l < b0 reflects through a rarefaction with alpha = exp(a*(v_l - b0)).
    assert sol["alpha1"] == pytest.approx(math.exp(-0.2), rel=1e-12)
    rho_b, v_b = sol["boundary_state"]
    assert v_b == pytest.approx(0.0, abs=1e-12)
    assert rho_b == pytest.approx(math.exp(-0.2), rel=1e-12)


def test_optimal_rate_cell_tau2_coefficient():
    cell = wedgecpp.optimal_rate_cell(1.0, 0.0, 1e-3, delta=1e-3, x=1.0)
    assert cell["coeff"] == pytest.approx(1.5, rel=2e-3)


def test_track_runs_and_is_deterministic():
    p = wedgecpp.ModelParams(a_inf=1.0, epsilon=1e-3, tau2=1e-3, b0=-0.1)
    kwargs = dict(
        name="random_bv",
        params={"tv": 0.4, "pieces": 5, "y_lo": -2.0, "y_hi": -0.5},
        seed=5,
        model=p,
        nu=7,
        x=0.8,
    )
    a = wedgecpp.track(**kwargs)
    b = wedgecpp.track(**kwargs)
    assert a["x"] == 0.8
    assert a["tv"] > 0.0
    assert a["breakpoints"] == b["breakpoints"]
    assert a["rho"] == b["rho"]
    assert a["events"] == b["events"]
    assert len(a["rho"]) == len(a["breakpoints"]) + 1
