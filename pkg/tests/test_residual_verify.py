import math

import numpy as np
import pytest

from riccati_flow.assembly import FlowSolution, RiccatiIrrotational, UniformIrrotational, trkal_solution
from riccati_flow.errors import DomainError, GridError
from riccati_flow.residual_verify import (Norm, continuity_residual, convergence_study,
                                          decomposition_residuals, max_workers, momentum_residual,
                                          observed_order, verify)
from riccati_flow.riccati_core import RiccatiState
from riccati_flow.stencils import Grid
from riccati_flow.vorticity_fields import BeltramiABC, PlaneMode, VorticityFieldSpec

NU = 0.1
TRKAL = trkal_solution(1.0, BeltramiABC(1.0, 1.0, 1.0, 1.0, NU))
SMALL = Grid((0, 0, 0), 0.1, (7, 7, 7))


class Stretch:
    """u = (x, 0, 0): divergence exactly 1."""

    def sample(self, points, t):
        out = np.zeros(np.shape(points))
        out[..., 0] = np.asarray(points)[..., 0]
        return out


def test_continuity_examples():
    uniform = FlowSolution(UniformIrrotational(RiccatiState(0.3, 0.4), 1.0), nu=NU)
    assert continuity_residual(uniform, SMALL, 0.0).max == 0.0
    broken = FlowSolution(Stretch(), nu=NU)
    assert continuity_residual(broken, Grid((0, 0, 0), 0.25, (5, 5, 5)), 0.0).max == 1.0
    assert continuity_residual(TRKAL, Grid((0, 0, 0), 0.05, (9, 9, 9)), 1.0, 4).max <= 1e-6


def test_fluid_at_rest():
    rest = FlowSolution(nu=NU)
    assert all(n.max == 0.0 for n in momentum_residual(rest, SMALL, 1.0))


def test_trkal_momentum_and_negative_control():
    grid = Grid((0, 0, 0), 0.05, (9, 9, 9))
    good = max(n.max for n in momentum_residual(TRKAL, grid, 1.0, 1e-4))
    bad_sol = FlowSolution(None, 1.0, TRKAL.vorticity, nu=NU, pressure_model="zero")
    bad = max(n.max for n in momentum_residual(bad_sol, grid, 1.0, 1e-4))
    assert good <= 5e-4
    assert bad >= 100 * 5e-4


def test_time_step_precondition():
    with pytest.raises(DomainError):
        momentum_residual(TRKAL, SMALL, 0.0)
    with pytest.raises(DomainError):
        momentum_residual(TRKAL, SMALL, 1.0, dt_fd=-1.0)
    with pytest.raises(GridError):
        verify(TRKAL, Grid((0, 0, 0), 0.1, (4, 4, 4)), 1.0, order=4)


def test_absent_parts_give_zero():
    res = decomposition_residuals(TRKAL, SMALL, 1.0)
    assert res["rotation"][0].max == 0.0 and res["curl_free"][2].max == 0.0
    assert res["heat"][0].max < 1e-3


def test_tangent_case_rotation_with_frozen_w():
    frozen = VorticityFieldSpec((PlaneMode((0.0, 0.0, 0.0), (-1.0, 1.0, 0.0)),), NU)
    irr = RiccatiIrrotational(RiccatiState(0.0, 0.0), 1.0, frozen, dt=1e-3)
    sol = FlowSolution(irr, 1.0, frozen, nu=NU)
    res = decomposition_residuals(sol, Grid((0, 0, 0), 0.1, (3, 3, 3)), 0.5, 1e-4)
    assert max(n.max for n in res["rotation"]) <= 1e-5
    assert max(n.max for n in res["curl_free"]) == 0.0


def test_report_norm_invariants_and_determinism():
    r1 = verify(TRKAL, SMALL, 1.0)
    r2 = verify(TRKAL, SMALL, 1.0)
    assert r1.as_dict() == r2.as_dict()
    n_interior = 5 ** 3
    for name in ("momentum", "heat"):
        for n in getattr(r1, name):
            assert 0 <= n.l2 <= math.sqrt(n_interior) * n.max + 1e-300
    assert r1.notes == []


def test_norm_of():
    assert Norm.of([3.0, -4.0]) == Norm(4.0, 5.0)
    assert Norm.of([]) == Norm(0.0, 0.0)


def test_observed_order():
    hs = [0.1, 0.05, 0.025]
    assert observed_order(hs, [1e-13, 1e-14, 1e-13]) == "exact"
    assert observed_order(hs, [4.0, 1.0, 0.25]) == pytest.approx(2.0)


def _grids(hs):
    return [Grid((0, 0, 0), h, (int(round(0.5 / h)) + 1,) * 3) for h in hs]


def test_convergence_study_trkal_and_control():
    hs = (0.1, 0.05, 0.025)
    res = convergence_study(TRKAL, _grids(hs), 1.0, 1e-4)
    assert 1.8 <= res["momentum"].order <= 2.2
    assert res["continuity"].is_exact
    bad = FlowSolution(None, 1.0, TRKAL.vorticity, nu=NU, pressure_model="zero")
    assert abs(convergence_study(bad, _grids(hs), 1.0, 1e-4)["momentum"].order) < 0.2
    with pytest.raises(DomainError):
        convergence_study(TRKAL, _grids(hs[:2]), 1.0)


def test_polynomial_field_is_exact():
    res = convergence_study(FlowSolution(Stretch(), nu=NU), _grids((0.1, 0.05, 0.025)), 1.0, 1e-4)
    assert res["curl_free"].is_exact


def test_thread_count_does_not_change_results(monkeypatch):
    hs = (0.1, 0.05, 0.025)
    monkeypatch.setenv("RICCATI_FLOW_THREADS", "1")
    one = convergence_study(TRKAL, _grids(hs), 1.0, 1e-4)
    monkeypatch.setenv("RICCATI_FLOW_THREADS", "3")
    assert max_workers() == 3
    three = convergence_study(TRKAL, _grids(hs), 1.0, 1e-4)
    assert {k: v.values for k, v in one.items()} == {k: v.values for k, v in three.items()}
    monkeypatch.setenv("RICCATI_FLOW_THREADS", "zero")
    with pytest.raises(DomainError):
        max_workers()
