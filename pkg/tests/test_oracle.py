import numpy as np
import pytest

from qstar.coeffmaps import coeffs_q, schwarz_jet
from qstar.functionals import FunctionalId, Kind, evaluate_functional
from qstar.oracle import (
    OracleConfig,
    Status,
    Surface,
    Y_brute,
    Y_closed,
    delta_grid,
    in_D1,
    in_delta,
    jet_objective,
    lemma4_verify,
    maximize_functional,
    maximize_jets,
    rotation_diagnostic,
    surface,
)
from qstar.qcalc import CLASSICAL, QContext


@pytest.mark.parametrize("kw", [{"grid_b1": 1}, {"refine_shrink": 1.0}, {"top_k": 0}, {"tol_sharp": 1e-5}])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        OracleConfig(**kw)


def test_h22_classical():
    r = maximize_functional(FunctionalId(Kind.H22), CLASSICAL)
    assert r.status is Status.CONFIRMED
    assert abs(r.oracle_max - 0.25) < 1e-3
    assert abs(r.witness.b1) < 1e-6 and abs(abs(r.witness.alpha) - 1) < 1e-9


def test_fs_classical_mu_one():
    r = maximize_functional(FunctionalId(Kind.FEKETE_SZEGO, 1.0), CLASSICAL)
    assert r.status is Status.CONFIRMED and abs(r.oracle_max - 0.5) < 1e-3


def test_t22_at_point_eight_exceeds_print():
    r = maximize_functional(FunctionalId(Kind.T22), QContext(0.8))
    assert r.oracle_max >= 0.4822 - 1e-3
    assert r.status is Status.DISCREPANT


def test_witness_reproduces_oracle_max(small_cfg):
    fid, ctx = FunctionalId(Kind.ZALCMAN23), QContext(0.5)
    r = maximize_functional(fid, ctx, small_cfg)
    assert evaluate_functional(fid, coeffs_q(ctx, r.witness.jet())) == pytest.approx(r.oracle_max, abs=1e-12)


def test_determinism(small_cfg):
    a = maximize_functional(FunctionalId(Kind.T32), QContext(0.8), small_cfg)
    b = maximize_functional(FunctionalId(Kind.T32), QContext(0.8), small_cfg)
    assert a == b


def test_more_refinement_never_lowers_the_max():
    obj = jet_objective(FunctionalId(Kind.T23), QContext(0.8))
    prev = -np.inf
    for iters in (0, 10, 40, 120):
        best, _ = maximize_jets(obj, OracleConfig(grid_b1=12, grid_radial=6, grid_angular=12, refine_iters=iters))
        assert best >= prev
        prev = best


@pytest.mark.parametrize(
    "kind,ctx",
    [(Kind.A2, CLASSICAL), (Kind.A3, CLASSICAL), (Kind.A4, CLASSICAL), (Kind.H22, CLASSICAL),
     (Kind.T23, CLASSICAL), (Kind.T32, CLASSICAL), (Kind.ZALCMAN23, CLASSICAL), (Kind.FEKETE_SZEGO, CLASSICAL),
     (Kind.A4, QContext(0.5)), (Kind.ZALCMAN23, QContext(0.8))],
)
def test_oracle_dominates_extremal_jets(kind, ctx, small_cfg):
    fid = FunctionalId(kind, 1.0 if kind is Kind.FEKETE_SZEGO else None)
    best = maximize_functional(fid, ctx, small_cfg).oracle_max
    for b1, alpha in ((1.0, 0.0), (0.0, 1.0)):
        val = evaluate_functional(fid, coeffs_q(ctx, schwarz_jet(b1, alpha, 0.0)))
        assert best >= val - 1e-9


def test_rotation_diagnostic():
    inv = rotation_diagnostic(FunctionalId(Kind.H22), CLASSICAL)
    assert inv.consistent
    t21 = rotation_diagnostic(FunctionalId(Kind.T21), QContext(0.5))
    assert not t21.consistent and t21.complex_max == pytest.approx(1 + 1 / 0.25, rel=1e-3)


def test_y_closed_examples():
    assert Y_closed(0, 0, 0) == 1
    assert Y_closed(1, 2, 1) == 4
    assert Y_closed(0.5, 0.1, 0.25) == pytest.approx(1 + 0.5 + 0.01 / 3)
    with pytest.raises(ValueError):
        Y_closed(1, 0, -1)


@pytest.mark.parametrize("abc", [(1, 2, 1), (0.5, 0.1, 0.25), (0, 0, 0), (-0.3, 1.2, -0.6)])
def test_y_brute_matches_closed(abc):
    assert Y_brute(*abc) == pytest.approx(Y_closed(*abc), abs=1e-4)


def test_d1_region():
    assert in_D1(3.5, 17 / 6)
    assert not in_D1(0, 0)
    assert in_D1(1, -2)


def test_lemma4():
    assert lemma4_verify(3.5, 17 / 6).agrees
    r = lemma4_verify(2, -3)
    assert r.agrees and r.maximum == pytest.approx(3, abs=1e-4)
    with pytest.raises(ValueError):
        lemma4_verify(0, 0)


def test_delta_grid_stays_inside():
    x, y = delta_grid(51)
    assert np.all(in_delta(x, y))


def test_surface_domains():
    with pytest.raises(ValueError):
        surface(Surface.GAMMA_T23, 0.9, 0.5)
    with pytest.raises(ValueError):
        surface(Surface.PHI1, 0.0, 0.5)


def test_gamma_t23_corner_values():
    assert surface(Surface.GAMMA_T23, 0.0, 1.0) == pytest.approx(0.25)
    assert surface(Surface.GAMMA_T23, 1.0, 0.0) == pytest.approx(35 / 324)
    assert surface(Surface.GAMMA_T23, 0.0, 0.0) == pytest.approx(5 / 36)
